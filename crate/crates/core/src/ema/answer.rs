use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::clock::ClockTime;

/// Response format of a survey question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AnswerKind {
    /// Magnitude on an integer scale, 0–10 in the default instrument.
    QuantSequential { min: u8, max: u8 },
    /// Clock time of day.
    QuantCyclic,
    OrdinalSequential { levels: Vec<String> },
    /// Five-level Likert scale centred on the third level.
    OrdinalDiverging { levels: Vec<String> },
    Categorical { labels: Vec<String>, multi: bool },
    Binary,
    FreeText,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KindError {
    #[error("scale bounds must satisfy min < max (got {min}..{max})")]
    EmptyScale { min: u8, max: u8 },
    #[error("diverging scale needs exactly 5 levels, got {0}")]
    DivergingLevels(usize),
    #[error("ordinal scale needs at least 2 levels")]
    TooFewLevels,
    #[error("categorical label set is empty")]
    NoLabels,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

impl AnswerKind {
    pub fn check(&self) -> Result<(), KindError> {
        match self {
            AnswerKind::QuantSequential { min, max } if min >= max => {
                Err(KindError::EmptyScale { min: *min, max: *max })
            }
            AnswerKind::OrdinalDiverging { levels } if levels.len() != 5 => {
                Err(KindError::DivergingLevels(levels.len()))
            }
            AnswerKind::OrdinalSequential { levels } if levels.len() < 2 => {
                Err(KindError::TooFewLevels)
            }
            AnswerKind::Categorical { labels, .. } => {
                if labels.is_empty() {
                    return Err(KindError::NoLabels);
                }
                for (i, label) in labels.iter().enumerate() {
                    if labels[..i].contains(label) {
                        return Err(KindError::DuplicateLabel(label.clone()));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            AnswerKind::OrdinalSequential { levels } | AnswerKind::OrdinalDiverging { levels } => {
                levels
            }
            AnswerKind::Categorical { labels, .. } => labels,
            _ => &[],
        }
    }
}

/// A supplied answer. Ordinal levels are 0-based indices into the
/// question's level list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerValue {
    Magnitude(u8),
    Clock(ClockTime),
    Level(u8),
    Categories(Vec<String>),
    Flag(bool),
    Text(String),
}

impl AnswerValue {
    pub fn magnitude(&self) -> Option<u8> {
        match self {
            AnswerValue::Magnitude(m) => Some(*m),
            _ => None,
        }
    }

    pub fn clock(&self) -> Option<ClockTime> {
        match self {
            AnswerValue::Clock(c) => Some(*c),
            _ => None,
        }
    }

    pub fn level(&self) -> Option<u8> {
        match self {
            AnswerValue::Level(l) => Some(*l),
            _ => None,
        }
    }

    pub fn categories(&self) -> Option<&[String]> {
        match self {
            AnswerValue::Categories(c) => Some(c),
            _ => None,
        }
    }

    pub fn flag(&self) -> Option<bool> {
        match self {
            AnswerValue::Flag(b) => Some(*b),
            _ => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            AnswerValue::Text(t) => Some(t),
            _ => None,
        }
    }

    pub(crate) fn variant_name(&self) -> &'static str {
        match self {
            AnswerValue::Magnitude(_) => "magnitude",
            AnswerValue::Clock(_) => "clock",
            AnswerValue::Level(_) => "level",
            AnswerValue::Categories(_) => "categories",
            AnswerValue::Flag(_) => "flag",
            AnswerValue::Text(_) => "text",
        }
    }
}

/// Maps a 1..=5 Likert level onto the signed scale -2..=+2.
pub fn likert_to_diverging(level: u8) -> Result<i8, LikertError> {
    if (1..=5).contains(&level) {
        Ok(level as i8 - 3)
    } else {
        Err(LikertError(level))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("likert level {0} outside 1..=5")]
pub struct LikertError(pub u8);
