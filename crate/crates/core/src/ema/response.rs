use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use chrono::{DateTime, FixedOffset, NaiveDate};
use serde::{Deserialize, Serialize};

use super::answer::{AnswerKind, AnswerValue};
use super::survey::{qid, SurveyDefinition, SurveyWindow};

/// One submitted survey, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmaResponse {
    pub participant: String,
    pub date: NaiveDate,
    pub window: SurveyWindow,
    pub submitted_at: DateTime<FixedOffset>,
    pub answers: BTreeMap<String, AnswerValue>,
    /// Assigned by the store; 0 until stored.
    #[serde(default)]
    pub revision: u32,
}

impl EmaResponse {
    pub fn answer(&self, qid: &str) -> Option<&AnswerValue> {
        self.answers.get(qid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "violation")]
pub enum Violation {
    OutOfRange { detail: String },
    WrongWindow { window: SurveyWindow },
    UnknownQid,
    WrongVariant { expected: String, got: String },
    /// Bed and wake times are equal, so the sleep length is ambiguous.
    AmbiguousSleep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationError {
    pub qid: String,
    #[serde(flatten)]
    pub violation: Violation,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            Violation::OutOfRange { detail } => write!(f, "{}: out of range ({detail})", self.qid),
            Violation::WrongWindow { window } => {
                write!(f, "{}: not asked in the {window} window", self.qid)
            }
            Violation::UnknownQid => write!(f, "{}: unknown question", self.qid),
            Violation::WrongVariant { expected, got } => {
                write!(f, "{}: expected a {expected} answer, got {got}", self.qid)
            }
            Violation::AmbiguousSleep => {
                write!(f, "{}: bed and wake times are identical", self.qid)
            }
        }
    }
}

fn expected_variant(kind: &AnswerKind) -> &'static str {
    match kind {
        AnswerKind::QuantSequential { .. } => "magnitude",
        AnswerKind::QuantCyclic => "clock",
        AnswerKind::OrdinalSequential { .. } | AnswerKind::OrdinalDiverging { .. } => "level",
        AnswerKind::Categorical { .. } => "categories",
        AnswerKind::Binary => "flag",
        AnswerKind::FreeText => "text",
    }
}

fn check_value(kind: &AnswerKind, value: &AnswerValue) -> Option<Violation> {
    let out_of_range = |detail: String| Some(Violation::OutOfRange { detail });
    match (kind, value) {
        (AnswerKind::QuantSequential { min, max }, AnswerValue::Magnitude(m)) => {
            if m < min || m > max {
                return out_of_range(alloc::format!("{m} not in {min}..={max}"));
            }
            None
        }
        (AnswerKind::QuantCyclic, AnswerValue::Clock(_)) => None,
        (
            AnswerKind::OrdinalSequential { levels } | AnswerKind::OrdinalDiverging { levels },
            AnswerValue::Level(l),
        ) => {
            if usize::from(*l) >= levels.len() {
                return out_of_range(alloc::format!("level {l} of {}", levels.len()));
            }
            None
        }
        (AnswerKind::Categorical { labels, multi }, AnswerValue::Categories(chosen)) => {
            if chosen.is_empty() && !multi {
                return out_of_range("no category chosen".into());
            }
            if !multi && chosen.len() > 1 {
                return out_of_range(alloc::format!("{} categories on single-answer", chosen.len()));
            }
            for (i, c) in chosen.iter().enumerate() {
                if !labels.contains(c) {
                    return out_of_range(alloc::format!("unknown category {c:?}"));
                }
                if chosen[..i].contains(c) {
                    return out_of_range(alloc::format!("category {c:?} repeated"));
                }
            }
            None
        }
        (AnswerKind::Binary, AnswerValue::Flag(_)) => None,
        (AnswerKind::FreeText, AnswerValue::Text(_)) => None,
        (kind, value) => Some(Violation::WrongVariant {
            expected: expected_variant(kind).into(),
            got: value.variant_name().into(),
        }),
    }
}

/// Checks every supplied answer against the instrument. Missing answers are
/// allowed.
pub fn validate_response(
    def: &SurveyDefinition,
    response: &EmaResponse,
) -> Result<(), Vec<ValidationError>> {
    let mut errors = Vec::new();
    for (id, value) in &response.answers {
        let violation = match def.question(id) {
            None => Some(Violation::UnknownQid),
            Some(q) if !q.asked_in.contains(response.window) => {
                Some(Violation::WrongWindow { window: response.window })
            }
            Some(q) => check_value(&q.answer, value),
        };
        if let Some(violation) = violation {
            errors.push(ValidationError { qid: id.clone(), violation });
        }
    }
    if let (Some(AnswerValue::Clock(bed)), Some(AnswerValue::Clock(wake))) =
        (response.answer(qid::SLEEP_BED), response.answer(qid::SLEEP_WAKE))
    {
        if bed == wake && errors.is_empty() {
            errors.push(ValidationError {
                qid: qid::SLEEP_WAKE.into(),
                violation: Violation::AmbiguousSleep,
            });
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ema::{default_survey_definition, ClockTime};
    use alloc::vec;

    fn response(window: SurveyWindow, answers: &[(&str, AnswerValue)]) -> EmaResponse {
        EmaResponse {
            participant: "P001".into(),
            date: NaiveDate::from_ymd_opt(2026, 3, 2).unwrap(),
            window,
            submitted_at: DateTime::parse_from_rfc3339("2026-03-02T08:15:00-04:00").unwrap(),
            answers: answers.iter().map(|(k, v)| ((*k).into(), v.clone())).collect(),
            revision: 0,
        }
    }

    fn single(errs: Vec<ValidationError>) -> ValidationError {
        assert_eq!(errs.len(), 1, "{errs:?}");
        errs.into_iter().next().unwrap()
    }

    #[test]
    fn out_of_range_magnitude() {
        let def = default_survey_definition();
        let r = response(SurveyWindow::Evening, &[(qid::EMOTION_HAPPY, AnswerValue::Magnitude(11))]);
        let e = single(validate_response(&def, &r).unwrap_err());
        assert_eq!(e.qid, qid::EMOTION_HAPPY);
        assert!(matches!(e.violation, Violation::OutOfRange { .. }));
    }

    #[test]
    fn sleep_quality_in_evening_is_wrong_window() {
        let def = default_survey_definition();
        let r = response(SurveyWindow::Evening, &[(qid::SLEEP_QUALITY, AnswerValue::Level(2))]);
        let e = single(validate_response(&def, &r).unwrap_err());
        assert_eq!(e.violation, Violation::WrongWindow { window: SurveyWindow::Evening });
    }

    #[test]
    fn partial_response_is_ok() {
        let def = default_survey_definition();
        let r = response(
            SurveyWindow::Morning,
            &[
                (qid::EMOTION_HAPPY, AnswerValue::Magnitude(0)),
                (qid::SLEEP_QUALITY, AnswerValue::Level(3)),
                (qid::WORRY_TARGET, AnswerValue::Categories(vec!["school".into()])),
            ],
        );
        assert_eq!(validate_response(&def, &r), Ok(()));
    }

    #[test]
    fn unknown_and_wrong_variant() {
        let def = default_survey_definition();
        let r = response(
            SurveyWindow::Morning,
            &[
                ("favourite_colour", AnswerValue::Text("red".into())),
                (qid::SLEEP_BED, AnswerValue::Magnitude(3)),
            ],
        );
        let errs = validate_response(&def, &r).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().any(|e| e.violation == Violation::UnknownQid));
        assert!(errs.iter().any(|e| matches!(e.violation, Violation::WrongVariant { .. })));
    }

    #[test]
    fn category_rules() {
        let def = default_survey_definition();
        let two = AnswerValue::Categories(vec!["family".into(), "school".into()]);
        let r = response(SurveyWindow::Morning, &[(qid::WORRY_TARGET, two)]);
        assert!(validate_response(&def, &r).is_err());
        let multi = AnswerValue::Categories(vec!["headache".into(), "nausea".into()]);
        let r = response(SurveyWindow::Morning, &[(qid::SYMPTOM_TYPES, multi)]);
        assert!(validate_response(&def, &r).is_ok());
        let none = AnswerValue::Categories(vec![]);
        let r = response(SurveyWindow::Morning, &[(qid::SYMPTOM_TYPES, none)]);
        assert!(validate_response(&def, &r).is_ok(), "no symptoms is a valid answer");
        let bogus = AnswerValue::Categories(vec!["toothache".into()]);
        let r = response(SurveyWindow::Morning, &[(qid::SYMPTOM_TYPES, bogus)]);
        assert!(validate_response(&def, &r).is_err());
    }

    #[test]
    fn equal_bed_and_wake_rejected() {
        let def = default_survey_definition();
        let t = AnswerValue::Clock(ClockTime::hm(22, 0));
        let r = response(SurveyWindow::Morning, &[(qid::SLEEP_BED, t.clone()), (qid::SLEEP_WAKE, t)]);
        assert_eq!(single(validate_response(&def, &r).unwrap_err()).violation, Violation::AmbiguousSleep);
    }

    #[test]
    fn json_round_trip() {
        let r = response(SurveyWindow::Morning, &[(qid::SLEEP_WAKE, AnswerValue::Clock(ClockTime::hm(7, 30)))]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""submitted_at":"2026-03-02T08:15:00-04:00""#), "{json}");
        let back: EmaResponse = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
