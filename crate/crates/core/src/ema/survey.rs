use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::answer::{AnswerKind, KindError};

/// One of the six aspects of daily life the instrument covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Facet {
    Sleep,
    Symptoms,
    Emotions,
    Worries,
    School,
    Peers,
}

/// Colour family a facet's charts are drawn in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HueRole {
    Green,
    Red,
    Multicolour,
    Blue,
    Purple,
}

impl Facet {
    /// Dashboard order, top to bottom.
    pub const ALL: [Facet; 6] = [
        Facet::Sleep,
        Facet::Symptoms,
        Facet::Emotions,
        Facet::Worries,
        Facet::School,
        Facet::Peers,
    ];

    pub const fn hue_role(self) -> HueRole {
        match self {
            Facet::Sleep => HueRole::Green,
            Facet::Symptoms => HueRole::Red,
            Facet::Emotions => HueRole::Multicolour,
            Facet::Worries => HueRole::Blue,
            Facet::School | Facet::Peers => HueRole::Purple,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Facet::Sleep => "sleep",
            Facet::Symptoms => "symptoms",
            Facet::Emotions => "emotions",
            Facet::Worries => "worries",
            Facet::School => "school",
            Facet::Peers => "peers",
        }
    }
}

/// One of the three daily survey occasions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyWindow {
    Morning,
    Afternoon,
    Evening,
}

impl SurveyWindow {
    pub const ALL: [SurveyWindow; 3] =
        [SurveyWindow::Morning, SurveyWindow::Afternoon, SurveyWindow::Evening];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub const fn name(self) -> &'static str {
        match self {
            SurveyWindow::Morning => "morning",
            SurveyWindow::Afternoon => "afternoon",
            SurveyWindow::Evening => "evening",
        }
    }
}

impl fmt::Display for SurveyWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for SurveyWindow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SurveyWindow::ALL
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| alloc::format!("unknown survey window {s:?}"))
    }
}

/// Subset of the daily windows, serialized as a list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WindowSet(u8);

impl WindowSet {
    pub const EMPTY: WindowSet = WindowSet(0);
    pub const ALL: WindowSet = WindowSet(0b111);
    pub const MORNING: WindowSet = WindowSet(0b001);
    pub const AFTERNOON: WindowSet = WindowSet(0b010);
    pub const LATER: WindowSet = WindowSet(0b110);

    pub fn contains(self, window: SurveyWindow) -> bool {
        self.0 & (1 << window.index()) != 0
    }

    pub fn with(self, window: SurveyWindow) -> WindowSet {
        WindowSet(self.0 | (1 << window.index()))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SurveyWindow> {
        SurveyWindow::ALL.into_iter().filter(move |w| self.contains(*w))
    }
}

impl FromIterator<SurveyWindow> for WindowSet {
    fn from_iter<I: IntoIterator<Item = SurveyWindow>>(iter: I) -> Self {
        iter.into_iter().fold(WindowSet::EMPTY, WindowSet::with)
    }
}

impl Serialize for WindowSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for WindowSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Vec::<SurveyWindow>::deserialize(deserializer)?.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub qid: String,
    pub facet: Facet,
    pub prompt: String,
    pub answer: AnswerKind,
    pub asked_in: WindowSet,
    #[serde(default)]
    pub required: bool,
}

/// The full EMA instrument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyDefinition {
    pub version: String,
    pub questions: Vec<Question>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefinitionError {
    #[error("question {qid}: {source}")]
    Kind { qid: String, source: KindError },
    #[error("question {0} is not asked in any window")]
    NeverAsked(String),
    #[error("duplicate question id {0}")]
    DuplicateQid(String),
}

impl SurveyDefinition {
    pub fn question(&self, qid: &str) -> Option<&Question> {
        self.questions.iter().find(|q| q.qid == qid)
    }

    pub fn questions_for(&self, window: SurveyWindow) -> impl Iterator<Item = &Question> {
        self.questions.iter().filter(move |q| q.asked_in.contains(window))
    }

    pub fn check(&self) -> Result<(), DefinitionError> {
        for (i, q) in self.questions.iter().enumerate() {
            q.answer
                .check()
                .map_err(|source| DefinitionError::Kind { qid: q.qid.clone(), source })?;
            if q.asked_in.is_empty() {
                return Err(DefinitionError::NeverAsked(q.qid.clone()));
            }
            if self.questions[..i].iter().any(|p| p.qid == q.qid) {
                return Err(DefinitionError::DuplicateQid(q.qid.clone()));
            }
        }
        Ok(())
    }
}

/// Question ids of the built-in instrument.
pub mod qid {
    pub const SLEEP_BED: &str = "sleep_bed";
    pub const SLEEP_WAKE: &str = "sleep_wake";
    pub const SLEEP_QUALITY: &str = "sleep_quality";
    pub const SYMPTOM_TYPES: &str = "symptom_types";
    pub const SYMPTOM_OTHER: &str = "symptom_other_text";
    pub const SYMPTOM_INTENSITY: &str = "symptom_intensity";
    pub const SYMPTOM_WORRY: &str = "symptom_worry";
    pub const MEDICATION: &str = "medication_taken";
    pub const EMOTION_WORRIED: &str = "emotion_worried";
    pub const EMOTION_ANGRY: &str = "emotion_angry";
    pub const EMOTION_HAPPY: &str = "emotion_happy";
    pub const EMOTION_SAD: &str = "emotion_sad";
    pub const WORRY_TARGET: &str = "worry_target";
    pub const WORRY_NOTE: &str = "worry_note";
    pub const WORRY_LEVEL: &str = "worry_level";
    pub const WORRY_CERTAINTY: &str = "worry_certainty";
    pub const WORRY_EXPECTED: &str = "worry_expected_badness";
    pub const WORRY_HAPPENED: &str = "worry_happened";
    pub const WORRY_AVOIDED: &str = "worry_avoided";
    pub const WORRY_ACTUAL: &str = "worry_actual_badness";
    pub const SCHOOL_ATTENDED: &str = "school_attended";
    pub const SCHOOL_REASON: &str = "school_miss_reason";
    pub const PEER_WORRY: &str = "peer_worry";
    pub const PEER_INTERACTED: &str = "peer_interacted";
    pub const PEER_QUALITY: &str = "peer_quality";

    /// Emotion questions in small-multiple order.
    pub const EMOTIONS: [&str; 4] = [EMOTION_WORRIED, EMOTION_ANGRY, EMOTION_HAPPY, EMOTION_SAD];
}

pub const SYMPTOM_CATEGORIES: [&str; 9] = [
    "stomach ache",
    "headache",
    "low back pain",
    "dizziness",
    "limb pain",
    "fast heartbeat",
    "nausea",
    "body weakness",
    "other",
];

pub const WORRY_TARGETS: [&str; 6] = ["family", "friends", "strangers", "school", "sports", "health"];

pub const SCHOOL_MISS_REASONS: [&str; 8] = [
    "weekend",
    "holiday",
    "vacation",
    "pain",
    "sick",
    "medical appointment",
    "home-schooled",
    "online",
];

pub const SLEEP_QUALITY_LEVELS: [&str; 4] = ["poor", "okay", "good", "great"];

pub const PEER_QUALITY_LEVELS: [&str; 5] =
    ["very badly", "badly", "okay", "well", "very well"];

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn magnitude() -> AnswerKind {
    AnswerKind::QuantSequential { min: 0, max: 10 }
}

/// The built-in six-facet instrument.
pub fn default_survey_definition() -> SurveyDefinition {
    use SurveyWindow::*;

    let q = |qid: &str, facet: Facet, prompt: &str, answer: AnswerKind, asked_in: WindowSet| {
        Question {
            qid: qid.into(),
            facet,
            prompt: prompt.into(),
            answer,
            asked_in,
            required: false,
        }
    };
    let all = WindowSet::ALL;
    let morning = WindowSet::MORNING;
    let later: WindowSet = [Afternoon, Evening].into_iter().collect();

    let questions = vec![
        q(qid::SLEEP_BED, Facet::Sleep, "When did you go to sleep last night?", AnswerKind::QuantCyclic, morning),
        q(qid::SLEEP_WAKE, Facet::Sleep, "When did you wake up this morning?", AnswerKind::QuantCyclic, morning),
        q(
            qid::SLEEP_QUALITY,
            Facet::Sleep,
            "How well did you sleep?",
            AnswerKind::OrdinalSequential { levels: strings(&SLEEP_QUALITY_LEVELS) },
            morning,
        ),
        q(
            qid::SYMPTOM_TYPES,
            Facet::Symptoms,
            "Which physical symptoms do you have right now?",
            AnswerKind::Categorical { labels: strings(&SYMPTOM_CATEGORIES), multi: true },
            all,
        ),
        q(qid::SYMPTOM_OTHER, Facet::Symptoms, "Other symptom (describe)", AnswerKind::FreeText, all),
        q(qid::SYMPTOM_INTENSITY, Facet::Symptoms, "How strong are your symptoms?", magnitude(), all),
        q(qid::SYMPTOM_WORRY, Facet::Symptoms, "How worried are you about your symptoms?", magnitude(), all),
        q(qid::MEDICATION, Facet::Symptoms, "Did you take medication for your symptoms?", AnswerKind::Binary, all),
        q(qid::EMOTION_WORRIED, Facet::Emotions, "How worried do you feel?", magnitude(), all),
        q(qid::EMOTION_ANGRY, Facet::Emotions, "How angry do you feel?", magnitude(), all),
        q(qid::EMOTION_HAPPY, Facet::Emotions, "How happy do you feel?", magnitude(), all),
        q(qid::EMOTION_SAD, Facet::Emotions, "How sad do you feel?", magnitude(), all),
        q(
            qid::WORRY_TARGET,
            Facet::Worries,
            "What are you most worried about today?",
            AnswerKind::Categorical { labels: strings(&WORRY_TARGETS), multi: false },
            morning,
        ),
        q(qid::WORRY_NOTE, Facet::Worries, "Tell us more about that worry", AnswerKind::FreeText, morning),
        q(qid::WORRY_LEVEL, Facet::Worries, "How worried are you about it?", magnitude(), morning),
        q(qid::WORRY_CERTAINTY, Facet::Worries, "How sure are you that it will happen?", magnitude(), morning),
        q(qid::WORRY_EXPECTED, Facet::Worries, "How bad do you think it will be?", magnitude(), morning),
        q(qid::WORRY_HAPPENED, Facet::Worries, "Did the thing you worried about happen?", AnswerKind::Binary, later),
        q(qid::WORRY_AVOIDED, Facet::Worries, "Did you try to avoid it?", AnswerKind::Binary, later),
        q(qid::WORRY_ACTUAL, Facet::Worries, "How bad was it actually?", magnitude(), later),
        q(qid::SCHOOL_ATTENDED, Facet::School, "Did you go to school today?", AnswerKind::Binary, WindowSet::AFTERNOON),
        q(
            qid::SCHOOL_REASON,
            Facet::School,
            "Why did you miss school?",
            AnswerKind::Categorical { labels: strings(&SCHOOL_MISS_REASONS), multi: false },
            WindowSet::AFTERNOON,
        ),
        q(qid::PEER_WORRY, Facet::Peers, "How worried are you about being with friends?", magnitude(), all),
        q(qid::PEER_INTERACTED, Facet::Peers, "Did you spend time with friends?", AnswerKind::Binary, all),
        q(
            qid::PEER_QUALITY,
            Facet::Peers,
            "How did you get along with your friends?",
            AnswerKind::OrdinalDiverging { levels: strings(&PEER_QUALITY_LEVELS) },
            all,
        ),
    ];

    SurveyDefinition { version: "handoff-1".into(), questions }
}
