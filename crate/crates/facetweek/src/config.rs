use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use chrono::{Datelike, NaiveDate, Weekday};
use facetweek_core::ema::{default_survey_definition, SurveyDefinition};
use facetweek_core::render::Theme;
use facetweek_core::schedule::{make_study_plan, ReminderPolicy, StudyPlan};
use serde::{Deserialize, Serialize};

pub const ENV_LISTEN: &str = "FACETWEEK_LISTEN";
pub const ENV_DATA: &str = "FACETWEEK_DATA";

/// A file path, or the built-in default.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Source {
    #[default]
    Builtin,
    File(PathBuf),
}

impl Serialize for Source {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Source::Builtin => s.serialize_str("builtin"),
            Source::File(p) => p.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Source {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(if s == "builtin" { Source::Builtin } else { Source::File(s.into()) })
    }
}

/// A participant's bearer study code and enrolment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enrolment {
    pub code: String,
    pub participant: String,
    pub start: NaiveDate,
    pub timezone: String,
    /// Counterbalancing index; defaults to the position in the list.
    #[serde(default)]
    pub index: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotifierConfig {
    #[default]
    Console,
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ServiceConfig {
    pub listen: String,
    pub data: PathBuf,
    pub survey: Source,
    pub theme: Source,
    pub reminders: ReminderPolicy,
    pub week_start: Weekday,
    pub notifier: NotifierConfig,
    pub participants: Vec<Enrolment>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            listen: "127.0.0.1:8080".into(),
            data: "facetweek.log".into(),
            survey: Source::Builtin,
            theme: Source::Builtin,
            reminders: ReminderPolicy::default(),
            week_start: Weekday::Mon,
            notifier: NotifierConfig::Console,
            participants: Vec::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("duplicate study code for {0}")]
    DuplicateCode(String),
    #[error("participant {0} listed twice")]
    DuplicateParticipant(String),
    #[error("participant {participant}: unknown time zone {timezone:?}")]
    Timezone { participant: String, timezone: String },
    #[error("participant {participant}: {source}")]
    Plan { participant: String, source: facetweek_core::schedule::PlanError },
    #[error("reminder policy: {0}")]
    Policy(#[from] facetweek_core::schedule::PolicyError),
    #[error("survey definition: {0}")]
    Definition(#[from] facetweek_core::ema::DefinitionError),
    #[error("theme: {0}")]
    Theme(#[from] facetweek_core::render::ThemeError),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })
}

pub fn load_definition(source: &Source) -> Result<SurveyDefinition, ConfigError> {
    let def = match source {
        Source::Builtin => default_survey_definition(),
        Source::File(p) => read_json(p)?,
    };
    def.check()?;
    Ok(def)
}

pub fn load_theme(source: &Source) -> Result<Theme, ConfigError> {
    let theme = match source {
        Source::Builtin => Theme::default(),
        Source::File(p) => read_json(p)?,
    };
    theme.check()?;
    Ok(theme)
}

impl ServiceConfig {
    /// Reads a config file and applies the environment overrides.
    pub fn load(path: &Path) -> Result<ServiceConfig, ConfigError> {
        let mut config: ServiceConfig = read_json(path)?;
        config.apply_env(|k| std::env::var(k).ok());
        Ok(config)
    }

    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) {
        if let Some(listen) = var(ENV_LISTEN) {
            self.listen = listen;
        }
        if let Some(data) = var(ENV_DATA) {
            self.data = data.into();
        }
    }

    /// Checks uniqueness, time zones and start days, and builds each plan.
    pub fn plans(&self) -> Result<Vec<StudyPlan>, ConfigError> {
        let mut codes = BTreeSet::new();
        let mut ids = BTreeSet::new();
        let mut plans = Vec::new();
        for (i, e) in self.participants.iter().enumerate() {
            if !codes.insert(e.code.as_str()) {
                return Err(ConfigError::DuplicateCode(e.participant.clone()));
            }
            if !ids.insert(e.participant.as_str()) {
                return Err(ConfigError::DuplicateParticipant(e.participant.clone()));
            }
            if e.timezone.parse::<chrono_tz::Tz>().is_err() {
                return Err(ConfigError::Timezone { participant: e.participant.clone(), timezone: e.timezone.clone() });
            }
            let index = e.index.unwrap_or(i as u32);
            let plan = make_study_plan(&e.participant, index, e.start, &e.timezone, self.week_start)
                .map_err(|source| ConfigError::Plan { participant: e.participant.clone(), source })?;
            plans.push(plan);
        }
        self.reminders.check()?;
        Ok(plans)
    }
}

/// First day of the study week containing `date`.
pub fn week_start_of(date: NaiveDate, week_start: Weekday) -> NaiveDate {
    let back = (7 + date.weekday().num_days_from_monday() - week_start.num_days_from_monday()) % 7;
    date - chrono::Days::new(u64::from(back))
}
