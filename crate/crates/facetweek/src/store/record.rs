use chrono::{DateTime, FixedOffset};
use facetweek_core::ema::EmaResponse;
use facetweek_core::schedule::StudyPlan;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    ResponseSubmitted,
    DashboardViewed,
    SurveyOpened,
    ReminderSent,
    LoginFailed,
}

impl EventKind {
    pub const ALL: [EventKind; 5] = [
        EventKind::ResponseSubmitted,
        EventKind::DashboardViewed,
        EventKind::SurveyOpened,
        EventKind::ReminderSent,
        EventKind::LoginFailed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EventKind::ResponseSubmitted => "response_submitted",
            EventKind::DashboardViewed => "dashboard_viewed",
            EventKind::SurveyOpened => "survey_opened",
            EventKind::ReminderSent => "reminder_sent",
            EventKind::LoginFailed => "login_failed",
        }
    }
}

/// Something a participant did or was sent. `at` carries the participant's
/// local offset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub participant: String,
    pub at: DateTime<FixedOffset>,
    pub kind: EventKind,
    #[serde(default)]
    pub detail: String,
}

/// Participant id used for events that cannot be attributed, such as a
/// login with an unknown study code.
pub const UNATTRIBUTED: &str = "-";

/// One entry of the log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "snake_case")]
pub enum Record {
    Participant(StudyPlan),
    Response(EmaResponse),
    Event(EventRecord),
}
