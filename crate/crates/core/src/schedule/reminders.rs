use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use chrono::{Duration, NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use super::plan::{ConditionKind, StudyPlan};
use crate::ema::{EmaResponse, SurveyWindow, WindowTimes, WindowTimesError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Text,
    Email,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReminderPolicy {
    pub windows: WindowTimes,
    /// Minutes after window open at which to nudge again.
    pub nudge_offsets_minutes: Vec<u16>,
    pub channels: Vec<Channel>,
}

impl Default for ReminderPolicy {
    fn default() -> Self {
        ReminderPolicy {
            windows: WindowTimes::default(),
            nudge_offsets_minutes: vec![60],
            channels: vec![Channel::Text, Channel::Email],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolicyError {
    #[error(transparent)]
    Windows(#[from] WindowTimesError),
    #[error("at least one reminder channel is required")]
    NoChannel,
}

impl ReminderPolicy {
    pub fn check(&self) -> Result<(), PolicyError> {
        self.windows.check()?;
        if self.channels.is_empty() {
            return Err(PolicyError::NoChannel);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum ReminderKind {
    Open,
    Nudge { offset_minutes: u16 },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ReminderEvent {
    pub participant: String,
    pub date: NaiveDate,
    pub window: SurveyWindow,
    /// Participant-local wall-clock time.
    pub due_at: NaiveDateTime,
    pub channel: Channel,
    pub kind: ReminderKind,
}

/// Reminders due at local time `now` that are not yet in `emitted`.
///
/// Only the currently open window can produce events: an open reminder at
/// window open, then one nudge per offset that still falls before close.
/// Nothing is produced in washout weeks, outside the plan, or once the slot
/// has a response.
pub fn due_reminders(
    plan: &StudyPlan,
    policy: &ReminderPolicy,
    responses: &[EmaResponse],
    now: NaiveDateTime,
    emitted: &BTreeSet<ReminderEvent>,
) -> Vec<ReminderEvent> {
    let date = now.date();
    let Some(week) = plan.week_containing(date) else {
        return Vec::new();
    };
    if week.kind == ConditionKind::Washout {
        return Vec::new();
    }
    let Some(window) = policy.windows.open_window(now) else {
        return Vec::new();
    };
    let answered = responses
        .iter()
        .any(|r| r.participant == plan.participant && r.date == date && r.window == window);
    if answered {
        return Vec::new();
    }

    let open = policy.windows.opens_at(date, window);
    let close = policy.windows.closes_at(date, window);
    let nudges = policy.nudge_offsets_minutes.iter().map(|&offset| {
        (open + Duration::minutes(i64::from(offset)), ReminderKind::Nudge { offset_minutes: offset })
    });
    let mut due: Vec<ReminderEvent> = core::iter::once((open, ReminderKind::Open))
        .chain(nudges)
        .filter(|(at, _)| *at <= now && *at < close)
        .flat_map(|(due_at, kind)| {
            policy.channels.iter().map(move |&channel| ReminderEvent {
                participant: plan.participant.clone(),
                date,
                window,
                due_at,
                channel,
                kind,
            })
        })
        .filter(|e| !emitted.contains(e))
        .collect();
    due.sort();
    due.dedup();
    due
}
