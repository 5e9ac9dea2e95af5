use alloc::string::String;

use chrono::{Datelike, Days, NaiveDate, Weekday};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    EmaOnly,
    EmaPlusViz,
    /// No surveys, reminders or dashboard.
    Washout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionWeek {
    pub kind: ConditionKind,
    pub week_start: NaiveDate,
}

impl ConditionWeek {
    pub fn contains(&self, date: NaiveDate) -> bool {
        date >= self.week_start && date < self.week_start + Days::new(7)
    }
}

/// Crossover arm order: `AB` starts with the EMA-only week.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArmOrder {
    AB,
    BA,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudyPlan {
    pub participant: String,
    pub order: ArmOrder,
    pub weeks: [ConditionWeek; 3],
    /// IANA zone name of the participant's home.
    pub timezone: String,
}

impl StudyPlan {
    pub fn week_containing(&self, date: NaiveDate) -> Option<&ConditionWeek> {
        self.weeks.iter().find(|w| w.contains(date))
    }

    pub fn week_starting(&self, week_start: NaiveDate) -> Option<&ConditionWeek> {
        self.weeks.iter().find(|w| w.week_start == week_start)
    }

    pub fn viz_week(&self) -> &ConditionWeek {
        self.weeks
            .iter()
            .find(|w| w.kind == ConditionKind::EmaPlusViz)
            .expect("plans always contain a visualization week")
    }

    pub fn start(&self) -> NaiveDate {
        self.weeks[0].week_start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("study start {date} is a {found:?}, expected a {expected:?}")]
    MisalignedStart { date: NaiveDate, found: Weekday, expected: Weekday },
}

/// Builds a three-week A-B/B-A crossover with a washout week in the middle.
/// Even participant indices get AB, odd ones BA.
pub fn make_study_plan(
    participant: &str,
    participant_index: u32,
    start: NaiveDate,
    timezone: &str,
    week_start_day: Weekday,
) -> Result<StudyPlan, PlanError> {
    if start.weekday() != week_start_day {
        return Err(PlanError::MisalignedStart {
            date: start,
            found: start.weekday(),
            expected: week_start_day,
        });
    }
    let order = if participant_index.is_multiple_of(2) { ArmOrder::AB } else { ArmOrder::BA };
    let (first, last) = match order {
        ArmOrder::AB => (ConditionKind::EmaOnly, ConditionKind::EmaPlusViz),
        ArmOrder::BA => (ConditionKind::EmaPlusViz, ConditionKind::EmaOnly),
    };
    let week = |n: u64, kind| ConditionWeek { kind, week_start: start + Days::new(7 * n) };
    Ok(StudyPlan {
        participant: participant.into(),
        order,
        weeks: [week(0, first), week(1, ConditionKind::Washout), week(2, last)],
        timezone: timezone.into(),
    })
}
