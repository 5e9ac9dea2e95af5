//! Per-week reconstruction of what a participant was sent, opened,
//! submitted and saw.

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};
use facetweek_core::schedule::ConditionKind;
use serde::{Deserialize, Serialize};

use crate::store::{EventKind, EventRecord, Store};

/// Event kinds that make up the timeline.
pub const TIMELINE_KINDS: [EventKind; 4] = [
    EventKind::ReminderSent,
    EventKind::SurveyOpened,
    EventKind::ResponseSubmitted,
    EventKind::DashboardViewed,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DayTimeline {
    pub date: NaiveDate,
    pub events: Vec<EventRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForensicReport {
    pub participant: String,
    pub week_start: NaiveDate,
    /// Condition of the week, if the participant is enrolled and the week
    /// is one of theirs.
    pub condition: Option<ConditionKind>,
    /// Seven days, each sorted by time.
    pub days: Vec<DayTimeline>,
    pub counts: BTreeMap<EventKind, usize>,
    /// Set when the week was a dashboard week and no view was logged.
    pub dashboard_never_viewed: bool,
}

/// Builds the report from the events of `participant` whose local date
/// falls in the week.
pub fn forensic_report(store: &Store, participant: &str, week_start: NaiveDate) -> ForensicReport {
    let condition = store
        .participant(participant)
        .and_then(|plan| plan.week_starting(week_start).map(|w| w.kind));
    let end = week_start + Days::new(7);
    let mut days: Vec<DayTimeline> =
        (0..7).map(|d| DayTimeline { date: week_start + Days::new(d), events: Vec::new() }).collect();
    let mut counts: BTreeMap<EventKind, usize> = TIMELINE_KINDS.iter().map(|k| (*k, 0)).collect();
    for e in store.events(Some(participant)) {
        let date = e.at.date_naive();
        if date < week_start || date >= end || !TIMELINE_KINDS.contains(&e.kind) {
            continue;
        }
        *counts.entry(e.kind).or_default() += 1;
        days[(date - week_start).num_days() as usize].events.push(e);
    }
    for day in &mut days {
        // Stable, so events with equal stamps keep log order.
        day.events.sort_by_key(|e| e.at);
    }
    let dashboard_never_viewed =
        condition == Some(ConditionKind::EmaPlusViz) && counts[&EventKind::DashboardViewed] == 0;
    ForensicReport { participant: participant.into(), week_start, condition, days, counts, dashboard_never_viewed }
}

impl ForensicReport {
    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let condition = self.condition.map(|c| format!("{c:?}")).unwrap_or_else(|| "not enrolled".into());
        let _ = writeln!(out, "{} week of {} ({condition})", self.participant, self.week_start);
        for day in &self.days {
            let _ = writeln!(out, "{}", day.date.format("%a %Y-%m-%d"));
            for e in &day.events {
                let _ = writeln!(out, "  {}  {:<18} {}", e.at.format("%H:%M:%S"), e.kind.name(), e.detail);
            }
        }
        for (kind, n) in &self.counts {
            let _ = writeln!(out, "{:<18} {n}", kind.name());
        }
        if self.dashboard_never_viewed {
            let _ = writeln!(out, "FLAG: dashboard week with no dashboard views");
        }
        out
    }
}
