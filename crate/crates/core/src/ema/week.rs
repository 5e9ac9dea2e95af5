use alloc::string::String;
use core::cmp::Ordering;

use chrono::{Days, NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use super::response::EmaResponse;
use super::survey::SurveyWindow;
use super::window::WindowTimes;

pub const DAYS_PER_WEEK: usize = 7;
pub const SLOTS_PER_WEEK: usize = DAYS_PER_WEEK * 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "response", rename_all = "snake_case")]
pub enum SlotStatus {
    Completed(EmaResponse),
    Missed,
    /// The window has not closed yet.
    Pending,
}

impl SlotStatus {
    pub fn response(&self) -> Option<&EmaResponse> {
        match self {
            SlotStatus::Completed(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, SlotStatus::Completed(_))
    }

    pub fn is_missed(&self) -> bool {
        matches!(self, SlotStatus::Missed)
    }

    pub fn is_pending(&self) -> bool {
        matches!(self, SlotStatus::Pending)
    }
}

/// Position of one survey occasion within a week.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotIndex {
    pub day: u8,
    pub window: SurveyWindow,
}

impl SlotIndex {
    /// Row-major position 0..21.
    pub fn ordinal(self) -> usize {
        usize::from(self.day) * 3 + self.window.index()
    }

    pub fn all() -> impl Iterator<Item = SlotIndex> {
        (0..DAYS_PER_WEEK as u8)
            .flat_map(|day| SurveyWindow::ALL.into_iter().map(move |window| SlotIndex { day, window }))
    }
}

/// One participant-week: 7 days of 3 slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeekDataset {
    pub participant: String,
    pub week_start: NaiveDate,
    pub slots: [[SlotStatus; 3]; DAYS_PER_WEEK],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeekError {
    #[error("response from participant {found:?} in a week for {expected:?}")]
    MixedParticipants { expected: String, found: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SlotCounts {
    pub completed: usize,
    pub missed: usize,
    pub pending: usize,
}

impl WeekDataset {
    pub fn date_of(&self, day: u8) -> NaiveDate {
        self.week_start + Days::new(u64::from(day))
    }

    pub fn slot(&self, index: SlotIndex) -> &SlotStatus {
        &self.slots[usize::from(index.day)][index.window.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SlotIndex, &SlotStatus)> {
        SlotIndex::all().map(move |i| (i, self.slot(i)))
    }

    pub fn counts(&self) -> SlotCounts {
        self.iter().fold(SlotCounts::default(), |mut c, (_, s)| {
            match s {
                SlotStatus::Completed(_) => c.completed += 1,
                SlotStatus::Missed => c.missed += 1,
                SlotStatus::Pending => c.pending += 1,
            }
            c
        })
    }

    /// Local time at which the last window of the week closes.
    pub fn end(&self, windows: &WindowTimes) -> NaiveDateTime {
        windows.closes_at(self.date_of(6), SurveyWindow::Evening)
    }
}

/// Latest revision first; ties broken on submission time and then content so
/// the result does not depend on input order.
fn supersedes(candidate: &EmaResponse, current: &EmaResponse) -> bool {
    candidate
        .revision
        .cmp(&current.revision)
        .then_with(|| candidate.submitted_at.cmp(&current.submitted_at))
        .then_with(|| candidate.submitted_at.offset().local_minus_utc().cmp(&current.submitted_at.offset().local_minus_utc()))
        .then_with(|| candidate.answers.cmp(&current.answers))
        == Ordering::Greater
}

/// Resolves a participant's responses into the 21-slot week.
///
/// `now` is participant-local wall-clock time. A slot with a response is
/// completed whatever the clock says; otherwise it is missed once its window
/// has closed and pending before that.
pub fn build_week_dataset(
    participant: &str,
    responses: &[EmaResponse],
    week_start: NaiveDate,
    now: NaiveDateTime,
    windows: &WindowTimes,
) -> Result<WeekDataset, WeekError> {
    let mut best: [[Option<&EmaResponse>; 3]; DAYS_PER_WEEK] = Default::default();
    for r in responses {
        if r.participant != participant {
            return Err(WeekError::MixedParticipants {
                expected: participant.into(),
                found: r.participant.clone(),
            });
        }
        let Some(day) = r.date.signed_duration_since(week_start).num_days().try_into().ok()
        else {
            continue;
        };
        let day: usize = day;
        if day >= DAYS_PER_WEEK {
            continue;
        }
        let cell = &mut best[day][r.window.index()];
        if cell.is_none_or(|cur| supersedes(r, cur)) {
            *cell = Some(r);
        }
    }

    let slots = core::array::from_fn(|day| {
        let date = week_start + Days::new(day as u64);
        core::array::from_fn(|w| {
            let window = SurveyWindow::ALL[w];
            match best[day][w] {
                Some(r) => SlotStatus::Completed(r.clone()),
                None if windows.is_closed(date, window, now) => SlotStatus::Missed,
                None => SlotStatus::Pending,
            }
        })
    });
    Ok(WeekDataset { participant: participant.into(), week_start, slots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ema::AnswerValue;
    use alloc::vec::Vec;
    use chrono::{DateTime, NaiveTime};

    fn monday() -> NaiveDate {
        NaiveDate::from_ymd_opt(2026, 3, 2).unwrap()
    }

    fn resp(day: u64, window: SurveyWindow, revision: u32, happy: u8) -> EmaResponse {
        let date = monday() + Days::new(day);
        let ts = alloc::format!("{date}T{:02}:30:00+00:00", 8 + window.index() * 5);
        EmaResponse {
            participant: "P001".into(),
            date,
            window,
            submitted_at: DateTime::parse_from_rfc3339(&ts).unwrap(),
            answers: [("emotion_happy".into(), AnswerValue::Magnitude(happy))].into_iter().collect(),
            revision,
        }
    }

    fn after_week() -> NaiveDateTime {
        (monday() + Days::new(8)).and_time(NaiveTime::MIN)
    }

    #[test]
    fn full_compliance() {
        let rs: Vec<_> = SlotIndex::all().map(|s| resp(s.day.into(), s.window, 1, 5)).collect();
        let week = build_week_dataset("P001", &rs, monday(), after_week(), &WindowTimes::default()).unwrap();
        assert_eq!(week.counts(), SlotCounts { completed: 21, missed: 0, pending: 0 });
    }

    #[test]
    fn empty_mid_day_three() {
        // Day index 3, 13:00: morning of day 3 closed, afternoon open.
        let now = (monday() + Days::new(3)).and_hms_opt(13, 0, 0).unwrap();
        let week = build_week_dataset("P001", &[], monday(), now, &WindowTimes::default()).unwrap();
        // Frozen from enumerating window closes against the clock: 3 full days + 1.
        assert_eq!(week.counts(), SlotCounts { completed: 0, missed: 10, pending: 11 });
        assert!(week.slot(SlotIndex { day: 3, window: SurveyWindow::Morning }).is_missed());
        assert!(week.slot(SlotIndex { day: 3, window: SurveyWindow::Afternoon }).is_pending());
    }

    #[test]
    fn latest_revision_wins() {
        let rs = [resp(2, SurveyWindow::Morning, 1, 3), resp(2, SurveyWindow::Morning, 2, 9)];
        for order in [[0, 1], [1, 0]] {
            let input: Vec<_> = order.iter().map(|&i| rs[i].clone()).collect();
            let week = build_week_dataset("P001", &input, monday(), after_week(), &WindowTimes::default()).unwrap();
            let slot = week.slot(SlotIndex { day: 2, window: SurveyWindow::Morning });
            assert_eq!(slot.response().unwrap().answer("emotion_happy"), Some(&AnswerValue::Magnitude(9)));
        }
    }

    #[test]
    fn out_of_week_ignored_and_mixed_rejected() {
        let mut before = resp(0, SurveyWindow::Morning, 1, 1);
        before.date = monday() - Days::new(1);
        let after = resp(7, SurveyWindow::Morning, 1, 1);
        let week = build_week_dataset("P001", &[before, after], monday(), after_week(), &WindowTimes::default()).unwrap();
        assert_eq!(week.counts().completed, 0);

        let mut other = resp(0, SurveyWindow::Morning, 1, 1);
        other.participant = "P002".into();
        assert!(matches!(
            build_week_dataset("P001", &[other], monday(), after_week(), &WindowTimes::default()),
            Err(WeekError::MixedParticipants { .. })
        ));
    }
}
