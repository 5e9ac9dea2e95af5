use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use crate::ema::{SlotIndex, WeekDataset, WindowTimes, SLOTS_PER_WEEK};

/// Completed / (Completed + Missed) as of local time `now`.
///
/// A slot without a response counts as missed once its window has closed at
/// `now`, regardless of the status it was built with. With no closed window
/// the rate is 1.0.
pub fn compliance_rate(week: &WeekDataset, now: NaiveDateTime, windows: &WindowTimes) -> f64 {
    let (mut completed, mut missed) = (0u32, 0u32);
    for (slot, status) in week.iter() {
        if status.is_completed() {
            completed += 1;
        } else if windows.is_closed(week.date_of(slot.day), slot.window, now) {
            missed += 1;
        }
    }
    if completed + missed == 0 {
        1.0
    } else {
        f64::from(completed) / f64::from(completed + missed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplianceClass {
    Full,
    MinimalCompleter,
    Binger,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileThresholds {
    /// Share of completions that must fall in the first half of the week.
    pub binger_front_share: f64,
    /// Number of trailing slots that must all be missed.
    pub binger_silent_tail: usize,
    pub minimal_max_per_day: usize,
}

impl Default for ProfileThresholds {
    fn default() -> Self {
        ProfileThresholds { binger_front_share: 0.8, binger_silent_tail: 7, minimal_max_per_day: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("week still has {0} pending slots")]
pub struct WeekNotElapsed(pub usize);

/// Names the week's compliance pattern. The week must be fully elapsed.
///
/// Slots are numbered 0..21 in time order; the first half is slots 0..=10.
pub fn classify_profile(
    week: &WeekDataset,
    thresholds: &ProfileThresholds,
) -> Result<ComplianceClass, WeekNotElapsed> {
    let counts = week.counts();
    if counts.pending > 0 {
        return Err(WeekNotElapsed(counts.pending));
    }
    if counts.completed == SLOTS_PER_WEEK {
        return Ok(ComplianceClass::Full);
    }

    let completed_at = |i: usize| {
        let slot = SlotIndex { day: (i / 3) as u8, window: crate::ema::SurveyWindow::ALL[i % 3] };
        week.slot(slot).is_completed()
    };
    let front = (0..SLOTS_PER_WEEK).filter(|&i| 2 * i < SLOTS_PER_WEEK && completed_at(i)).count();
    let tail_start = SLOTS_PER_WEEK.saturating_sub(thresholds.binger_silent_tail);
    let silent_tail = (tail_start..SLOTS_PER_WEEK).all(|i| !completed_at(i));
    if counts.completed > 0
        && silent_tail
        && front as f64 >= thresholds.binger_front_share * counts.completed as f64
    {
        return Ok(ComplianceClass::Binger);
    }

    let steady = week.slots.iter().all(|day| {
        let n = day.iter().filter(|s| s.is_completed()).count();
        n >= 1 && n <= thresholds.minimal_max_per_day
    });
    if steady {
        return Ok(ComplianceClass::MinimalCompleter);
    }
    Ok(ComplianceClass::Sparse)
}
