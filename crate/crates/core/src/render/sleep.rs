use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::ema::{duration_label, SleepRecord, MINUTES_PER_DAY};

const AXIS: i32 = MINUTES_PER_DAY as i32;
const NOON: i32 = 720;

/// A sleep bar on the noon-to-noon axis of the waking day.
///
/// Axis minute 0 is noon of the previous day, 1440 is noon of the record
/// day. The bar ends at the wake time on the record day and extends back by
/// the sleep length; whatever falls outside the axis is clipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SleepSpan {
    pub start: i32,
    pub end: i32,
    /// Unclipped interval, possibly outside 0..=1440.
    pub raw_start: i32,
    pub raw_end: i32,
    pub clipped_start: bool,
    pub clipped_end: bool,
    pub duration_minutes: u16,
    pub label: String,
}

impl SleepSpan {
    pub fn start_fraction(&self) -> f64 {
        f64::from(self.start) / f64::from(AXIS)
    }

    pub fn end_fraction(&self) -> f64 {
        f64::from(self.end) / f64::from(AXIS)
    }

    pub fn clipped(&self) -> bool {
        self.clipped_start || self.clipped_end
    }
}

pub fn sleep_bar_geometry(rec: &SleepRecord) -> SleepSpan {
    let raw_end = i32::from(rec.wake.minutes()) + NOON;
    let raw_start = raw_end - i32::from(rec.duration_minutes);
    let start = raw_start.clamp(0, AXIS);
    let end = raw_end.clamp(0, AXIS);
    SleepSpan {
        start,
        end,
        raw_start,
        raw_end,
        clipped_start: raw_start < 0,
        clipped_end: raw_end > AXIS,
        duration_minutes: rec.duration_minutes,
        label: duration_label(rec.duration_minutes),
    }
}
