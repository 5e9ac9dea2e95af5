use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::clock::{ClockTime, MINUTES_PER_DAY};
use super::response::EmaResponse;
use super::survey::qid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SleepQuality {
    Poor,
    Okay,
    Good,
    Great,
}

impl SleepQuality {
    pub const ALL: [SleepQuality; 4] =
        [SleepQuality::Poor, SleepQuality::Okay, SleepQuality::Good, SleepQuality::Great];

    pub fn from_level(level: u8) -> Option<Self> {
        Self::ALL.get(usize::from(level)).copied()
    }

    pub fn level(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("bed and wake time are both {0}; sleep length is ambiguous")]
pub struct AmbiguousSleep(pub ClockTime);

/// `(wake - bed) mod 1440`, rejecting the zero / full-day case.
pub fn sleep_duration(bed: ClockTime, wake: ClockTime) -> Result<u16, AmbiguousSleep> {
    match wake.minutes_since(bed) {
        0 => Err(AmbiguousSleep(bed)),
        d => Ok(d),
    }
}

/// One night of sleep, attributed to the day of waking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SleepRecord {
    pub date: NaiveDate,
    pub bed: ClockTime,
    pub wake: ClockTime,
    pub quality: Option<SleepQuality>,
    pub duration_minutes: u16,
}

impl SleepRecord {
    pub fn new(
        date: NaiveDate,
        bed: ClockTime,
        wake: ClockTime,
        quality: Option<SleepQuality>,
    ) -> Result<Self, AmbiguousSleep> {
        let duration_minutes = sleep_duration(bed, wake)?;
        Ok(SleepRecord { date, bed, wake, quality, duration_minutes })
    }

    /// Reads the morning sleep items; `None` unless both clock times were
    /// answered and differ.
    pub fn from_response(r: &EmaResponse) -> Option<Self> {
        let bed = r.answer(qid::SLEEP_BED)?.clock()?;
        let wake = r.answer(qid::SLEEP_WAKE)?.clock()?;
        let quality = r
            .answer(qid::SLEEP_QUALITY)
            .and_then(|v| v.level())
            .and_then(SleepQuality::from_level);
        SleepRecord::new(r.date, bed, wake, quality).ok()
    }
}

/// Formats a sleep length as `"8h"` or `"8h05"`.
pub fn duration_label(minutes: u16) -> alloc::string::String {
    let (h, m) = (minutes / 60, minutes % 60);
    if m == 0 {
        alloc::format!("{h}h")
    } else {
        alloc::format!("{h}h{m:02}")
    }
}

const _: () = assert!(MINUTES_PER_DAY == 1440);
