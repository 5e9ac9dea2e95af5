use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const MINUTES_PER_DAY: u16 = 1440;

/// Wall-clock time of day with minute resolution.
///
/// Serialized as `"HH:MM"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClockTime(u16);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClockError {
    #[error("{0} minutes is outside 0..1440")]
    OutOfRange(u32),
    #[error("malformed clock time {0:?}, expected HH:MM")]
    Malformed(alloc::string::String),
}

impl ClockTime {
    pub const MIDNIGHT: ClockTime = ClockTime(0);
    pub const NOON: ClockTime = ClockTime(720);

    pub fn from_minutes(minutes: u32) -> Result<Self, ClockError> {
        if minutes < u32::from(MINUTES_PER_DAY) {
            Ok(ClockTime(minutes as u16))
        } else {
            Err(ClockError::OutOfRange(minutes))
        }
    }

    /// Panics on out-of-range input; meant for literals.
    pub const fn hm(hour: u16, minute: u16) -> Self {
        assert!(hour < 24 && minute < 60);
        ClockTime(hour * 60 + minute)
    }

    pub const fn minutes(self) -> u16 {
        self.0
    }

    pub const fn hour(self) -> u16 {
        self.0 / 60
    }

    pub const fn minute(self) -> u16 {
        self.0 % 60
    }

    /// `(self - earlier) mod 1440`.
    pub const fn minutes_since(self, earlier: ClockTime) -> u16 {
        (self.0 + MINUTES_PER_DAY - earlier.0) % MINUTES_PER_DAY
    }

    pub const fn add_minutes(self, minutes: u16) -> ClockTime {
        ClockTime(((self.0 as u32 + minutes as u32) % MINUTES_PER_DAY as u32) as u16)
    }

    pub fn to_naive_time(self) -> chrono::NaiveTime {
        chrono::NaiveTime::from_hms_opt(u32::from(self.hour()), u32::from(self.minute()), 0)
            .expect("clock time always in range")
    }
}

impl fmt::Display for ClockTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}:{:02}", self.hour(), self.minute())
    }
}

impl FromStr for ClockTime {
    type Err = ClockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ClockError::Malformed(s.into());
        let (h, m) = s.split_once(':').ok_or_else(malformed)?;
        if h.is_empty() || h.len() > 2 || m.len() != 2 {
            return Err(malformed());
        }
        let h: u16 = h.parse().map_err(|_| malformed())?;
        let m: u16 = m.parse().map_err(|_| malformed())?;
        if h >= 24 || m >= 60 {
            return Err(malformed());
        }
        Ok(ClockTime(h * 60 + m))
    }
}

impl Serialize for ClockTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClockTime {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <alloc::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
