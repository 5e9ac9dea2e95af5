use chrono::{NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use super::clock::ClockTime;
use super::survey::SurveyWindow;

/// Local opening hours of one survey window, `[open, close)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpan {
    pub open: ClockTime,
    pub close: ClockTime,
}

/// Opening hours of the three daily windows in participant-local time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowTimes {
    pub morning: WindowSpan,
    pub afternoon: WindowSpan,
    pub evening: WindowSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowTimesError {
    #[error("{0} window must open before it closes")]
    Empty(SurveyWindow),
    #[error("{0} window overlaps the one before it")]
    Overlap(SurveyWindow),
}

impl Default for WindowTimes {
    fn default() -> Self {
        WindowTimes {
            morning: WindowSpan { open: ClockTime::hm(7, 0), close: ClockTime::hm(12, 0) },
            afternoon: WindowSpan { open: ClockTime::hm(12, 0), close: ClockTime::hm(17, 0) },
            evening: WindowSpan { open: ClockTime::hm(17, 0), close: ClockTime::hm(22, 0) },
        }
    }
}

impl WindowTimes {
    pub fn span(&self, window: SurveyWindow) -> WindowSpan {
        match window {
            SurveyWindow::Morning => self.morning,
            SurveyWindow::Afternoon => self.afternoon,
            SurveyWindow::Evening => self.evening,
        }
    }

    pub fn check(&self) -> Result<(), WindowTimesError> {
        let mut previous_close: Option<ClockTime> = None;
        for window in SurveyWindow::ALL {
            let span = self.span(window);
            if span.open >= span.close {
                return Err(WindowTimesError::Empty(window));
            }
            if previous_close.is_some_and(|close| span.open < close) {
                return Err(WindowTimesError::Overlap(window));
            }
            previous_close = Some(span.close);
        }
        Ok(())
    }

    pub fn opens_at(&self, date: NaiveDate, window: SurveyWindow) -> NaiveDateTime {
        date.and_time(self.span(window).open.to_naive_time())
    }

    pub fn closes_at(&self, date: NaiveDate, window: SurveyWindow) -> NaiveDateTime {
        date.and_time(self.span(window).close.to_naive_time())
    }

    /// True once `now` has reached the window's close.
    pub fn is_closed(&self, date: NaiveDate, window: SurveyWindow, now: NaiveDateTime) -> bool {
        now >= self.closes_at(date, window)
    }

    /// The window open at local time `now`, if any.
    pub fn open_window(&self, now: NaiveDateTime) -> Option<SurveyWindow> {
        let date = now.date();
        SurveyWindow::ALL
            .into_iter()
            .find(|w| self.opens_at(date, *w) <= now && now < self.closes_at(date, *w))
    }

    /// The next window opening strictly after `now`.
    pub fn next_open(&self, now: NaiveDateTime) -> (NaiveDate, SurveyWindow, NaiveDateTime) {
        let mut date = now.date();
        loop {
            for window in SurveyWindow::ALL {
                let at = self.opens_at(date, window);
                if at > now {
                    return (date, window, at);
                }
            }
            date = date.succ_opt().expect("date in range");
        }
    }
}
