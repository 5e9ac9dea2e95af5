//! Slow reference implementations used to check the fast paths.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use chrono::{Days, Duration, NaiveDate, NaiveDateTime};
use facetweek_core::ema::{
    qid, AnswerValue, ClockTime, EmaResponse, SlotStatus, SurveyWindow, WeekDataset, WindowTimes,
};
use facetweek_core::render::{ChartId, Role};

/// Slot key of a mark: chart, day, sub-slot, panel.
pub type GlyphKey = (ChartId, u8, Option<usize>, u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Completed,
    Missed,
    Pending,
}

/// A window has closed once every one of its minutes lies fully in the past.
pub fn window_closed(date: NaiveDate, open: ClockTime, close: ClockTime, now: NaiveDateTime) -> bool {
    let start = date.and_time(open.to_naive_time());
    let minutes = i64::from(close.minutes()) - i64::from(open.minutes());
    (0..minutes).all(|m| start + Duration::minutes(m + 1) <= now)
}

/// Status of each of the 21 slots by direct enumeration of windows and
/// responses.
pub fn slot_statuses(
    responses: &[EmaResponse],
    week_start: NaiveDate,
    now: NaiveDateTime,
    windows: &WindowTimes,
) -> [[Status; 3]; 7] {
    let mut out = [[Status::Pending; 3]; 7];
    for (d, day) in out.iter_mut().enumerate() {
        let date = week_start + Days::new(d as u64);
        for (w, status) in day.iter_mut().enumerate() {
            let window = SurveyWindow::ALL[w];
            let span = match window {
                SurveyWindow::Morning => windows.morning,
                SurveyWindow::Afternoon => windows.afternoon,
                SurveyWindow::Evening => windows.evening,
            };
            let answered = responses.iter().any(|r| r.date == date && r.window == window);
            *status = if answered {
                Status::Completed
            } else if window_closed(date, span.open, span.close, now) {
                Status::Missed
            } else {
                Status::Pending
            };
        }
    }
    out
}

/// Completed over completed-plus-closed-unanswered, by enumeration.
pub fn compliance(week: &WeekDataset, now: NaiveDateTime, windows: &WindowTimes) -> f64 {
    let statuses = slot_statuses(&facetweek_core::synth::fuzz::week_responses(week), week.week_start, now, windows);
    let mut completed = 0;
    let mut missed = 0;
    for (d, day) in statuses.iter().enumerate() {
        for (w, s) in day.iter().enumerate() {
            let built_completed = matches!(week.slots[d][w], SlotStatus::Completed(_));
            if built_completed || *s == Status::Completed {
                completed += 1;
            } else if *s == Status::Missed {
                missed += 1;
            }
        }
    }
    if completed + missed == 0 {
        1.0
    } else {
        completed as f64 / (completed + missed) as f64
    }
}

fn answered(r: &EmaResponse, q: &str) -> bool {
    r.answers.contains_key(q)
}

fn single_category(r: &EmaResponse, q: &str) -> bool {
    matches!(r.answers.get(q), Some(AnswerValue::Categories(c)) if !c.is_empty())
}

/// Where a grey '?' belongs, derived from the slot states and which
/// questions each chart plots.
pub fn missing_glyphs(week: &WeekDataset) -> BTreeSet<GlyphKey> {
    let mut out = BTreeSet::new();
    for d in 0..7u8 {
        for (w, slot) in week.slots[usize::from(d)].iter().enumerate() {
            let window = SurveyWindow::ALL[w];
            let r = match slot {
                SlotStatus::Pending => continue,
                SlotStatus::Missed => None,
                SlotStatus::Completed(r) => Some(r),
            };
            let lacks = |q: &str| r.is_none_or(|r| !answered(r, q));
            let mut add = |chart, sub: bool, panel| {
                out.insert((chart, d, if sub { Some(w) } else { None }, panel));
            };

            if lacks(qid::SYMPTOM_INTENSITY) {
                add(ChartId::SymptomIntensity, true, 0);
            }
            if lacks(qid::SYMPTOM_TYPES) {
                add(ChartId::SymptomOccurrence, true, 0);
            }
            for (p, q) in qid::EMOTIONS.iter().enumerate() {
                if lacks(q) {
                    add(ChartId::Emotions, true, p as u8);
                }
            }
            if lacks(qid::PEER_WORRY) {
                add(ChartId::PeerWorry, true, 0);
            }
            let said_no_friends =
                r.is_some_and(|r| r.answers.get(qid::PEER_INTERACTED) == Some(&AnswerValue::Flag(false)));
            if lacks(qid::PEER_QUALITY) && !said_no_friends {
                add(ChartId::PeerQuality, true, 0);
            }
            let ev_question = if window == SurveyWindow::Morning { qid::WORRY_EXPECTED } else { qid::WORRY_ACTUAL };
            if lacks(ev_question) {
                add(ChartId::ExpectVsReality, true, 0);
            }

            match window {
                SurveyWindow::Morning => {
                    if lacks(qid::SLEEP_BED) || lacks(qid::SLEEP_WAKE) {
                        add(ChartId::MySleep, false, 0);
                    }
                    if r.is_none_or(|r| !single_category(r, qid::WORRY_TARGET)) {
                        add(ChartId::WorryTarget, false, 0);
                    }
                    if lacks(qid::WORRY_LEVEL) && lacks(qid::WORRY_CERTAINTY) {
                        add(ChartId::WorryLevels, false, 0);
                    }
                }
                SurveyWindow::Afternoon => {
                    if lacks(qid::SCHOOL_ATTENDED) && r.is_none_or(|r| !single_category(r, qid::SCHOOL_REASON)) {
                        add(ChartId::School, false, 0);
                    }
                }
                SurveyWindow::Evening => {}
            }
        }
    }
    out
}

/// Glyph keys actually drawn by a dashboard.
pub fn drawn_glyphs(blocks: &[facetweek_core::render::ChartBlock]) -> BTreeSet<GlyphKey> {
    let mut out = BTreeSet::new();
    for b in blocks {
        for m in b.marks.iter().filter(|m| m.role == Role::Missing) {
            assert!(
                out.insert((b.id, m.day, m.window.map(|w| w.index()), m.panel)),
                "two glyphs for one slot in {:?}",
                b.id
            );
        }
    }
    out
}

/// Zero magnitudes supplied in the week, keyed by the chart slot that plots them.
pub fn supplied_zeros(week: &WeekDataset) -> BTreeSet<GlyphKey> {
    let mut out = BTreeSet::new();
    for (slot, status) in week.iter() {
        let Some(r) = status.response() else { continue };
        let w = slot.window.index();
        let zero = |q: &str| r.answers.get(q) == Some(&AnswerValue::Magnitude(0));
        let mut plots = vec![
            (ChartId::SymptomIntensity, qid::SYMPTOM_INTENSITY, true, 0u8),
            (ChartId::PeerWorry, qid::PEER_WORRY, true, 0),
        ];
        for (p, q) in qid::EMOTIONS.iter().enumerate() {
            plots.push((ChartId::Emotions, q, true, p as u8));
        }
        if slot.window == SurveyWindow::Morning {
            plots.push((ChartId::ExpectVsReality, qid::WORRY_EXPECTED, true, 0));
            plots.push((ChartId::WorryLevels, qid::WORRY_LEVEL, false, 0));
            plots.push((ChartId::WorryLevels, qid::WORRY_CERTAINTY, false, 0));
        } else {
            plots.push((ChartId::ExpectVsReality, qid::WORRY_ACTUAL, true, 0));
        }
        for (chart, q, sub, panel) in plots {
            if zero(q) {
                out.insert((chart, slot.day, if sub { Some(w) } else { None }, panel));
            }
        }
    }
    out
}

/// Minutes of a sleep interval that fall on the noon-to-noon axis of the
/// waking day, walking the night one minute at a time.
///
/// Returns (minutes before the axis, minutes on it, minutes after it).
pub fn sleep_axis_split(bed: ClockTime, wake: ClockTime) -> (u32, u32, u32) {
    // Wake happens on the record day. Walk backwards from the wake minute
    // until the bed clock reading comes round.
    let wake_abs = i64::from(wake.minutes()) + 1440; // minutes since midnight of the previous day
    let mut t = wake_abs;
    let (mut before, mut on, mut after) = (0, 0, 0);
    loop {
        t -= 1;
        // Axis runs from noon of the previous day (720) to noon of the record day (2160).
        if t < 720 {
            before += 1;
        } else if t < 2160 {
            on += 1;
        } else {
            after += 1;
        }
        if t.rem_euclid(1440) == i64::from(bed.minutes()) {
            break;
        }
    }
    (before, on, after)
}

/// Sorted multiset of the records in a collection, compared by JSON text.
pub fn multiset<T: serde::Serialize>(items: &[T]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for item in items {
        *out.entry(serde_json::to_string(item).unwrap()).or_default() += 1;
    }
    out
}
