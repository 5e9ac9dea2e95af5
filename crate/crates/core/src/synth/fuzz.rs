use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use chrono::{Days, FixedOffset, NaiveDate, TimeZone};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ema::{
    qid, AnswerKind, AnswerValue, ClockTime, EmaResponse, SlotStatus, SurveyDefinition,
    SurveyWindow, WeekDataset,
};

/// Free-text samples, some long and some with markup characters.
const TEXTS: [&str; 5] = [
    "quiz",
    "what if nobody talks to me at lunch tomorrow",
    "<b>&\"'</b>",
    "ça va",
    "",
];

/// Shape of the unstructured weeks produced by [`random_week`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzOptions {
    pub p_missed: f64,
    pub p_pending: f64,
    /// Chance that an asked question is answered at all.
    pub p_answer: f64,
    /// Chance that a magnitude answer is exactly the scale minimum.
    pub p_zero: f64,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        FuzzOptions { p_missed: 0.25, p_pending: 0.15, p_answer: 0.7, p_zero: 0.3 }
    }
}

/// One random value of the right variant for `kind`.
pub fn random_value<R: Rng + ?Sized>(rng: &mut R, kind: &AnswerKind, p_zero: f64) -> AnswerValue {
    match kind {
        AnswerKind::QuantSequential { min, max } => {
            if rng.gen_bool(p_zero) {
                AnswerValue::Magnitude(*min)
            } else {
                AnswerValue::Magnitude(rng.gen_range(*min..=*max))
            }
        }
        AnswerKind::QuantCyclic => AnswerValue::Clock(ClockTime::hm(0, 0).add_minutes(rng.gen_range(0..1440))),
        AnswerKind::OrdinalSequential { levels } | AnswerKind::OrdinalDiverging { levels } => {
            AnswerValue::Level(rng.gen_range(0..levels.len().max(1)) as u8)
        }
        AnswerKind::Categorical { labels, multi: true } => {
            AnswerValue::Categories(labels.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect())
        }
        AnswerKind::Categorical { labels, multi: false } => {
            AnswerValue::Categories(labels.choose(rng).cloned().into_iter().collect())
        }
        AnswerKind::Binary => AnswerValue::Flag(rng.gen()),
        AnswerKind::FreeText => AnswerValue::Text(TEXTS.choose(rng).copied().unwrap_or("").to_string()),
    }
}

/// A random partial answer set for one window that passes validation.
pub fn random_answers<R: Rng + ?Sized>(
    rng: &mut R,
    def: &SurveyDefinition,
    window: SurveyWindow,
    options: &FuzzOptions,
) -> BTreeMap<String, AnswerValue> {
    let mut answers = BTreeMap::new();
    for q in def.questions_for(window) {
        if rng.gen_bool(options.p_answer) {
            answers.insert(q.qid.clone(), random_value(rng, &q.answer, options.p_zero));
        }
    }
    if answers.contains_key(qid::SLEEP_BED) && answers.get(qid::SLEEP_BED) == answers.get(qid::SLEEP_WAKE) {
        answers.remove(qid::SLEEP_WAKE);
    }
    answers
}

/// A week whose slot states are drawn independently, so pending slots may
/// precede completed ones. Useful for exercising the renderer beyond what
/// a real clock can produce.
pub fn random_week<R: Rng + ?Sized>(
    rng: &mut R,
    def: &SurveyDefinition,
    participant: &str,
    week_start: NaiveDate,
    options: &FuzzOptions,
) -> WeekDataset {
    let utc = FixedOffset::east_opt(0).expect("zero offset");
    let slots = core::array::from_fn(|d| {
        core::array::from_fn(|w| {
            let roll: f64 = rng.gen();
            if roll < options.p_missed {
                SlotStatus::Missed
            } else if roll < options.p_missed + options.p_pending {
                SlotStatus::Pending
            } else {
                let window = SurveyWindow::ALL[w];
                let date = week_start + Days::new(d as u64);
                let at = date.and_time(ClockTime::hm(8 + 5 * w as u16, 30).to_naive_time());
                SlotStatus::Completed(EmaResponse {
                    participant: participant.into(),
                    date,
                    window,
                    submitted_at: utc.from_utc_datetime(&at),
                    answers: random_answers(rng, def, window, options),
                    revision: 1,
                })
            }
        })
    });
    WeekDataset { participant: participant.into(), week_start, slots }
}

/// Every response of a week in slot order.
pub fn week_responses(week: &WeekDataset) -> Vec<EmaResponse> {
    week.iter().filter_map(|(_, s)| s.response().cloned()).collect()
}
