use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use chrono::{Datelike, Days, FixedOffset, NaiveDate, TimeZone, Weekday};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::persona::{ComplianceProfile, SyntheticPersona};
use crate::ema::{
    likert_to_diverging, qid, AnswerValue, ClockTime, EmaResponse, SurveyWindow, WindowTimes,
    SCHOOL_MISS_REASONS, SYMPTOM_CATEGORIES, WORRY_TARGETS,
};
use crate::schedule::{make_study_plan, ConditionKind, PlanError, StudyPlan};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthOptions {
    /// Per-question chance of leaving an item blank in an answered slot.
    pub dropout: f64,
    /// Offset written into `submitted_at`.
    pub utc_offset_minutes: i32,
    pub windows: WindowTimes,
    /// Puts every cohort member on this profile instead of a sampled one.
    pub profile: Option<ComplianceProfile>,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { dropout: 0.05, utc_offset_minutes: 0, windows: WindowTimes::default(), profile: None }
    }
}

const WORRY_NOTES: [&str; 4] = [
    "test coming up",
    "not sure what they will say",
    "might hurt again",
    "too much to do",
];

const OTHER_SYMPTOMS: [&str; 3] = ["sore throat", "itchy eyes", "toothache"];

/// What the participant carries through one day, shared by its three slots.
struct DayState {
    bed: ClockTime,
    wake: ClockTime,
    quality: u8,
    /// Symptom intensity before per-slot noise.
    intensity: f64,
    attended: bool,
    miss_reason: &'static str,
    target: &'static str,
    expected: f64,
    happened: bool,
    avoided: bool,
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    persona: &'a SyntheticPersona,
    noise: Option<Normal<f64>>,
}

impl Gen<'_> {
    fn noise(&mut self) -> f64 {
        match self.noise {
            Some(n) => n.sample(&mut self.rng),
            None => 0.0,
        }
    }

    fn magnitude(&mut self, centre: f64) -> AnswerValue {
        let v = centre + self.noise();
        AnswerValue::Magnitude(libm::round(v.clamp(0.0, 10.0)) as u8)
    }

    fn jitter(&mut self, t: ClockTime) -> ClockTime {
        let j = self.persona.sleep_jitter_minutes.min(600);
        let delta = self.rng.gen_range(0..=2 * j);
        t.add_minutes(delta).add_minutes(1440 - j)
    }

    fn day(&mut self, date: NaiveDate) -> DayState {
        let p = self.persona;
        let bed = self.jitter(p.bed_time);
        let mut wake = self.jitter(p.wake_time);
        if wake == bed {
            wake = wake.add_minutes(1);
        }
        let quality = self.rng.gen_range(0..4u8);
        let intensity = p.base_intensity + p.sleep_to_symptom * f64::from(3 - quality);
        let weekend = matches!(date.weekday(), Weekday::Sat | Weekday::Sun);
        let attended = !weekend && self.rng.gen_bool(0.85);
        let miss_reason = if weekend {
            "weekend"
        } else {
            *["pain", "sick", "medical appointment", "online"].choose(&mut self.rng).unwrap_or(&"sick")
        };
        debug_assert!(SCHOOL_MISS_REASONS.contains(&miss_reason));
        let target = *WORRY_TARGETS.choose(&mut self.rng).unwrap_or(&WORRY_TARGETS[0]);
        let expected = 2.0 + p.symptom_to_worry * intensity;
        let happened = self.rng.gen_bool(0.4);
        let avoided = self.rng.gen_bool(0.3);
        DayState { bed, wake, quality, intensity, attended, miss_reason, target, expected, happened, avoided }
    }

    fn answers(&mut self, day: &DayState, window: SurveyWindow) -> BTreeMap<String, AnswerValue> {
        let p = self.persona;
        let mut a = BTreeMap::new();
        let mut put = |k: &str, v: AnswerValue| {
            a.insert(k.to_string(), v);
        };

        if window == SurveyWindow::Morning {
            put(qid::SLEEP_BED, AnswerValue::Clock(day.bed));
            put(qid::SLEEP_WAKE, AnswerValue::Clock(day.wake));
            put(qid::SLEEP_QUALITY, AnswerValue::Level(day.quality));
        }

        let intensity = (day.intensity + self.noise()).clamp(0.0, 10.0);
        let mut symptoms = Vec::new();
        for (i, cat) in SYMPTOM_CATEGORIES.iter().enumerate() {
            let chance = (p.symptom_propensity[i] * (0.5 + intensity / 10.0)).clamp(0.0, 1.0);
            if self.rng.gen_bool(chance) {
                symptoms.push(cat.to_string());
            }
        }
        if symptoms.iter().any(|s| s == "other") {
            let text = OTHER_SYMPTOMS.choose(&mut self.rng).copied().unwrap_or("other");
            put(qid::SYMPTOM_OTHER, AnswerValue::Text(text.into()));
        }
        put(qid::SYMPTOM_TYPES, AnswerValue::Categories(symptoms));
        put(qid::SYMPTOM_INTENSITY, AnswerValue::Magnitude(libm::round(intensity) as u8));
        let symptom_worry = p.symptom_to_worry * intensity;
        let v = self.magnitude(symptom_worry);
        put(qid::SYMPTOM_WORRY, v);
        let medicated = self.rng.gen_bool((intensity / 20.0).clamp(0.0, 1.0));
        put(qid::MEDICATION, AnswerValue::Flag(medicated));

        let interacted = self.rng.gen_bool(0.75);
        let peer_level = if interacted { Some(self.rng.gen_range(0..5u8)) } else { None };
        let peer_signed = peer_level.map_or(0, |l| likert_to_diverging(l + 1).unwrap_or(0));

        let v = self.magnitude(1.0 + symptom_worry);
        put(qid::EMOTION_WORRIED, v);
        let v = self.magnitude(1.5);
        put(qid::EMOTION_ANGRY, v);
        let v = self.magnitude(5.0 + p.peer_to_happy * f64::from(peer_signed));
        put(qid::EMOTION_HAPPY, v);
        let v = self.magnitude(2.0 + intensity / 4.0);
        put(qid::EMOTION_SAD, v);

        match window {
            SurveyWindow::Morning => {
                put(qid::WORRY_TARGET, AnswerValue::Categories(alloc::vec![day.target.to_string()]));
                let note = WORRY_NOTES.choose(&mut self.rng).copied().unwrap_or("");
                put(qid::WORRY_NOTE, AnswerValue::Text(note.into()));
                let v = self.magnitude(day.expected + 1.0);
                put(qid::WORRY_LEVEL, v);
                let v = self.magnitude(4.0);
                put(qid::WORRY_CERTAINTY, v);
                let v = self.magnitude(day.expected);
                put(qid::WORRY_EXPECTED, v);
            }
            SurveyWindow::Afternoon | SurveyWindow::Evening => {
                put(qid::WORRY_HAPPENED, AnswerValue::Flag(day.happened));
                put(qid::WORRY_AVOIDED, AnswerValue::Flag(day.avoided));
                let actual = if day.happened { day.expected - 1.5 } else { 0.0 };
                let v = self.magnitude(actual);
                put(qid::WORRY_ACTUAL, v);
            }
        }

        if window == SurveyWindow::Afternoon {
            put(qid::SCHOOL_ATTENDED, AnswerValue::Flag(day.attended));
            if !day.attended {
                put(qid::SCHOOL_REASON, AnswerValue::Categories(alloc::vec![day.miss_reason.into()]));
            }
        }

        let v = self.magnitude(3.0 - f64::from(peer_signed));
        put(qid::PEER_WORRY, v);
        put(qid::PEER_INTERACTED, AnswerValue::Flag(interacted));
        if let Some(l) = peer_level {
            put(qid::PEER_QUALITY, AnswerValue::Level(l));
        }
        a
    }
}

fn answered_slots(profile: ComplianceProfile, rng: &mut ChaCha8Rng) -> [[bool; 3]; 7] {
    let mut slots = [[false; 3]; 7];
    for (d, day) in slots.iter_mut().enumerate() {
        match profile {
            ComplianceProfile::Full => *day = [true; 3],
            ComplianceProfile::MinimalCompleter => {
                let n = rng.gen_range(1..=2);
                let mut order = [0usize, 1, 2];
                order.shuffle(rng);
                for &w in &order[..n] {
                    day[w] = true;
                }
            }
            ComplianceProfile::Binger { active_days } => {
                if d < usize::from(active_days) {
                    *day = [true; 3];
                }
            }
            ComplianceProfile::Random { p } => {
                for s in day.iter_mut() {
                    *s = rng.gen_bool(p.clamp(0.0, 1.0));
                }
            }
        }
    }
    slots
}

/// Generates one participant week.
///
/// Uses ChaCha8 seeded with `seed`, on stream `persona.seed`. Slot
/// selection, then the day states, then the answers of each slot in time
/// order are drawn from that single stream, so the output depends only on
/// the arguments.
pub fn generate_week(
    seed: u64,
    persona: &SyntheticPersona,
    profile: ComplianceProfile,
    week_start: NaiveDate,
    participant: &str,
    options: &SynthOptions,
) -> Vec<EmaResponse> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(persona.seed);
    let slots = answered_slots(profile, &mut rng);
    let noise = Normal::new(0.0, persona.noise).ok().filter(|_| persona.noise > 0.0);
    let mut g = Gen { rng, persona, noise };
    let offset = FixedOffset::east_opt(options.utc_offset_minutes * 60)
        .unwrap_or_else(|| FixedOffset::east_opt(0).expect("zero offset"));
    let dropout = options.dropout.clamp(0.0, 1.0);

    let mut out = Vec::new();
    for (d, answered) in slots.iter().enumerate() {
        let date = week_start + Days::new(d as u64);
        let state = g.day(date);
        for window in SurveyWindow::ALL {
            if !answered[window.index()] {
                continue;
            }
            let mut answers = g.answers(&state, window);
            if dropout > 0.0 {
                answers.retain(|_, _| !g.rng.gen_bool(dropout));
            }
            let span = options.windows.span(window);
            let length = span.close.minutes().saturating_sub(span.open.minutes()).max(1);
            let at = span.open.add_minutes(g.rng.gen_range(0..length));
            let local = date.and_time(at.to_naive_time());
            let submitted_at = offset
                .from_local_datetime(&local)
                .single()
                .expect("fixed offsets are unambiguous");
            out.push(EmaResponse {
                participant: participant.into(),
                date,
                window,
                submitted_at,
                answers,
                revision: 0,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticWeek {
    pub kind: ConditionKind,
    pub week_start: NaiveDate,
    pub responses: Vec<EmaResponse>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticParticipant {
    pub plan: StudyPlan,
    pub persona: SyntheticPersona,
    pub profile: ComplianceProfile,
    /// The two survey weeks; the washout week has no data.
    pub weeks: Vec<SyntheticWeek>,
}

fn sample_profile(rng: &mut ChaCha8Rng) -> ComplianceProfile {
    match rng.gen_range(0..10) {
        0..=2 => ComplianceProfile::Full,
        3..=4 => ComplianceProfile::MinimalCompleter,
        5..=6 => ComplianceProfile::Binger { active_days: rng.gen_range(1..=4) },
        _ => ComplianceProfile::Random { p: libm::round(rng.gen_range(0.4..0.95) * 100.0) / 100.0 },
    }
}

/// Generates `n` participants `P001..` with counterbalanced plans starting
/// on `start`. Participant `i` (0-based) draws from stream `i + 1` of the
/// cohort seed.
pub fn generate_cohort(
    n: u32,
    seed: u64,
    start: NaiveDate,
    timezone: &str,
    options: &SynthOptions,
) -> Result<Vec<SyntheticParticipant>, PlanError> {
    let mut out = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(i) + 1);
        let id = format!("P{:03}", i + 1);
        let plan = make_study_plan(&id, i, start, timezone, start.weekday())?;
        let persona = SyntheticPersona::sample(&mut rng);
        let sampled = sample_profile(&mut rng);
        let profile = options.profile.unwrap_or(sampled);
        let weeks = plan
            .weeks
            .iter()
            .filter(|w| w.kind != ConditionKind::Washout)
            .map(|w| SyntheticWeek {
                kind: w.kind,
                week_start: w.week_start,
                responses: generate_week(rng.gen(), &persona, profile, w.week_start, &id, options),
            })
            .collect();
        out.push(SyntheticParticipant { plan, persona, profile, weeks });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ema::{build_week_dataset, default_survey_definition, validate_response, SurveyDefinition};
    use crate::schedule::{classify_profile, ArmOrder, ComplianceClass, ProfileThresholds};

    fn monday() -> NaiveDate {
        NaiveDate::from_ymd_opt(2026, 3, 2).unwrap()
    }

    fn no_dropout() -> SynthOptions {
        SynthOptions { dropout: 0.0, ..Default::default() }
    }

    /// Questions whose absence is a legitimate skip rather than a gap.
    fn conditional(r: &EmaResponse, q: &str) -> bool {
        let flag = |k| r.answer(k).and_then(AnswerValue::flag);
        let has_other = r
            .answer(qid::SYMPTOM_TYPES)
            .and_then(AnswerValue::categories)
            .is_some_and(|c| c.iter().any(|s| s == "other"));
        match q {
            qid::SCHOOL_REASON => flag(qid::SCHOOL_ATTENDED) == Some(true),
            qid::PEER_QUALITY => flag(qid::PEER_INTERACTED) == Some(false),
            qid::SYMPTOM_OTHER => !has_other,
            _ => false,
        }
    }

    fn week_of(responses: &[EmaResponse]) -> crate::ema::WeekDataset {
        let end = (monday() + Days::new(8)).and_hms_opt(0, 0, 0).unwrap();
        build_week_dataset("P", responses, monday(), end, &WindowTimes::default()).unwrap()
    }

    #[test]
    fn full_week_answers_everything() {
        let def = default_survey_definition();
        let rs = generate_week(7, &SyntheticPersona::default(), ComplianceProfile::Full, monday(), "P", &no_dropout());
        assert_eq!(rs.len(), 21);
        for r in &rs {
            for q in def.questions_for(r.window) {
                assert!(r.answer(&q.qid).is_some() || conditional(r, &q.qid), "{} {} {}", r.date, r.window, q.qid);
            }
        }
    }

    fn assert_valid(def: &SurveyDefinition, rs: &[EmaResponse]) {
        for r in rs {
            if let Err(e) = validate_response(def, r) {
                panic!("{e:?}");
            }
        }
    }

    #[test]
    fn every_response_validates() {
        let def = default_survey_definition();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for seed in 0..60 {
            let persona = SyntheticPersona::sample(&mut rng);
            let profile = sample_profile(&mut rng);
            let options = SynthOptions { dropout: 0.2, utc_offset_minutes: -300, ..Default::default() };
            assert_valid(&def, &generate_week(seed, &persona, profile, monday(), "P", &options));
        }
    }

    #[test]
    fn binger_and_minimal_classify() {
        let t = ProfileThresholds::default();
        let p = SyntheticPersona::default();
        for seed in 0..20 {
            let rs = generate_week(seed, &p, ComplianceProfile::Binger { active_days: 3 }, monday(), "P", &SynthOptions::default());
            assert!(rs.iter().all(|r| r.date < monday() + Days::new(3)));
            assert_eq!(classify_profile(&week_of(&rs), &t), Ok(ComplianceClass::Binger));

            let rs = generate_week(seed, &p, ComplianceProfile::MinimalCompleter, monday(), "P", &SynthOptions::default());
            assert_eq!(classify_profile(&week_of(&rs), &t), Ok(ComplianceClass::MinimalCompleter));
        }
    }

    #[test]
    fn deterministic() {
        let p = SyntheticPersona::default();
        let a = generate_week(11, &p, ComplianceProfile::Random { p: 0.6 }, monday(), "P", &SynthOptions::default());
        let b = generate_week(11, &p, ComplianceProfile::Random { p: 0.6 }, monday(), "P", &SynthOptions::default());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = generate_week(12, &p, ComplianceProfile::Random { p: 0.6 }, monday(), "P", &SynthOptions::default());
        assert_ne!(a, c);
    }

    fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        cov / libm::sqrt(vx * vy)
    }

    #[test]
    fn sleep_symptom_coupling_visible() {
        let persona = SyntheticPersona { noise: 0.0, sleep_to_symptom: 1.5, ..Default::default() };
        for seed in 0..20 {
            let rs = generate_week(seed, &persona, ComplianceProfile::Full, monday(), "P", &no_dropout());
            let (mut bad_sleep, mut intensity) = (Vec::new(), Vec::new());
            for day in rs.chunks(3) {
                let q = day[0].answer(qid::SLEEP_QUALITY).and_then(AnswerValue::level).unwrap();
                let mean = day
                    .iter()
                    .map(|r| f64::from(r.answer(qid::SYMPTOM_INTENSITY).and_then(AnswerValue::magnitude).unwrap()))
                    .sum::<f64>()
                    / 3.0;
                bad_sleep.push(f64::from(3 - q));
                intensity.push(mean);
            }
            assert!(pearson(&bad_sleep, &intensity) > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn cohort_counterbalanced() {
        let c = generate_cohort(44, 7, monday(), "UTC", &SynthOptions::default()).unwrap();
        assert_eq!(c.len(), 44);
        assert_eq!(c.iter().filter(|p| p.plan.order == ArmOrder::AB).count(), 22);
        assert_eq!(c.iter().filter(|p| p.plan.order == ArmOrder::BA).count(), 22);
        let one = generate_cohort(1, 7, monday(), "UTC", &SynthOptions::default()).unwrap();
        assert_eq!(one[0].plan.order, ArmOrder::AB);
        assert_eq!(c, generate_cohort(44, 7, monday(), "UTC", &SynthOptions::default()).unwrap());
        assert_eq!(one[0], c[0]);
        let profiles: Vec<_> = c.iter().map(|p| p.profile).collect();
        assert!(profiles.contains(&ComplianceProfile::Full));
        assert!(profiles.iter().any(|p| matches!(p, ComplianceProfile::Binger { .. })));
    }

    #[test]
    fn profile_override_keeps_personas() {
        let opts = SynthOptions { profile: Some(ComplianceProfile::Full), ..Default::default() };
        let forced = generate_cohort(10, 7, monday(), "UTC", &opts).unwrap();
        let sampled = generate_cohort(10, 7, monday(), "UTC", &SynthOptions::default()).unwrap();
        for (f, s) in forced.iter().zip(&sampled) {
            assert_eq!(f.profile, ComplianceProfile::Full);
            assert_eq!(f.persona, s.persona);
            assert!(f.weeks.iter().all(|w| w.responses.len() == 21));
        }
    }
}
