mod support;

use std::collections::BTreeSet;

use chrono::{Days, Duration, NaiveDate, NaiveDateTime};
use facetweek_core::ema::{build_week_dataset, default_survey_definition, likert_to_diverging, SlotStatus, WindowTimes};
use facetweek_core::schedule::{
    classify_profile, compliance_rate, due_reminders, make_study_plan, ArmOrder, ComplianceClass, ConditionKind,
    ProfileThresholds, ReminderPolicy,
};
use facetweek_core::synth::fuzz::{random_week, week_responses, FuzzOptions};
use facetweek_core::synth::{generate_cohort, generate_week, ComplianceProfile, SynthOptions, SyntheticPersona};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle::{self, Status};

fn monday() -> NaiveDate {
    NaiveDate::from_ymd_opt(2026, 3, 2).unwrap()
}

/// Some instant from a day before the week to a day after it.
fn random_now(rng: &mut impl Rng) -> NaiveDateTime {
    let start = (monday() - Days::new(1)).and_hms_opt(0, 0, 0).unwrap();
    start + Duration::minutes(rng.gen_range(0..9 * 1440))
}

#[test]
fn slot_algebra_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let def = default_survey_definition();
    let windows = WindowTimes::default();
    for _ in 0..1000 {
        let fuzz = random_week(&mut rng, &def, "P", monday(), &FuzzOptions::default());
        let responses = week_responses(&fuzz);
        let now = random_now(&mut rng);
        let week = build_week_dataset("P", &responses, monday(), now, &windows).unwrap();
        let counts = week.counts();
        assert_eq!(counts.completed + counts.missed + counts.pending, 21);
        let expected = oracle::slot_statuses(&responses, monday(), now, &windows);
        for (d, day) in week.slots.iter().enumerate() {
            for (w, s) in day.iter().enumerate() {
                let got = match s {
                    SlotStatus::Completed(_) => Status::Completed,
                    SlotStatus::Missed => Status::Missed,
                    SlotStatus::Pending => Status::Pending,
                };
                assert_eq!(got, expected[d][w], "day {d} window {w} now {now}");
            }
        }
    }
}

#[test]
fn compliance_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let def = default_survey_definition();
    let windows = WindowTimes::default();
    for _ in 0..1000 {
        let fuzz = random_week(&mut rng, &def, "P", monday(), &FuzzOptions::default());
        let now = random_now(&mut rng);
        let week = build_week_dataset("P", &week_responses(&fuzz), monday(), now, &windows).unwrap();
        let got = compliance_rate(&week, now, &windows);
        let want = oracle::compliance(&week, now, &windows);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn constructed_profiles_classify() {
    let t = ProfileThresholds::default();
    let end = (monday() + Days::new(7)).and_hms_opt(0, 0, 0).unwrap();
    let classify = |profile| {
        let rs = generate_week(4, &SyntheticPersona::default(), profile, monday(), "P", &SynthOptions::default());
        classify_profile(&build_week_dataset("P", &rs, monday(), end, &WindowTimes::default()).unwrap(), &t)
    };
    assert_eq!(classify(ComplianceProfile::Full), Ok(ComplianceClass::Full));
    for days in 1..=4 {
        assert_eq!(classify(ComplianceProfile::Binger { active_days: days }), Ok(ComplianceClass::Binger));
    }
    assert_eq!(classify(ComplianceProfile::MinimalCompleter), Ok(ComplianceClass::MinimalCompleter));
}

#[test]
fn cohort_of_44_is_balanced() {
    let cohort = generate_cohort(44, 7, monday(), "America/Chicago", &SynthOptions::default()).unwrap();
    let ab = cohort.iter().filter(|p| p.plan.order == ArmOrder::AB).count();
    assert_eq!((ab, cohort.len() - ab), (22, 22));
}

#[test]
fn washout_weeks_schedule_no_reminders() {
    let policy = ReminderPolicy::default();
    for i in 0..4 {
        let plan = make_study_plan("P", i, monday(), "UTC", chrono::Weekday::Mon).unwrap();
        let mut emitted = BTreeSet::new();
        let mut per_kind = [0usize; 3];
        let mut t = monday().and_hms_opt(0, 0, 0).unwrap();
        let end = t + Days::new(21);
        while t < end {
            let due = due_reminders(&plan, &policy, &[], t, &emitted);
            let kind = plan.week_containing(t.date()).unwrap().kind;
            per_kind[kind as usize] += due.len();
            emitted.extend(due);
            t += Duration::minutes(5);
        }
        assert_eq!(per_kind[ConditionKind::Washout as usize], 0);
        // Open + one nudge, two channels, 21 slots.
        assert_eq!(per_kind[ConditionKind::EmaOnly as usize], 21 * 2 * 2);
        assert_eq!(per_kind[ConditionKind::EmaPlusViz as usize], 21 * 2 * 2);
    }
}

#[test]
fn diverging_map_exhaustive() {
    let mapped: Vec<i8> = (1..=5).map(|l| likert_to_diverging(l).unwrap()).collect();
    assert_eq!(mapped, [-2, -1, 0, 1, 2]);
    for l in 1..=5u8 {
        assert_eq!(likert_to_diverging(l).unwrap(), -likert_to_diverging(6 - l).unwrap());
    }
    assert!(mapped.windows(2).all(|w| w[0] < w[1]));
    assert!(likert_to_diverging(0).is_err() && likert_to_diverging(6).is_err());
}
