//! Core model for thrice-daily EMA collection and the one-week facet dashboard.
//!
//! Everything in this crate is pure computation over values: the survey
//! instrument and week assembly ([`ema`]), study plans, reminders and
//! compliance ([`schedule`]), deterministic SVG rendering of the ten-chart
//! dashboard ([`render`]) and seeded synthetic participants ([`synth`]).
//!
//! The crate is `no_std` and only needs `alloc`. Time is handled as
//! participant-local wall-clock (`chrono::NaiveDateTime`); resolving named
//! time zones is left to the caller.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod ema;
pub mod render;
pub mod schedule;
pub mod synth;

pub use ema::{
    build_week_dataset, default_survey_definition, likert_to_diverging, sleep_duration,
    validate_response, AnswerKind, AnswerValue, ClockTime, EmaResponse, Facet, Question,
    SlotStatus, SurveyDefinition, SurveyWindow, WeekDataset, WindowTimes,
};
pub use render::{render_dashboard, Dashboard, Theme};
pub use synth::{generate_cohort, generate_week, ComplianceProfile, SynthOptions, SyntheticPersona};
pub use schedule::{
    classify_profile, compliance_rate, due_reminders, make_study_plan, ReminderPolicy, StudyPlan,
};
