//! Crossover study plans, reminder timing and compliance metrics.

mod compliance;
mod plan;
mod reminders;

pub use compliance::{
    classify_profile, compliance_rate, ComplianceClass, ProfileThresholds, WeekNotElapsed,
};
pub use plan::{make_study_plan, ArmOrder, ConditionKind, ConditionWeek, PlanError, StudyPlan};
pub use reminders::{
    due_reminders, Channel, PolicyError, ReminderEvent, ReminderKind, ReminderPolicy,
};
