//! Seeded generator of participant weeks with cross-facet patterns and
//! realistic gaps.

pub mod fuzz;
mod generate;
mod persona;

pub use generate::{generate_cohort, generate_week, SynthOptions, SyntheticParticipant, SyntheticWeek};
pub use persona::{ComplianceProfile, PersonaError, SyntheticPersona};
