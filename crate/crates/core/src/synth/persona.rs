use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ema::ClockTime;

/// Latent behaviour of one synthetic participant.
///
/// The coupling coefficients tie facets together so the generated week
/// carries patterns a reader can find on the dashboard: worse sleep raises
/// symptom intensity, symptoms raise worry, good peer contact raises
/// happiness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticPersona {
    pub bed_time: ClockTime,
    pub wake_time: ClockTime,
    /// Half-width of the uniform jitter on bed and wake times, minutes.
    pub sleep_jitter_minutes: u16,
    /// Per-category probability of reporting a symptom, in the order of
    /// the instrument's symptom list.
    pub symptom_propensity: [f64; 9],
    pub base_intensity: f64,
    /// Intensity added per step of worse sleep quality.
    pub sleep_to_symptom: f64,
    /// Worry added per unit of symptom intensity.
    pub symptom_to_worry: f64,
    /// Happiness added per step of better peer interaction.
    pub peer_to_happy: f64,
    /// Standard deviation of answer noise, in scale units.
    pub noise: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PersonaError {
    #[error("symptom propensity {0} outside [0, 1]")]
    Propensity(usize),
    #[error("couplings must lie in [-3, 3] and keep base + sleep effect within 0..=10")]
    Coupling,
    #[error("noise scale must be finite and non-negative")]
    Noise,
    #[error("compliance probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("binger active days must be 1..=6, got {0}")]
    BingerDays(u8),
}

impl Default for SyntheticPersona {
    fn default() -> Self {
        SyntheticPersona {
            bed_time: ClockTime::hm(22, 45),
            wake_time: ClockTime::hm(7, 0),
            sleep_jitter_minutes: 60,
            symptom_propensity: [0.35, 0.45, 0.2, 0.15, 0.15, 0.05, 0.2, 0.1, 0.03],
            base_intensity: 2.0,
            sleep_to_symptom: 1.5,
            symptom_to_worry: 0.6,
            peer_to_happy: 1.0,
            noise: 1.0,
            seed: 0,
        }
    }
}

impl SyntheticPersona {
    pub fn check(&self) -> Result<(), PersonaError> {
        if let Some(i) = self.symptom_propensity.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(PersonaError::Propensity(i));
        }
        let couplings = [self.sleep_to_symptom, self.symptom_to_worry, self.peer_to_happy];
        let peak = self.base_intensity + 3.0 * self.sleep_to_symptom.max(0.0);
        if couplings.iter().any(|c| !(-3.0..=3.0).contains(c))
            || !(0.0..=10.0).contains(&self.base_intensity)
            || peak > 10.0
        {
            return Err(PersonaError::Coupling);
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return Err(PersonaError::Noise);
        }
        Ok(())
    }

    /// A varied but valid persona.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut propensity = [0.0; 9];
        for p in propensity.iter_mut() {
            *p = rng.gen_range(0.0..0.5);
        }
        propensity[8] = rng.gen_range(0.0..0.08);
        let base_intensity = rng.gen_range(0.5..4.0);
        SyntheticPersona {
            bed_time: ClockTime::hm(21, 30).add_minutes(rng.gen_range(0..180)),
            wake_time: ClockTime::hm(6, 0).add_minutes(rng.gen_range(0..150)),
            sleep_jitter_minutes: rng.gen_range(15..=90),
            symptom_propensity: propensity,
            base_intensity,
            sleep_to_symptom: rng.gen_range(0.3..2.0),
            symptom_to_worry: rng.gen_range(0.2..0.9),
            peer_to_happy: rng.gen_range(0.2..1.5),
            noise: rng.gen_range(0.3..1.5),
            seed: rng.gen(),
        }
    }
}

/// Which slots a synthetic participant answers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum ComplianceProfile {
    Full,
    /// One or two answers every day.
    MinimalCompleter,
    /// Every slot of the first `active_days` days, then nothing.
    Binger { active_days: u8 },
    /// Each slot independently with probability `p`.
    Random { p: f64 },
}

impl ComplianceProfile {
    pub fn check(&self) -> Result<(), PersonaError> {
        match *self {
            ComplianceProfile::Binger { active_days } if !(1..=6).contains(&active_days) => {
                Err(PersonaError::BingerDays(active_days))
            }
            ComplianceProfile::Random { p } if !(0.0..=1.0).contains(&p) => {
                Err(PersonaError::Probability(p))
            }
            _ => Ok(()),
        }
    }
}

impl core::str::FromStr for ComplianceProfile {
    type Err = alloc::string::String;

    /// `full`, `minimal`, `binger:N` or `random:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || alloc::format!("unknown compliance profile {s:?}");
        let profile = match s.split_once(':') {
            None if s == "full" => ComplianceProfile::Full,
            None if s == "minimal" => ComplianceProfile::MinimalCompleter,
            Some(("binger", n)) => ComplianceProfile::Binger { active_days: n.parse().map_err(|_| bad())? },
            Some(("random", p)) => ComplianceProfile::Random { p: p.parse().map_err(|_| bad())? },
            _ => return Err(bad()),
        };
        profile.check().map_err(|e| alloc::format!("{e}"))?;
        Ok(profile)
    }
}
