//! Seeded random quadrangles and the verification campaign driver.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point;
use crate::quadrangle::{QuadClass, Quadrangle};
use crate::scalar::Rational;
use crate::theorems::{verify_all, VerificationReport};

/// Rejection-sampling budget per generated quadrangle.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("coordinate range must be at least 2, got {0}")]
    RangeTooSmall(u32),
    #[error("no quadrangle of the requested kind after {0} attempts")]
    GenerationExhausted(usize),
    #[error("campaign needs at least one trial and one ratio")]
    EmptyCampaign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Coordinates are `p/q` with `p` in `[-R, R]` and `q` in `[1, R]`.
    pub coordinate_range: u32,
    pub target_class: Option<QuadClass>,
}

impl GeneratorConfig {
    pub fn new(seed: u64, coordinate_range: u32, target_class: Option<QuadClass>) -> Self {
        GeneratorConfig {
            seed,
            coordinate_range,
            target_class,
        }
    }

    /// Configuration for one campaign trial; depends only on the base seed
    /// and the trial index.
    pub fn for_trial(&self, trial: usize) -> Self {
        GeneratorConfig {
            seed: splitmix64(self.seed ^ splitmix64(trial as u64)),
            ..*self
        }
    }

    fn check(&self) -> Result<(), GenerateError> {
        if self.coordinate_range < 2 {
            Err(GenerateError::RangeTooSmall(self.coordinate_range))
        } else {
            Ok(())
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_scalar(rng: &mut impl Rng, range: u32) -> Rational {
    let r = i64::from(range);
    let numer = rng.random_range(-r..=r);
    let denom = rng.random_range(1..=r);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn random_point(rng: &mut impl Rng, range: u32) -> Point<Rational> {
    Point::new(random_scalar(rng, range), random_scalar(rng, range))
}

/// Deterministic random quadrangle; with a target class, rejection-samples
/// up to [`MAX_ATTEMPTS`] candidates.
pub fn generate_quadrangle(cfg: &GeneratorConfig) -> Result<Quadrangle<Rational>, GenerateError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let range = cfg.coordinate_range;
    for _ in 0..MAX_ATTEMPTS {
        let pts: [Point<Rational>; 4] = std::array::from_fn(|_| random_point(&mut rng, range));
        let [a, b, c, d] = pts;
        let Ok(q) = Quadrangle::new(a, b, c, d) else {
            continue;
        };
        match (cfg.target_class, q.classify()) {
            (_, Err(_)) => continue,
            (None, Ok(_)) => return Ok(q),
            (Some(want), Ok(got)) if want == got => return Ok(q),
            _ => continue,
        }
    }
    Err(GenerateError::GenerationExhausted(MAX_ATTEMPTS))
}

/// Diagonal relations that random sampling almost never hits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalFamily {
    Perpendicular,
    EqualLength,
}

/// Builds `BD` from `AC` directly: a rational multiple of `AC` turned by a
/// right angle, or `AC` turned by a rational rotation
/// `((1-t²)/(1+t²), 2t/(1+t²))`, which keeps its length exactly.
pub fn generate_with_diagonals(
    cfg: &GeneratorConfig,
    family: DiagonalFamily,
) -> Result<Quadrangle<Rational>, GenerateError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let range = cfg.coordinate_range;
    for _ in 0..MAX_ATTEMPTS {
        let a = random_point(&mut rng, range);
        let c = random_point(&mut rng, range);
        let b = random_point(&mut rng, range);
        let ac = &c - &a;
        let bd = match family {
            DiagonalFamily::Perpendicular => {
                let s = random_scalar(&mut rng, range);
                crate::geom::Vec2::new(-ac.dy.clone() * s.clone(), ac.dx.clone() * s)
            }
            DiagonalFamily::EqualLength => {
                let t = random_scalar(&mut rng, range);
                let one = Rational::from_integer(1.into());
                let denom = one.clone() + t.clone() * t.clone();
                let cos = (one - t.clone() * t.clone()) / denom.clone();
                let sin = (t.clone() + t) / denom;
                crate::geom::Vec2::new(
                    ac.dx.clone() * cos.clone() - ac.dy.clone() * sin.clone(),
                    ac.dx.clone() * sin + ac.dy.clone() * cos,
                )
            }
        };
        let d = &b + &bd;
        if let Ok(q) = Quadrangle::new(a, b, c, d) {
            if q.classify().is_ok() {
                return Ok(q);
            }
        }
    }
    Err(GenerateError::GenerationExhausted(MAX_ATTEMPTS))
}

/// Generates `trials` quadrangles and runs every applicable verifier for the
/// given ratios. Trials run in parallel; the output is ordered by trial index
/// and then claim, identically for every run with the same inputs.
pub fn run_campaign(
    cfg: &GeneratorConfig,
    trials: usize,
    lambdas: &[Rational],
) -> Result<Vec<VerificationReport>, GenerateError> {
    if trials == 0 || lambdas.is_empty() {
        return Err(GenerateError::EmptyCampaign);
    }
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|i| generate_quadrangle(&cfg.for_trial(i)).map(|q| verify_all(&q, lambdas)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}
