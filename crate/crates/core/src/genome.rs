//! Gene specifications, random genomes, bound handling and distances.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneKind {
    Real,
    Integer,
    Binary,
}

impl GeneKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneKind::Real => "real",
            GeneKind::Integer => "integer",
            GeneKind::Binary => "binary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneSpec {
    pub kind: GeneKind,
    pub lower: f64,
    pub upper: f64,
}

impl GeneSpec {
    pub fn real(lower: f64, upper: f64) -> Self {
        GeneSpec { kind: GeneKind::Real, lower, upper }
    }

    pub fn integer(lower: f64, upper: f64) -> Self {
        GeneSpec { kind: GeneKind::Integer, lower, upper }
    }

    pub fn binary() -> Self {
        GeneSpec { kind: GeneKind::Binary, lower: 0.0, upper: 1.0 }
    }

    pub fn range(&self) -> f64 {
        self.upper - self.lower
    }

    fn check(&self, index: usize) -> Result<()> {
        let bad = |reason: &str| Err(Error::InvalidSpec { index, reason: reason.to_string() });
        if !self.lower.is_finite() || !self.upper.is_finite() {
            return bad("bounds must be finite");
        }
        if self.lower > self.upper {
            return bad("lower bound exceeds upper bound");
        }
        match self.kind {
            GeneKind::Integer if self.lower.ceil() > self.upper.floor() => {
                bad("integer interval contains no integer")
            }
            GeneKind::Binary if self.lower < 0.0 || self.upper > 1.0 => bad("binary bounds must lie in [0, 1]"),
            _ => Ok(()),
        }
    }

    /// Draws one value uniformly over the feasible set of this gene.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            GeneKind::Real => {
                if self.lower == self.upper {
                    self.lower
                } else {
                    rng.random_range(self.lower..=self.upper)
                }
            }
            GeneKind::Integer => {
                let lo = self.lower.ceil() as i64;
                let hi = self.upper.floor() as i64;
                rng.random_range(lo..=hi) as f64
            }
            GeneKind::Binary => {
                let lo = self.lower.ceil() as i64;
                let hi = self.upper.floor() as i64;
                if lo == hi {
                    lo as f64
                } else if rng.random::<bool>() {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Rounds (half away from zero) integer and binary genes, then clips.
    pub fn clamp(&self, value: f64) -> f64 {
        let v = if value.is_nan() { self.lower } else { value };
        match self.kind {
            GeneKind::Real => v.clamp(self.lower, self.upper),
            GeneKind::Integer | GeneKind::Binary => {
                let lo = self.lower.ceil();
                let hi = self.upper.floor();
                v.round().clamp(lo, hi)
            }
        }
    }
}

/// Validates a full specification vector.
pub fn validate_specs(specs: &[GeneSpec]) -> Result<()> {
    if specs.is_empty() {
        return Err(Error::InvalidSpec { index: 0, reason: "empty specification".into() });
    }
    specs.iter().enumerate().try_for_each(|(i, s)| s.check(i))
}

pub fn random_genome<R: Rng + ?Sized>(specs: &[GeneSpec], rng: &mut R) -> Result<Vec<f64>> {
    validate_specs(specs)?;
    Ok(specs.iter().map(|s| s.sample(rng)).collect())
}

pub fn clamp_to_bounds(genes: &mut [f64], specs: &[GeneSpec]) -> Result<()> {
    check_len(genes.len(), specs.len())?;
    for (g, s) in genes.iter_mut().zip(specs) {
        *g = s.clamp(*g);
    }
    Ok(())
}

/// Checks that a genome lies inside its bounds and respects gene kinds.
pub fn check_genome(genes: &[f64], specs: &[GeneSpec]) -> Result<()> {
    check_len(genes.len(), specs.len())?;
    for (index, (&value, s)) in genes.iter().zip(specs).enumerate() {
        let integral = value.fract() == 0.0;
        let ok = value.is_finite()
            && value >= s.lower
            && value <= s.upper
            && (s.kind == GeneKind::Real || integral);
        if !ok {
            return Err(Error::InvalidGeneValue { index, value, kind: s.kind.name() });
        }
    }
    Ok(())
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        Err(Error::DimensionMismatch { expected, got })
    } else {
        Ok(())
    }
}

/// Root mean square of range-normalized gene differences.
///
/// Genes with zero range contribute nothing.
pub fn normalized_euclidean(a: &[f64], b: &[f64], specs: &[GeneSpec]) -> Result<f64> {
    check_len(a.len(), specs.len())?;
    check_len(b.len(), specs.len())?;
    let n = specs.len() as f64;
    let sum: f64 = a
        .iter()
        .zip(b)
        .zip(specs)
        .map(|((x, y), s)| {
            let r = s.range();
            if r > 0.0 {
                let d = (x - y) / r;
                d * d
            } else {
                0.0
            }
        })
        .sum();
    Ok((sum / n).sqrt())
}

/// Number of differing positions. Only defined for binary genomes.
pub fn hamming(a: &[f64], b: &[f64], specs: &[GeneSpec]) -> Result<usize> {
    check_len(a.len(), specs.len())?;
    check_len(b.len(), specs.len())?;
    if let Some(index) = specs.iter().position(|s| s.kind != GeneKind::Binary) {
        return Err(Error::InvalidSpec { index, reason: "hamming distance needs binary genes".into() });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

pub fn is_binary(specs: &[GeneSpec]) -> bool {
    specs.iter().all(|s| s.kind == GeneKind::Binary)
}
