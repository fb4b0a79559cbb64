//! The ten search operators.
//!
//! Every operator maps an ordered parent set (best parent first) and a
//! random stream to a single offspring, which is clamped to the gene bounds.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{clamp_to_bounds, GeneSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    WrightHeuristic,
    SimpleCrossover,
    ExtendedLine,
    UniformCrossover,
    Blx,
    DifferentialEvolution,
    Swap,
    Raise,
    Creep,
    SinglePointMutation,
}

pub const OPERATOR_COUNT: usize = 10;

impl OperatorKind {
    pub const ALL: [OperatorKind; OPERATOR_COUNT] = [
        OperatorKind::WrightHeuristic,
        OperatorKind::SimpleCrossover,
        OperatorKind::ExtendedLine,
        OperatorKind::UniformCrossover,
        OperatorKind::Blx,
        OperatorKind::DifferentialEvolution,
        OperatorKind::Swap,
        OperatorKind::Raise,
        OperatorKind::Creep,
        OperatorKind::SinglePointMutation,
    ];

    /// Position in [`OperatorKind::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::WrightHeuristic => "wright_heuristic",
            OperatorKind::SimpleCrossover => "simple_crossover",
            OperatorKind::ExtendedLine => "extended_line",
            OperatorKind::UniformCrossover => "uniform_crossover",
            OperatorKind::Blx => "blx",
            OperatorKind::DifferentialEvolution => "differential_evolution",
            OperatorKind::Swap => "swap",
            OperatorKind::Raise => "raise",
            OperatorKind::Creep => "creep",
            OperatorKind::SinglePointMutation => "single_point_mutation",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::param(format!("unknown operator `{name}`")))
    }

    /// Number of parents consumed.
    pub fn arity(self) -> usize {
        match self {
            OperatorKind::DifferentialEvolution => 4,
            OperatorKind::Raise | OperatorKind::Creep | OperatorKind::SinglePointMutation => 1,
            _ => 2,
        }
    }
}

/// The full ten-operator set.
pub const OPS10: [OperatorKind; 10] = OperatorKind::ALL;

/// Seven-operator set used with cellular and self-organizing populations.
pub const OPS7: [OperatorKind; 7] = [
    OperatorKind::WrightHeuristic,
    OperatorKind::SimpleCrossover,
    OperatorKind::ExtendedLine,
    OperatorKind::UniformCrossover,
    OperatorKind::Blx,
    OperatorKind::DifferentialEvolution,
    OperatorKind::SinglePointMutation,
];

/// How the swap operator chooses which genes come from the second parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SwapRule {
    /// The `alpha` most similar, differing genes are taken from parent 2.
    #[default]
    MostSimilar,
    /// Genes ranked by decreasing difference; rank `<= alpha` comes from parent 2.
    RankPredicate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OperatorParams {
    pub wright_r: f64,
    pub extended_line_alpha: f64,
    pub blx_alpha: f64,
    pub de_beta: f64,
    pub de_alpha: f64,
    pub raise_scale: f64,
    pub creep_scale: f64,
    pub swap_alpha: usize,
    pub swap_rule: SwapRule,
}

impl Default for OperatorParams {
    fn default() -> Self {
        OperatorParams {
            wright_r: 0.5,
            extended_line_alpha: 0.3,
            blx_alpha: 0.2,
            de_beta: 0.5,
            de_alpha: 1.0,
            raise_scale: 0.01,
            creep_scale: 0.001,
            swap_alpha: 1,
            swap_rule: SwapRule::MostSimilar,
        }
    }
}

/// Produces one offspring. `parents` must be ordered best first.
pub fn apply<R: Rng + ?Sized>(
    kind: OperatorKind,
    parents: &[&[f64]],
    specs: &[GeneSpec],
    params: &OperatorParams,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if parents.len() < kind.arity() {
        return Err(Error::InsufficientParents { operator: kind.name(), needed: kind.arity(), got: parents.len() });
    }
    let n = specs.len();
    for p in parents.iter().take(kind.arity()) {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.len() });
        }
    }
    let g1 = parents[0];
    let mut h: Vec<f64> = match kind {
        OperatorKind::WrightHeuristic => {
            let g2 = parents[1];
            g1.iter().zip(g2).map(|(a, b)| params.wright_r * (a - b) + a).collect()
        }
        OperatorKind::ExtendedLine => {
            let g2 = parents[1];
            g1.iter().zip(g2).map(|(a, b)| params.extended_line_alpha * (b - a) + a).collect()
        }
        OperatorKind::SimpleCrossover => {
            let cut = rng.random_range(0..=n);
            g1[..cut].iter().chain(&parents[1][cut..]).copied().collect()
        }
        OperatorKind::UniformCrossover => {
            let g2 = parents[1];
            g1.iter().zip(g2).map(|(&a, &b)| if rng.random::<f64>() > 0.5 { a } else { b }).collect()
        }
        OperatorKind::Blx => {
            let g2 = parents[1];
            g1.iter()
                .zip(g2)
                .map(|(&a, &b)| {
                    let lo = a.min(b);
                    let hi = a.max(b);
                    let ext = params.blx_alpha * (hi - lo);
                    if hi > lo {
                        rng.random_range((lo - ext)..=(hi + ext))
                    } else {
                        lo
                    }
                })
                .collect()
        }
        OperatorKind::DifferentialEvolution => {
            let (g2, g3, g4) = (parents[1], parents[2], parents[3]);
            (0..n)
                .map(|i| {
                    if params.de_beta > rng.random::<f64>() {
                        g2[i] + params.de_alpha * (g3[i] - g4[i])
                    } else {
                        g1[i]
                    }
                })
                .collect()
        }
        OperatorKind::Swap => swap(g1, parents[1], params),
        OperatorKind::Raise => g1
            .iter()
            .zip(specs)
            .map(|(&v, s)| v + gaussian(rng, params.raise_scale * s.range()))
            .collect(),
        OperatorKind::Creep => {
            let mut h = g1.to_vec();
            let k = rng.random_range(0..n);
            h[k] += gaussian(rng, params.creep_scale * specs[k].range());
            h
        }
        OperatorKind::SinglePointMutation => {
            let mut h = g1.to_vec();
            let k = rng.random_range(0..n);
            h[k] = specs[k].sample(rng);
            h
        }
    };
    clamp_to_bounds(&mut h, specs)?;
    Ok(h)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> f64 {
    if sigma > 0.0 {
        Normal::new(0.0, sigma).map(|d| d.sample(rng)).unwrap_or(0.0)
    } else {
        0.0
    }
}

fn swap(g1: &[f64], g2: &[f64], params: &OperatorParams) -> Vec<f64> {
    let mut h = g1.to_vec();
    let diffs: Vec<(usize, f64)> = g1.iter().zip(g2).map(|(a, b)| (a - b).abs()).enumerate().collect();
    match params.swap_rule {
        SwapRule::MostSimilar => {
            let mut differing: Vec<(usize, f64)> = diffs.into_iter().filter(|(_, d)| *d > 0.0).collect();
            differing.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            for &(i, _) in differing.iter().take(params.swap_alpha) {
                h[i] = g2[i];
            }
        }
        SwapRule::RankPredicate => {
            let mut ranked = diffs;
            ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            for (rank0, &(i, _)) in ranked.iter().enumerate() {
                if rank0 + 1 <= params.swap_alpha {
                    h[i] = g2[i];
                }
            }
        }
    }
    h
}

/// Independent bit flips with probability `rate` per gene (binary genomes).
pub fn bit_flip<R: Rng + ?Sized>(parent: &[f64], rate: f64, rng: &mut R) -> Vec<f64> {
    parent.iter().map(|&b| if rng.random::<f64>() < rate { 1.0 - b } else { b }).collect()
}

/// Draws an operator index with probability proportional to `weights`.
pub fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last = i;
        if u < w {
            return i;
        }
        u -= w;
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn specs(n: usize) -> Vec<GeneSpec> {
        vec![GeneSpec::real(-100.0, 100.0); n]
    }

    #[test]
    fn deterministic_formulas() {
        let mut rng = seeded(0);
        let p = OperatorParams::default();
        let s = specs(1);
        let w = apply(OperatorKind::WrightHeuristic, &[&[2.0], &[0.0]], &s, &p, &mut rng).unwrap();
        assert_eq!(w, vec![3.0]);
        let e = apply(OperatorKind::ExtendedLine, &[&[2.0], &[0.0]], &s, &p, &mut rng).unwrap();
        assert!((e[0] - 1.4).abs() < 1e-12);
    }

    #[test]
    fn swap_takes_most_similar_differing_gene() {
        let p = OperatorParams::default();
        let h = swap(&[1.0, 5.0, 3.0, 7.0], &[1.0, 0.0, 3.5, 9.0], &p);
        assert_eq!(h, vec![1.0, 5.0, 3.5, 7.0]);
        let lit = OperatorParams { swap_rule: SwapRule::RankPredicate, ..p };
        let h = swap(&[1.0, 5.0, 3.0, 7.0], &[1.0, 0.0, 3.5, 9.0], &lit);
        assert_eq!(h, vec![1.0, 0.0, 3.0, 7.0]);
    }

    #[test]
    fn arity_enforced() {
        let mut rng = seeded(0);
        let r = apply(OperatorKind::DifferentialEvolution, &[&[0.0], &[0.0]], &specs(1), &OperatorParams::default(), &mut rng);
        assert!(matches!(r, Err(Error::InsufficientParents { needed: 4, got: 2, .. })));
    }

    #[test]
    fn names_round_trip() {
        for k in OperatorKind::ALL {
            assert_eq!(OperatorKind::from_name(k.name()).unwrap(), k);
            assert_eq!(OperatorKind::from_index(k.index()), Some(k));
        }
    }
}
