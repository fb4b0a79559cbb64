//! Supervisory control of operator probabilities.
//!
//! Event measurements are interpreted (fitness based I1..I8, raw ETV, or
//! the ETV outlier test), averaged per operator over an adaptation cycle of
//! `tau` generations into a reward, folded into a quality estimate and
//! turned into probabilities by probability matching or adaptive pursuit.
//! Interpretations assume maximization; minimization problems are negated
//! by the caller.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::etv::EtvResult;
use crate::operators::{OperatorKind, OPERATOR_COUNT, OPS10, OPS7};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterpretationKind {
    /// 1 if the offspring beats its best parent.
    I1,
    /// Offspring minus parent.
    I2,
    /// Positive part of I2.
    I3,
    /// 1 if the offspring beats the population median.
    I4,
    /// Improvement over the best, scaled by best minus median.
    I5,
    /// Positive part of offspring minus best.
    I6,
    /// Positive part of offspring minus the 90th percentile.
    I7,
    /// Number of population members the offspring beats.
    I8,
}

/// Population statistics used as interpretation context.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationContext {
    sorted: Vec<f64>,
    pub median: f64,
    pub best: f64,
    pub p90: f64,
}

impl PopulationContext {
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 { sorted[n / 2] } else { 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]) };
        let best = sorted[n - 1];
        let p90 = sorted[((0.9 * n as f64).ceil() as usize).clamp(1, n) - 1];
        Ok(PopulationContext { sorted, median, best, p90 })
    }

    /// Number of members strictly below `f`.
    pub fn count_below(&self, f: f64) -> usize {
        self.sorted.partition_point(|&v| v < f)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

pub fn interpret(kind: InterpretationKind, offspring: f64, parent: f64, ctx: &PopulationContext) -> f64 {
    use InterpretationKind::*;
    match kind {
        I1 => f64::from(u8::from(offspring > parent)),
        I2 => offspring - parent,
        I3 => (offspring - parent).max(0.0),
        I4 => f64::from(u8::from(offspring > ctx.median)),
        I5 => {
            let denom = ctx.best - ctx.median;
            if denom == 0.0 {
                0.0
            } else {
                (offspring - ctx.best) / denom
            }
        }
        I6 => (offspring - ctx.best).max(0.0),
        I7 => (offspring - ctx.p90).max(0.0),
        I8 => ctx.count_below(offspring) as f64,
    }
}

/// Standard normal upper tail probability.
pub fn normal_upper_tail(z: f64) -> f64 {
    0.5 * libm::erfc(z / std::f64::consts::SQRT_2)
}

/// Probability that `m` independent draws, each an outlier with
/// probability `p_z`, contain none.
pub fn p_alpha(p_z: f64, m: usize) -> f64 {
    (1.0 - p_z).powi(m as i32)
}

/// Outlier interpretation of a batch of `(operator index, ETV size)` pairs.
///
/// Returns `p_alpha` for each event. Sizes are log transformed; mean and
/// sample standard deviation are pooled over the whole batch and `M_i` is
/// the number of events from the event's operator.
pub fn outlier_interpret(batch: &[(usize, u32)]) -> Result<Vec<f64>> {
    if batch.iter().any(|&(_, s)| s == 0) {
        return Err(Error::param("ETV sizes must be at least 1"));
    }
    let n = batch.len();
    if n < 2 {
        return Ok(vec![0.0; n]);
    }
    let logs: Vec<f64> = batch.iter().map(|&(_, s)| (s as f64).ln()).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    let var = logs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sd = var.sqrt();
    if !(sd > 0.0) {
        return Ok(vec![0.0; n]);
    }
    let max_op = batch.iter().map(|&(o, _)| o).max().unwrap_or(0);
    let mut counts = vec![0usize; max_op + 1];
    for &(o, _) in batch {
        counts[o] += 1;
    }
    Ok(batch
        .iter()
        .zip(&logs)
        .map(|(&(o, _), &l)| p_alpha(normal_upper_tail((l - mean) / sd), counts[o]))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Matching,
    Pursuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Credit {
    Fitness(InterpretationKind),
    RawEtv,
    Outlier,
    /// Fixed probabilities, never updated.
    Static,
}

impl Credit {
    pub fn uses_etv(self) -> bool {
        matches!(self, Credit::RawEtv | Credit::Outlier)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ControllerParams {
    pub alpha: f64,
    pub beta: f64,
    pub tau: u64,
    pub p_min: f64,
}

impl Default for ControllerParams {
    fn default() -> Self {
        ControllerParams { alpha: 0.8, beta: 0.8, tau: 10, p_min: 0.02 }
    }
}

/// Named adaptive and static designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Design {
    IMedianPursuit,
    IParentPursuit,
    IRankPursuit,
    IMedian,
    IParent,
    IRank,
    EtvOutlier,
    Etv,
    StaticOps2,
    StaticOps10,
    StaticOps7,
}

impl Design {
    pub const TABLE: [Design; 10] = [
        Design::IMedianPursuit,
        Design::IParentPursuit,
        Design::IRankPursuit,
        Design::IMedian,
        Design::IParent,
        Design::IRank,
        Design::EtvOutlier,
        Design::Etv,
        Design::StaticOps2,
        Design::StaticOps10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Design::IMedianPursuit => "i_median_pursuit",
            Design::IParentPursuit => "i_parent_pursuit",
            Design::IRankPursuit => "i_rank_pursuit",
            Design::IMedian => "i_median",
            Design::IParent => "i_parent",
            Design::IRank => "i_rank",
            Design::EtvOutlier => "etv_outlier",
            Design::Etv => "etv",
            Design::StaticOps2 => "static_ops2",
            Design::StaticOps10 => "static_ops10",
            Design::StaticOps7 => "static_ops7",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        [Design::StaticOps7]
            .iter()
            .chain(Design::TABLE.iter())
            .copied()
            .find(|d| d.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown adaptive design `{name}`")))
    }

    pub fn strategy(self) -> Strategy {
        match self {
            Design::IMedianPursuit | Design::IParentPursuit | Design::IRankPursuit => Strategy::Pursuit,
            _ => Strategy::Matching,
        }
    }

    pub fn credit(self) -> Credit {
        match self {
            Design::IMedianPursuit | Design::IMedian => Credit::Fitness(InterpretationKind::I4),
            Design::IParentPursuit | Design::IParent => Credit::Fitness(InterpretationKind::I1),
            Design::IRankPursuit | Design::IRank => Credit::Fitness(InterpretationKind::I8),
            Design::EtvOutlier => Credit::Outlier,
            Design::Etv => Credit::RawEtv,
            Design::StaticOps2 | Design::StaticOps10 | Design::StaticOps7 => Credit::Static,
        }
    }

    /// Initial probabilities over the ten operators.
    pub fn initial_probabilities(self) -> Vec<f64> {
        let mut p = vec![0.0; OPERATOR_COUNT];
        match self {
            Design::StaticOps2 => {
                p[OperatorKind::UniformCrossover.index()] = 0.98;
                p[OperatorKind::SinglePointMutation.index()] = 0.02;
            }
            Design::StaticOps7 => {
                for k in OPS7 {
                    p[k.index()] = 1.0 / OPS7.len() as f64;
                }
            }
            _ => {
                for k in OPS10 {
                    p[k.index()] = 1.0 / OPS10.len() as f64;
                }
            }
        }
        p
    }
}

/// One adaptation cycle's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleRecord {
    pub cycle: u64,
    pub generation: u64,
    pub reward: Vec<f64>,
    pub quality: Vec<f64>,
    pub probability: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Controller {
    params: ControllerParams,
    strategy: Strategy,
    credit: Credit,
    q: Vec<f64>,
    p: Vec<f64>,
    archive: Vec<Vec<f64>>,
    pending_etv: Vec<(usize, u32)>,
    cycle: u64,
}

impl Controller {
    pub fn new(strategy: Strategy, credit: Credit, params: ControllerParams, initial: Vec<f64>) -> Result<Self> {
        let n = initial.len();
        if n == 0 {
            return Err(Error::param("controller needs at least one operator"));
        }
        if !(0.0..=1.0).contains(&params.alpha) || !(0.0..=1.0).contains(&params.beta) {
            return Err(Error::param("alpha and beta must lie in [0, 1]"));
        }
        if params.tau == 0 {
            return Err(Error::param("tau must be positive"));
        }
        if credit != Credit::Static && (params.p_min < 0.0 || params.p_min * n as f64 > 1.0) {
            return Err(Error::param("p_min times operator count exceeds 1"));
        }
        let sum: f64 = initial.iter().sum();
        if initial.iter().any(|&v| v < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::param("initial probabilities must be a distribution"));
        }
        Ok(Controller {
            params,
            strategy,
            credit,
            q: vec![0.0; n],
            p: initial,
            archive: vec![Vec::new(); n],
            pending_etv: Vec::new(),
            cycle: 0,
        })
    }

    pub fn for_design(design: Design, params: ControllerParams) -> Result<Self> {
        Controller::new(design.strategy(), design.credit(), params, design.initial_probabilities())
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn quality(&self) -> &[f64] {
        &self.q
    }

    pub fn credit(&self) -> Credit {
        self.credit
    }

    pub fn params(&self) -> &ControllerParams {
        &self.params
    }

    /// Fitness based interpretation of one offspring, recorded at creation.
    pub fn record_offspring(&mut self, op: usize, offspring: f64, parent: f64, ctx: &PopulationContext) {
        if let Credit::Fitness(kind) = self.credit {
            self.archive[op].push(interpret(kind, offspring, parent, ctx));
        }
    }

    /// Queues finalized ETVs; they are interpreted as one batch at the next cycle.
    pub fn record_etvs(&mut self, results: &[EtvResult]) {
        if !self.credit.uses_etv() {
            return;
        }
        self.pending_etv.extend(results.iter().filter_map(|r| r.operator.map(|o| (o.index(), r.size))));
    }

    /// Runs a cycle when `generation` is a multiple of `tau`.
    pub fn end_generation(&mut self, generation: u64) -> Option<CycleRecord> {
        if self.credit == Credit::Static || generation == 0 || generation % self.params.tau != 0 {
            return None;
        }
        Some(self.cycle_update(generation))
    }

    fn absorb_etvs(&mut self) {
        let batch = std::mem::take(&mut self.pending_etv);
        match self.credit {
            Credit::RawEtv => {
                for (o, s) in batch {
                    self.archive[o].push(s as f64);
                }
            }
            Credit::Outlier => {
                let p = outlier_interpret(&batch).unwrap_or_else(|_| vec![0.0; batch.len()]);
                let mut m = vec![0usize; self.p.len()];
                for &(o, _) in &batch {
                    m[o] += 1;
                }
                for (&(o, _), pa) in batch.iter().zip(p) {
                    self.archive[o].push(m[o] as f64 * pa);
                }
            }
            _ => {}
        }
    }

    /// Reward, quality and probability update.
    pub fn cycle_update(&mut self, generation: u64) -> CycleRecord {
        self.absorb_etvs();
        let n = self.p.len();
        let reward: Vec<f64> = self
            .archive
            .iter()
            .map(|a| if a.is_empty() { 0.0 } else { a.iter().sum::<f64>() / a.len() as f64 })
            .collect();
        for (q, r) in self.q.iter_mut().zip(&reward) {
            *q += self.params.alpha * (r - *q);
        }
        let p_min = self.params.p_min;
        let qpos: Vec<f64> = self.q.iter().map(|&q| q.max(0.0)).collect();
        let total: f64 = qpos.iter().sum();
        match self.strategy {
            Strategy::Matching => {
                if total > 0.0 {
                    // p_min + (1 - n p_min) s with the share taken as a sum of
                    // ratios, so equal qualities give exactly 1/n.
                    self.p = qpos
                        .iter()
                        .map(|&q| {
                            let s = if q > 0.0 { 1.0 / qpos.iter().map(|&r| r / q).sum::<f64>() } else { 0.0 };
                            s + p_min * (1.0 - n as f64 * s)
                        })
                        .collect();
                }
            }
            Strategy::Pursuit => {
                let p_max = 1.0 - (n as f64 - 1.0) * p_min;
                let best = if total > 0.0 {
                    Some((0..n).fold(0, |b, i| if self.q[i] > self.q[b] { i } else { b }))
                } else {
                    None
                };
                for i in 0..n {
                    let target = if Some(i) == best { p_max } else { p_min };
                    self.p[i] += self.params.beta * (target - self.p[i]);
                }
                let sum: f64 = self.p.iter().sum();
                for v in &mut self.p {
                    *v /= sum;
                }
            }
        }
        for a in &mut self.archive {
            a.clear();
        }
        self.cycle += 1;
        CycleRecord { cycle: self.cycle, generation, reward, quality: self.q.clone(), probability: self.p.clone() }
    }
}
