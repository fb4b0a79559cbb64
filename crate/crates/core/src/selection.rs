//! Ranking, selection schemes and population update policies.
//!
//! All routines minimize. A "key" is any value where lower is better
//! (a cost, or a position in a ranked order).

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stochastic ranking bubble sort.
///
/// Adjacent pairs are compared by objective when both are feasible or with
/// probability `pf`, otherwise by constraint violation. Returns indices best
/// first. Sorting stops early after a sweep without swaps.
pub fn stochastic_rank<R: Rng + ?Sized>(
    costs: &[f64],
    phis: &[f64],
    pf: f64,
    sweeps: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if costs.len() != phis.len() {
        return Err(Error::DimensionMismatch { expected: costs.len(), got: phis.len() });
    }
    if !(0.0..=1.0).contains(&pf) {
        return Err(Error::param(format!("pf {pf} outside [0, 1]")));
    }
    let mut order: Vec<usize> = (0..costs.len()).collect();
    for _ in 0..sweeps {
        let mut swapped = false;
        for j in 0..order.len().saturating_sub(1) {
            let (a, b) = (order[j], order[j + 1]);
            let u: f64 = rng.random();
            let by_objective = (phis[a] == 0.0 && phis[b] == 0.0) || u < pf;
            let swap = if by_objective { costs[a] > costs[b] } else { phis[a] > phis[b] };
            if swap {
                order.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(order)
}

/// Deterministic order: feasible first, then by violation, then by cost.
/// Stable, so ties keep their input order.
pub fn feasibility_order(costs: &[f64], phis: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_by(|&a, &b| phis[a].total_cmp(&phis[b]).then(costs[a].total_cmp(&costs[b])));
    order
}

/// Converts a best-first order into rank positions (0 = best).
pub fn rank_positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        pos[i] = r;
    }
    pos
}

fn argmin_by_key(indices: &[usize], keys: &[f64]) -> usize {
    let mut best = indices[0];
    for &i in &indices[1..] {
        if keys[i] < keys[best] || (keys[i] == keys[best] && i < best) {
            best = i;
        }
    }
    best
}

/// One tournament of size `q`. Ties go to the lower index.
pub fn tournament_select<R: Rng + ?Sized>(keys: &[f64], q: usize, replacement: bool, rng: &mut R) -> Result<usize> {
    let n = keys.len();
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    if q == 0 || (!replacement && q > n) {
        return Err(Error::param(format!("tournament size {q} invalid for population {n}")));
    }
    let picks: Vec<usize> = if replacement {
        (0..q).map(|_| rng.random_range(0..n)).collect()
    } else {
        rand::seq::index::sample(rng, n, q).into_vec()
    };
    Ok(argmin_by_key(&picks, keys))
}

/// The best `floor(t * N)` indices, best first.
pub fn truncation_select(keys: &[f64], t: f64) -> Result<Vec<usize>> {
    if keys.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::param(format!("truncation threshold {t} outside (0, 1]")));
    }
    let count = ((t * keys.len() as f64).floor() as usize).max(1);
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    order.truncate(count);
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankingScheme {
    /// Weight `eta_minus + (eta_plus - eta_minus) (N - rank) / (N - 1)` with rank 1 best.
    Linear { eta_plus: f64, eta_minus: f64 },
    /// Weight `c^rank` with rank 1 best, `0 < c < 1`.
    Exponential { c: f64 },
    /// Weight equal to the key itself, which must be a positive fitness (higher is better).
    Proportional,
}

/// Selection probability of each individual under `scheme`.
pub fn selection_probabilities(keys: &[f64], scheme: RankingScheme) -> Result<Vec<f64>> {
    let n = keys.len();
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    let weights: Vec<f64> = match scheme {
        RankingScheme::Proportional => {
            if keys.iter().any(|&k| !(k > 0.0) || !k.is_finite()) {
                return Err(Error::param("proportional selection needs positive finite fitness"));
            }
            keys.to_vec()
        }
        RankingScheme::Linear { eta_plus, eta_minus } => {
            if eta_minus < 0.0 || eta_plus < eta_minus {
                return Err(Error::param("linear ranking needs 0 <= eta_minus <= eta_plus"));
            }
            let ranks = ranks_one_based(keys);
            let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
            ranks.iter().map(|&r| eta_minus + (eta_plus - eta_minus) * (n - r) as f64 / denom).collect()
        }
        RankingScheme::Exponential { c } => {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::param("exponential ranking needs 0 < c < 1"));
            }
            ranks_one_based(keys).iter().map(|&r| c.powi(r as i32)).collect()
        }
    };
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        if n == 1 {
            return Ok(vec![1.0]);
        }
        return Err(Error::Degenerate("selection weights sum to zero".into()));
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Rank 1 is the lowest key; ties broken by index.
fn ranks_one_based(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    let mut ranks = vec![0; keys.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

pub fn ranking_select<R: Rng + ?Sized>(keys: &[f64], scheme: RankingScheme, rng: &mut R) -> Result<usize> {
    let p = selection_probabilities(keys, scheme)?;
    Ok(crate::operators::sample_index(&p, rng))
}

/// Repeatedly removes the worse of two distinct random individuals until
/// `keep` remain. Equal keys are settled by a coin flip. Returns surviving
/// indices in ascending order.
pub fn modified_tournament<R: Rng + ?Sized>(keys: &[f64], keep: usize, rng: &mut R) -> Result<Vec<usize>> {
    if keep == 0 || keep > keys.len() {
        return Err(Error::param(format!("cannot keep {keep} of {}", keys.len())));
    }
    let mut alive: Vec<usize> = (0..keys.len()).collect();
    while alive.len() > keep {
        let n = alive.len();
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (ia, ib) = (alive[a], alive[b]);
        let remove_a = if keys[ia] == keys[ib] { rng.random::<bool>() } else { keys[ia] > keys[ib] };
        alive.swap_remove(if remove_a { a } else { b });
    }
    alive.sort_unstable();
    Ok(alive)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurvivalScheme {
    /// Tournaments without replacement.
    #[serde(alias = "tour")]
    Tournament,
    #[serde(alias = "trun")]
    Truncation,
    #[serde(alias = "rand")]
    Random,
    #[serde(alias = "linrank")]
    LinearRank,
    #[serde(alias = "exprank")]
    ExponentialRank,
    /// Remove the worse of random pairs until the target size remains.
    #[serde(alias = "modtour")]
    ModifiedTournament,
}

impl SurvivalScheme {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "tour" | "tournament" => SurvivalScheme::Tournament,
            "trun" | "truncation" => SurvivalScheme::Truncation,
            "rand" | "random" => SurvivalScheme::Random,
            "linrank" | "linear_rank" => SurvivalScheme::LinearRank,
            "exprank" | "exponential_rank" => SurvivalScheme::ExponentialRank,
            "modtour" | "modified_tournament" => SurvivalScheme::ModifiedTournament,
            _ => return Err(Error::Config(format!("unknown selection scheme `{name}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SurvivalParams {
    pub tournament_size: usize,
    pub exp_c: f64,
}

impl Default for SurvivalParams {
    fn default() -> Self {
        SurvivalParams { tournament_size: 2, exp_c: 0.9 }
    }
}

/// Chooses `mu` distinct survivors from a pool described by rank keys.
/// With `elite = Some(i)` index `i` is guaranteed to survive.
pub fn select_survivors<R: Rng + ?Sized>(
    keys: &[f64],
    mu: usize,
    scheme: SurvivalScheme,
    params: &SurvivalParams,
    elite: Option<usize>,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = keys.len();
    if mu == 0 || mu > n {
        return Err(Error::param(format!("cannot select {mu} survivors from {n}")));
    }
    let mut chosen: Vec<usize> = match scheme {
        SurvivalScheme::Truncation => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
            order.truncate(mu);
            order
        }
        SurvivalScheme::Random => rand::seq::index::sample(rng, n, mu).into_vec(),
        SurvivalScheme::Tournament => {
            let q = params.tournament_size.max(1);
            let mut remaining: Vec<usize> = (0..n).collect();
            let mut out = Vec::with_capacity(mu);
            while out.len() < mu {
                remaining.shuffle(rng);
                let mut winners = Vec::new();
                for group in remaining.chunks(q) {
                    winners.push(argmin_by_key(group, keys));
                    if out.len() + winners.len() == mu {
                        break;
                    }
                }
                remaining.retain(|i| !winners.contains(i));
                out.extend(winners);
            }
            out
        }
        SurvivalScheme::LinearRank | SurvivalScheme::ExponentialRank => {
            let rs = match scheme {
                SurvivalScheme::LinearRank => RankingScheme::Linear { eta_plus: 1.0, eta_minus: 0.0 },
                _ => RankingScheme::Exponential { c: params.exp_c },
            };
            let mut remaining: Vec<usize> = (0..n).collect();
            let mut out = Vec::with_capacity(mu);
            while out.len() < mu {
                let sub: Vec<f64> = remaining.iter().map(|&i| keys[i]).collect();
                let p = selection_probabilities(&sub, rs)?;
                let pick = if p.iter().all(|&v| v == 0.0) { 0 } else { crate::operators::sample_index(&p, rng) };
                out.push(remaining.remove(pick));
            }
            out
        }
        SurvivalScheme::ModifiedTournament => modified_tournament(keys, mu, rng)?,
    };
    if let Some(e) = elite {
        if !chosen.contains(&e) {
            let worst = (0..chosen.len())
                .max_by(|&a, &b| keys[chosen[a]].total_cmp(&keys[chosen[b]]).then(a.cmp(&b)))
                .unwrap_or(0);
            chosen[worst] = e;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Population update design: parent count, offspring count, maximum age.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpdatePolicy {
    pub mu: usize,
    pub lambda: usize,
    /// Maximum number of generations an individual may act as parent; `None` is unbounded.
    pub kappa: Option<u32>,
    pub elitist: bool,
}

impl UpdatePolicy {
    /// Generational: `mu = N/2`, `lambda = N`, `kappa = 1`, elitist.
    pub fn generational(n: usize) -> Self {
        UpdatePolicy { mu: (n / 2).max(1), lambda: n, kappa: Some(1), elitist: true }
    }

    /// Pseudo steady state: `mu = lambda = N`, unbounded age.
    pub fn steady_state(n: usize) -> Self {
        UpdatePolicy { mu: n, lambda: n, kappa: None, elitist: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aged<T> {
    pub item: T,
    pub age: u32,
}

/// Builds the next parent set from the current parents and `lambda` offspring.
///
/// `score(item) = (cost, phi)`. When `pf` is given, the pool is ordered by
/// stochastic ranking with that probability; otherwise by the deterministic
/// feasibility-first order. Parents precede offspring in the pool, so equal
/// keys favour the incumbent.
pub fn advance_generation<T: Clone, R: Rng + ?Sized>(
    policy: &UpdatePolicy,
    scheme: SurvivalScheme,
    params: &SurvivalParams,
    parents: &[Aged<T>],
    offspring: Vec<T>,
    score: impl Fn(&T) -> (f64, f64),
    pf: Option<f64>,
    rng: &mut R,
) -> Result<Vec<Aged<T>>> {
    if offspring.len() != policy.lambda {
        return Err(Error::param(format!("expected {} offspring, got {}", policy.lambda, offspring.len())));
    }
    let best_parent = {
        let s: Vec<(f64, f64)> = parents.iter().map(|p| score(&p.item)).collect();
        let costs: Vec<f64> = s.iter().map(|v| v.0).collect();
        let phis: Vec<f64> = s.iter().map(|v| v.1).collect();
        feasibility_order(&costs, &phis).first().copied()
    };
    let mut pool: Vec<Aged<T>> = Vec::with_capacity(parents.len() + offspring.len());
    for (i, p) in parents.iter().enumerate() {
        let within_age = policy.kappa.map_or(true, |k| p.age + 1 < k);
        if within_age || (policy.elitist && Some(i) == best_parent) {
            pool.push(Aged { item: p.item.clone(), age: p.age + 1 });
        }
    }
    pool.extend(offspring.into_iter().map(|item| Aged { item, age: 0 }));
    if pool.len() < policy.mu {
        return Err(Error::param(format!("pool of {} cannot supply {} parents", pool.len(), policy.mu)));
    }
    let s: Vec<(f64, f64)> = pool.iter().map(|p| score(&p.item)).collect();
    let costs: Vec<f64> = s.iter().map(|v| v.0).collect();
    let phis: Vec<f64> = s.iter().map(|v| v.1).collect();
    let order = match pf {
        Some(pf) => stochastic_rank(&costs, &phis, pf, pool.len(), rng)?,
        None => feasibility_order(&costs, &phis),
    };
    let keys: Vec<f64> = rank_positions(&order).iter().map(|&r| r as f64).collect();
    let elite = if policy.elitist { feasibility_order(&costs, &phis).first().copied() } else { None };
    let survivors = select_survivors(&keys, policy.mu, scheme, params, elite, rng)?;
    Ok(survivors.into_iter().map(|i| pool[i].clone()).collect())
}

/// One generation of deterministic crowding.
///
/// Random disjoint pairs each produce two children; every child competes
/// with the parent it is paired with by minimal total distance and replaces
/// it only when strictly better.
pub fn deterministic_crowding<T: Clone, R: Rng + ?Sized>(
    pop: &mut [T],
    rng: &mut R,
    mut make_children: impl FnMut(&T, &T, &mut R) -> Result<(T, T)>,
    distance: impl Fn(&T, &T) -> f64,
    better: impl Fn(&T, &T) -> bool,
) -> Result<()> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.shuffle(rng);
    for pair in idx.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        let (c1, c2) = make_children(&pop[a], &pop[b], rng)?;
        let straight = distance(&pop[a], &c1) + distance(&pop[b], &c2);
        let crossed = distance(&pop[a], &c2) + distance(&pop[b], &c1);
        let (for_a, for_b) = if straight <= crossed { (c1, c2) } else { (c2, c1) };
        if better(&for_a, &pop[a]) {
            pop[a] = for_a;
        }
        if better(&for_b, &pop[b]) {
            pop[b] = for_b;
        }
    }
    Ok(())
}
