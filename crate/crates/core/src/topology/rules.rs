//! Structural update rules for cellular and self-organizing populations.

use rand::seq::IteratorRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Network;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Sotea1Params {
    pub p_add: f64,
    pub p_remove: f64,
}

impl Default for Sotea1Params {
    fn default() -> Self {
        Sotea1Params { p_add: 0.10, p_remove: 0.10 }
    }
}

impl Sotea1Params {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_add) || !(0.0..=1.0).contains(&self.p_remove) {
            return Err(Error::param("p_add and p_remove must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Sotea2Params {
    pub k_min: usize,
    pub k_max: usize,
    pub walk_retries: usize,
}

impl Default for Sotea2Params {
    fn default() -> Self {
        Sotea2Params { k_min: 3, k_max: 7, walk_retries: 10 }
    }
}

impl Sotea2Params {
    pub fn validate(&self) -> Result<()> {
        if self.k_min > self.k_max {
            return Err(Error::param(format!("k_min {} exceeds k_max {}", self.k_min, self.k_max)));
        }
        Ok(())
    }
}

fn random_neighbor<R: Rng + ?Sized>(g: &Network, v: usize, rng: &mut R) -> Option<usize> {
    g.neighbors(v).iter().copied().choose(rng)
}

/// Adds an offspring of `parent` with duplication-style link inheritance.
/// Returns the offspring's slot.
pub fn sotea1_reproduce<R: Rng + ?Sized>(g: &mut Network, parent: usize, params: &Sotea1Params, rng: &mut R) -> usize {
    let inherited: Vec<usize> = g.neighbors(parent).iter().copied().collect();
    let child = g.add_node();
    g.add_edge(parent, child);
    for u in inherited {
        if rng.random::<f64>() < params.p_add {
            g.add_edge(child, u);
            if rng.random::<f64>() < params.p_remove {
                g.remove_edge(parent, u);
            }
        }
    }
    child
}

/// Adds an offspring of `parent` by splicing it into one of the parent's links.
pub fn cga_reproduce<R: Rng + ?Sized>(g: &mut Network, parent: usize, rng: &mut R) -> usize {
    let moved = random_neighbor(g, parent, rng);
    let child = g.add_node();
    if let Some(u) = moved {
        g.remove_edge(parent, u);
        g.add_edge(child, u);
    }
    g.add_edge(parent, child);
    child
}

/// `selected` fights its least fit neighbour (`fitness`: higher is better,
/// ties go to the lower slot). The selected node dies only when strictly
/// worse. The winner inherits the loser's links. Returns `(winner, loser)`.
pub fn compete(g: &mut Network, selected: usize, fitness: impl Fn(&Network, usize) -> f64) -> Result<(usize, usize)> {
    let nbrs: Vec<usize> = g.neighbors(selected).iter().copied().collect();
    if nbrs.is_empty() {
        return Err(Error::Topology(format!("node {selected} has no neighbour to compete with")));
    }
    let scored: Vec<(usize, f64)> = nbrs.iter().map(|&j| (j, fitness(g, j))).collect();
    let (opponent, f_opp) = scored.iter().copied().fold(scored[0], |w, c| if c.1 < w.1 { c } else { w });
    let f_sel = fitness(g, selected);
    let (winner, loser) = if f_sel < f_opp { (opponent, selected) } else { (selected, opponent) };
    absorb(g, winner, loser);
    Ok((winner, loser))
}

/// Moves every link of `loser` to `winner` and deletes `loser`.
pub fn absorb(g: &mut Network, winner: usize, loser: usize) {
    let links: Vec<usize> = g.neighbors(loser).iter().copied().filter(|&u| u != winner).collect();
    g.remove_node(loser);
    for u in links {
        g.add_edge(winner, u);
    }
}

/// Target degree for a node of global rank `rank` (1 = best) among `n`.
pub fn sotea2_kset(rank: usize, n: usize, params: &Sotea2Params) -> f64 {
    let frac = (n as f64 - rank as f64) / n as f64;
    params.k_min as f64 + (params.k_max as f64 - params.k_min as f64) * frac * frac
}

/// Two-step random walk from `n1`. Returns `(n2, n3)` unless stuck or back at `n1`.
pub fn two_step_walk<R: Rng + ?Sized>(g: &Network, n1: usize, rng: &mut R) -> Option<(usize, usize)> {
    let n2 = random_neighbor(g, n1, rng)?;
    let n3 = random_neighbor(g, n2, rng)?;
    (n3 != n1).then_some((n2, n3))
}

/// Which rewiring rules changed the graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewireOutcome {
    pub added: bool,
    pub removed: bool,
    pub transferred: bool,
}

/// Applies the add, remove and transfer rules to `n1` in that order.
/// `ranks[v]` is the global rank of slot `v` (1 = best) among `ranks.len()`.
pub fn sotea2_rewire<R: Rng + ?Sized>(
    g: &mut Network,
    n1: usize,
    ranks: &[usize],
    params: &Sotea2Params,
    rng: &mut R,
) -> RewireOutcome {
    let n = ranks.len();
    let kset = |v: usize| sotea2_kset(ranks[v], n, params);
    let below = |g: &Network, v: usize| (g.degree(v) as f64) < kset(v);
    let above = |g: &Network, v: usize| (g.degree(v) as f64) > kset(v);
    let mut out = RewireOutcome::default();

    if below(g, n1) {
        for _ in 0..params.walk_retries {
            if let Some((_, n3)) = two_step_walk(g, n1, rng) {
                if below(g, n3) && !g.has_edge(n1, n3) {
                    g.add_edge(n1, n3);
                    out.added = true;
                    break;
                }
            }
        }
    }

    if above(g, n1) {
        for _ in 0..params.walk_retries {
            if let Some((_, n3)) = two_step_walk(g, n1, rng) {
                if g.has_edge(n1, n3) && above(g, n3) {
                    g.remove_edge(n1, n3);
                    out.removed = true;
                    break;
                }
            }
        }
    }

    for _ in 0..params.walk_retries {
        let Some((n2, n3)) = two_step_walk(g, n1, rng) else { continue };
        if g.has_edge(n1, n3) || !below(g, n3) {
            continue;
        }
        let local = |g: &Network| {
            g.weighted_clustering(n1, ranks, n) + g.weighted_clustering(n2, ranks, n) + g.weighted_clustering(n3, ranks, n)
        };
        let before = local(g);
        g.remove_edge(n1, n2);
        g.add_edge(n1, n3);
        if local(g) > before {
            out.transferred = true;
            break;
        }
        g.remove_edge(n1, n3);
        g.add_edge(n1, n2);
    }
    out
}

/// Ring slots within distance `radius` of `i`, excluding `i`, nearest first.
pub fn ring_neighborhood(i: usize, n: usize, radius: usize) -> Result<Vec<usize>> {
    if radius == 0 || 2 * radius >= n {
        return Err(Error::Config(format!("cGA radius {radius} must satisfy 1 <= R < N/2 for N = {n}")));
    }
    let mut out = Vec::with_capacity(2 * radius);
    for d in 1..=radius {
        out.push((i + n - d) % n);
        out.push((i + d) % n);
    }
    Ok(out)
}
