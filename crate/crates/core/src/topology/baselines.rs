//! Reference network growth models used for metric comparisons.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Network;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Baseline {
    /// Preferential attachment with `m` links per arrival, seeded by a
    /// complete graph on `m + 1` nodes.
    BarabasiAlbert { m: usize },
    /// Duplication and divergence: copied links survive with probability
    /// `1 - delta`, new random links appear with probability `alpha_scale / size`.
    DuplicationDivergence { delta: f64, alpha_scale: f64 },
    /// Static fitness model with uniform node fitness on `[0, 1]`, so the
    /// link probability is `x_i x_j`.
    Fitness,
    ErdosRenyi { p: f64 },
}

impl Baseline {
    pub fn dd_default() -> Self {
        Baseline::DuplicationDivergence { delta: 0.53, alpha_scale: 0.06 }
    }
}

pub fn generate<R: Rng + ?Sized>(kind: Baseline, n: usize, rng: &mut R) -> Result<Network> {
    match kind {
        Baseline::BarabasiAlbert { m } => barabasi_albert(n, m, rng),
        Baseline::DuplicationDivergence { delta, alpha_scale } => duplication_divergence(n, delta, alpha_scale, rng),
        Baseline::Fitness => {
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let mut g = Network::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < x[i] * x[j] {
                        g.add_edge(i, j);
                    }
                }
            }
            Ok(g)
        }
        Baseline::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
            }
            let mut g = Network::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if p >= 1.0 || rng.random::<f64>() < p {
                        g.add_edge(i, j);
                    }
                }
            }
            Ok(g)
        }
    }
}

fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Network> {
    if m == 0 || n < m + 1 {
        return Err(Error::param(format!("BA needs m >= 1 and n >= m + 1, got m = {m}, n = {n}")));
    }
    let mut g = Network::complete(m + 1);
    // Each edge endpoint appears once, so uniform draws are degree-proportional.
    let mut ends: Vec<usize> = g.edges().into_iter().flat_map(|(u, v)| [u, v]).collect();
    if ends.is_empty() {
        ends.push(0);
    }
    for _ in m + 1..n {
        let v = g.add_node();
        let mut targets = Vec::with_capacity(m);
        while targets.len() < m {
            let t = ends[rng.random_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            g.add_edge(v, t);
            ends.push(v);
            ends.push(t);
        }
    }
    Ok(g)
}

fn duplication_divergence<R: Rng + ?Sized>(n: usize, delta: f64, alpha_scale: f64, rng: &mut R) -> Result<Network> {
    if !(0.0..=1.0).contains(&delta) || alpha_scale < 0.0 || n < 2 {
        return Err(Error::param("invalid duplication-divergence parameters"));
    }
    let mut g = Network::from_edges(2, &[(0, 1)])?;
    while g.capacity() < n {
        let size = g.capacity();
        let src = rng.random_range(0..size);
        let copied: Vec<usize> = g.neighbors(src).iter().copied().collect();
        let v = g.add_node();
        for u in copied {
            if rng.random::<f64>() >= delta {
                g.add_edge(v, u);
            }
        }
        let alpha = alpha_scale / size as f64;
        for u in 0..size {
            if rng.random::<f64>() < alpha {
                g.add_edge(v, u);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn ba_tree_and_er_complete() {
        let mut rng = seeded(1);
        let g = generate(Baseline::BarabasiAlbert { m: 1 }, 200, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 199);
        assert!(g.is_connected());
        let g = generate(Baseline::ErdosRenyi { p: 1.0 }, 12, &mut rng).unwrap();
        assert_eq!(g, Network::complete(12));
    }

    #[test]
    fn dd_reaches_size() {
        let mut rng = seeded(2);
        let g = generate(Baseline::dd_default(), 300, &mut rng).unwrap();
        assert_eq!(g.capacity(), 300);
        g.check_invariants().unwrap();
    }
}
