//! Synchronous structured populations: the static-ring cGA and SOTEA II.
//!
//! Every node acts once per generation as first parent. Its offspring is
//! written to a temporary buffer and replaces the node at the end of the
//! generation when at least as good.

use rand::seq::IteratorRandom;
use rand::Rng as _;

use super::{best_first, order_of, Individual, Run};
use crate::error::Result;
use crate::selection::{rank_positions, ranking_select, stochastic_rank, RankingScheme};
use crate::topology::rules::{ring_neighborhood, sotea2_rewire, two_step_walk, Sotea2Params};
use crate::topology::Network;

pub(super) enum Mode {
    Ring(usize),
    Sotea2(Sotea2Params),
}

const LINEAR_RANKING: RankingScheme = RankingScheme::Linear { eta_plus: 1.0, eta_minus: 0.0 };

pub(super) fn run(r: &mut Run, mode: Mode) -> Result<()> {
    let n = r.cfg.population;
    let mut pop = r.init_population(n)?;
    let mut graph = Network::ring(n)?;
    for _ in 0..r.cfg.generations {
        r.begin_generation(&pop.iter().collect::<Vec<_>>())?;
        let ranks: Vec<usize> = match mode {
            Mode::Sotea2(_) => rank_positions(&order_of(&pop.iter().collect::<Vec<_>>())).iter().map(|p| p + 1).collect(),
            Mode::Ring(_) => Vec::new(),
        };
        let mut offspring = Vec::with_capacity(n);
        for n1 in 0..n {
            let (n2, pool) = match mode {
                Mode::Ring(radius) => {
                    let hood = ring_neighborhood(n1, n, radius)?;
                    let keys: Vec<f64> = {
                        let view: Vec<&Individual> = hood.iter().map(|&i| &pop[i]).collect();
                        rank_positions(&order_of(&view)).iter().map(|&p| p as f64).collect()
                    };
                    let pick = hood[ranking_select(&keys, LINEAR_RANKING, &mut r.rng.selection)?];
                    (pick, hood)
                }
                Mode::Sotea2(params) => {
                    sotea2_rewire(&mut graph, n1, &ranks, &params, &mut r.rng.topology);
                    let n2 = match two_step_walk(&graph, n1, &mut r.rng.topology) {
                        Some((_, n3)) => n3,
                        None => graph.neighbors(n1).iter().copied().choose(&mut r.rng.topology).unwrap_or(n1),
                    };
                    let hood: std::collections::BTreeSet<usize> =
                        graph.neighbors(n1).iter().chain(graph.neighbors(n2)).copied().filter(|&v| v != n1).collect();
                    (n2, hood.into_iter().collect())
                }
            };
            let op = r.choose_operator();
            let mut idx = vec![n1, n2];
            if op.arity() > 2 {
                let need = op.arity() - 2;
                let mut extra: Vec<usize> = pool.into_iter().filter(|&v| v != n1 && v != n2).collect();
                if extra.len() >= need {
                    let chosen = rand::seq::index::sample(&mut r.rng.selection, extra.len(), need);
                    idx.extend(chosen.iter().map(|i| extra[i]));
                } else {
                    if let Mode::Ring(radius) = mode {
                        // Widen the ring one shell at a time.
                        let mut d = radius;
                        while extra.len() < need && 2 * d < n {
                            d += 1;
                            let mut shell: Vec<usize> = [(n1 + d) % n, (n1 + n - d % n) % n]
                                .into_iter()
                                .filter(|&v| v != n1 && v != n2 && !extra.contains(&v))
                                .collect();
                            shell.dedup();
                            while extra.len() < need && !shell.is_empty() {
                                let k = r.rng.selection.random_range(0..shell.len());
                                extra.push(shell.swap_remove(k));
                            }
                        }
                    }
                    while extra.len() < need {
                        extra.push(r.rng.selection.random_range(0..n));
                    }
                    idx.extend(extra);
                }
            }
            best_first(&pop, &mut idx);
            let parents: Vec<&Individual> = idx.iter().map(|&i| &pop[i]).collect();
            offspring.push(r.breed(op, &parents)?);
        }
        let replace: Vec<bool> = if r.constrained {
            let all: Vec<&Individual> = pop.iter().chain(offspring.iter()).collect();
            let costs: Vec<f64> = all.iter().map(|i| i.cost).collect();
            let phis: Vec<f64> = all.iter().map(|i| i.phi).collect();
            let order = stochastic_rank(&costs, &phis, r.cfg.constraints.pf, all.len(), &mut r.rng.selection)?;
            let pos = rank_positions(&order);
            (0..n).map(|i| pos[n + i] < pos[i]).collect()
        } else {
            (0..n).map(|i| offspring[i].cost <= pop[i].cost).collect()
        };
        for (i, child) in offspring.into_iter().enumerate() {
            if replace[i] {
                pop[i] = child;
            }
        }
        r.end_generation(&pop.iter().collect::<Vec<_>>(), Some(&graph))?;
    }
    Ok(())
}
