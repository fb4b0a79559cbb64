//! Asexual structured populations with node birth and death.
//!
//! Each generation first adds `N` mutated copies of parents drawn from the
//! current members, then runs `N` competitions that each remove one node.

use rand::Rng as _;

use super::{Individual, Run, Sotea1Config, Structure, FitnessMode};
use crate::error::{Error, Result};
use crate::operators::{self, OperatorKind};
use crate::topology::rules::{compete, cga_reproduce, sotea1_reproduce, Sotea1Params};
use crate::topology::{epistatic_fitness, Network};

pub(super) fn run(r: &mut Run, s: &Sotea1Config) -> Result<()> {
    let n = r.cfg.population;
    let binary = r.problem.is_binary();
    let rate = s.flip_scale / r.specs.len() as f64;
    let params = Sotea1Params { p_add: s.p_add, p_remove: s.p_remove };
    let mut pop: Vec<Option<Individual>> = r.init_population(n)?.into_iter().map(Some).collect();
    let mut graph = match s.structure {
        Structure::Panmictic => Network::empty(n),
        _ => Network::ring(n)?,
    };
    for _ in 0..r.cfg.generations {
        for _ in 0..n {
            let parent_slot = r.rng.selection.random_range(0..n);
            let parent = pop[parent_slot].clone().ok_or(Error::EmptyPopulation)?;
            let (op, genes) = if binary {
                (None, operators::bit_flip(&parent.genes, rate, &mut r.rng.variation))
            } else {
                let op = OperatorKind::SinglePointMutation;
                (Some(op), operators::apply(op, &[&parent.genes], &r.specs, &r.cfg.operators, &mut r.rng.variation)?)
            };
            let child = r.breed_asexual(op, &parent, genes);
            let slot = match s.structure {
                Structure::Sotea => sotea1_reproduce(&mut graph, parent_slot, &params, &mut r.rng.topology),
                Structure::Cga => cga_reproduce(&mut graph, parent_slot, &mut r.rng.topology),
                Structure::Panmictic => graph.add_node(),
            };
            debug_assert_eq!(slot, pop.len());
            pop.push(Some(child));
        }
        let mut alive: Vec<usize> = graph.nodes().collect();
        for _ in 0..n {
            let keys: Vec<f64> = pop.iter().map(|m| m.as_ref().map_or(f64::INFINITY, Individual::scalar_key)).collect();
            let pick = r.rng.selection.random_range(0..alive.len());
            let selected = alive[pick];
            let loser = match s.structure {
                Structure::Panmictic => {
                    let mut other = r.rng.selection.random_range(0..alive.len() - 1);
                    if other >= pick {
                        other += 1;
                    }
                    let rival = alive[other];
                    let loser = if keys[selected] > keys[rival] { selected } else { rival };
                    graph.remove_node(loser);
                    loser
                }
                _ => {
                    let fitness = |g: &Network, v: usize| match s.fitness {
                        FitnessMode::Epistatic => epistatic_fitness(g, &keys, v).unwrap_or(0.0),
                        FitnessMode::Objective => -keys[v],
                    };
                    compete(&mut graph, selected, fitness)?.1
                }
            };
            pop[loser] = None;
            alive.retain(|&v| v != loser);
        }
        let (compacted, old) = graph.compact();
        graph = compacted;
        let mut next: Vec<Individual> = Vec::with_capacity(n);
        for o in old {
            next.push(pop[o].take().ok_or(Error::EmptyPopulation)?);
        }
        let network = (s.structure != Structure::Panmictic).then_some(&graph);
        r.end_generation(&next.iter().collect::<Vec<_>>(), network)?;
        pop = next.into_iter().map(Some).collect();
    }
    Ok(())
}
