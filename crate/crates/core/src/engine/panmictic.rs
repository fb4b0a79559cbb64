//! Unstructured populations: steady state, generational and crowding updates.

use rand::seq::SliceRandom;

use super::{best_first, Individual, PanmicticParams, PanmicticUpdate, Run};
use crate::error::Result;
use crate::genome::normalized_euclidean;
use crate::selection::{advance_generation, Aged, SurvivalParams, UpdatePolicy};

pub(super) fn run(r: &mut Run, p: &PanmicticParams) -> Result<()> {
    let n = r.cfg.population;
    if p.update == PanmicticUpdate::Crowding {
        return crowding(r);
    }
    let policy = match p.update {
        PanmicticUpdate::Generational => UpdatePolicy::generational(n),
        _ => UpdatePolicy::steady_state(n),
    };
    let params = SurvivalParams { tournament_size: p.tournament_size, exp_c: p.exp_c };
    let pf = r.constrained.then_some(r.cfg.constraints.pf);
    let mut pop: Vec<Aged<Individual>> =
        r.init_population(policy.mu)?.into_iter().map(|item| Aged { item, age: 0 }).collect();
    for _ in 0..r.cfg.generations {
        let members: Vec<Individual> = pop.iter().map(|a| a.item.clone()).collect();
        r.begin_generation(&members.iter().collect::<Vec<_>>())?;
        let mut offspring = Vec::with_capacity(policy.lambda);
        for _ in 0..policy.lambda {
            let op = r.choose_operator();
            let mut idx = r.random_members(members.len(), op.arity());
            best_first(&members, &mut idx);
            let parents: Vec<&Individual> = idx.iter().map(|&i| &members[i]).collect();
            offspring.push(r.breed(op, &parents)?);
        }
        pop = advance_generation(&policy, p.selection, &params, &pop, offspring, |i| (i.cost, i.phi), pf, &mut r.rng.selection)?;
        let view: Vec<&Individual> = pop.iter().map(|a| &a.item).collect();
        r.end_generation(&view, None)?;
    }
    Ok(())
}

/// Deterministic crowding: random pairs each produce two offspring, and
/// each offspring replaces the more similar parent when strictly better.
fn crowding(r: &mut Run) -> Result<()> {
    let n = r.cfg.population;
    let mut pop = r.init_population(n)?;
    for _ in 0..r.cfg.generations {
        r.begin_generation(&pop.iter().collect::<Vec<_>>())?;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r.rng.selection);
        let snapshot = pop.clone();
        for pair in order.chunks(2) {
            let (a, b) = match *pair {
                [a, b] => (a, b),
                _ => continue,
            };
            let mut kids = Vec::with_capacity(2);
            for first in [a, b] {
                let op = r.choose_operator();
                let mut idx = vec![first, if first == a { b } else { a }];
                if op.arity() > 2 {
                    idx.extend(r.random_members(n, op.arity() - 2));
                }
                let mut sorted = idx.clone();
                best_first(&snapshot, &mut sorted);
                let parents: Vec<&Individual> = sorted.iter().map(|&i| &snapshot[i]).collect();
                kids.push(r.breed(op, &parents)?);
            }
            let c2 = kids.pop().expect("two offspring");
            let c1 = kids.pop().expect("two offspring");
            let d = |x: &Individual, y: &Individual| normalized_euclidean(&x.genes, &y.genes, &r.specs).unwrap_or(f64::INFINITY);
            let straight = d(&snapshot[a], &c1) + d(&snapshot[b], &c2);
            let crossed = d(&snapshot[a], &c2) + d(&snapshot[b], &c1);
            let (for_a, for_b) = if straight <= crossed { (c1, c2) } else { (c2, c1) };
            if for_a.better_than(&pop[a]) {
                pop[a] = for_a;
            }
            if for_b.better_than(&pop[b]) {
                pop[b] = for_b;
            }
        }
        r.end_generation(&pop.iter().collect::<Vec<_>>(), None)?;
    }
    Ok(())
}
