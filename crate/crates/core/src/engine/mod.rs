//! Run orchestration.
//!
//! [`run`] wires a problem, the operator library, survival selection, the
//! operator controller, ETV tracking and (for structured populations) the
//! interaction network into one seeded run and collects its telemetry.
//! Every concern draws from its own random stream, so telemetry switches
//! never alter the search trajectory.

pub mod batch;
mod cellular;
pub mod config;
pub mod output;
mod panmictic;
mod sotea1;

use rand::Rng as _;

pub use config::*;

use crate::adaptation::{Controller, Credit, PopulationContext};
use crate::error::{Error, Result};
use crate::etv::oracle::GenealogyOracle;
use crate::etv::{dominant_parent, EtvArchive, EtvResult, EventId, PassStats};
use crate::genome::{random_genome, GeneSpec};
use crate::objectives::{Direction, Problem};
use crate::operators::{self, OperatorKind};
use crate::rng::RunStreams;
use crate::selection::feasibility_order;
use crate::topology::{diversity, topology_metrics, Network, TopologyMetrics};

/// Penalty base for infeasible individuals when a single scalar is needed.
pub const INFEASIBLE_OFFSET: f64 = 1e12;

/// Maximization-oriented measurement used by the fitness interpretations.
pub fn measurement(cost: f64, phi: f64) -> f64 {
    if phi > 0.0 {
        -(INFEASIBLE_OFFSET + phi)
    } else {
        -cost
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Individual {
    pub genes: Vec<f64>,
    /// Raw objective.
    pub f: f64,
    /// Objective oriented for minimization.
    pub cost: f64,
    pub phi: f64,
    pub history: Vec<EventId>,
}

impl Individual {
    fn measure(&self) -> f64 {
        measurement(self.cost, self.phi)
    }

    /// Lower is better: feasibility first, then cost.
    fn scalar_key(&self) -> f64 {
        if self.phi > 0.0 {
            INFEASIBLE_OFFSET + self.phi
        } else {
            self.cost
        }
    }

    fn better_than(&self, other: &Individual) -> bool {
        self.phi < other.phi || (self.phi == other.phi && self.cost < other.cost)
    }
}

/// Deterministic best-first order of a population.
fn order_of(pop: &[&Individual]) -> Vec<usize> {
    let costs: Vec<f64> = pop.iter().map(|i| i.cost).collect();
    let phis: Vec<f64> = pop.iter().map(|i| i.phi).collect();
    feasibility_order(&costs, &phis)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: u64,
    pub evaluations: u64,
    /// Best feasible objective found so far.
    pub best_f: Option<f64>,
    /// Best feasible objective in the current population.
    pub pop_best_f: Option<f64>,
    pub feasible: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestSolution {
    pub f: f64,
    pub phi: f64,
    pub genes: Vec<f64>,
}

impl BestSolution {
    pub fn feasible(&self) -> bool {
        self.phi == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiversityRecord {
    pub generation: u64,
    pub all: f64,
    pub top20: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub config: RunConfig,
    pub problem: String,
    pub direction: Direction,
    pub history: Vec<GenerationRecord>,
    /// Best individual ever evaluated; feasible solutions beat infeasible ones.
    pub best: BestSolution,
    pub evaluations: u64,
    /// Operator probabilities after each generation.
    pub probabilities: Vec<(u64, Vec<f64>)>,
    /// Finalized ETVs, including those censored at the end, by serial.
    pub etv: Vec<EtvResult>,
    pub etv_stats: Vec<(u64, PassStats)>,
    /// Smallest list capacity that would have kept every observation, per finalized event.
    pub etv_capacity: Vec<usize>,
    pub oracle_etv: Option<Vec<EtvResult>>,
    pub topology: Vec<(u64, TopologyMetrics)>,
    pub edges: Vec<(u64, String)>,
    pub diversity: Vec<DiversityRecord>,
}

impl RunResult {
    /// Best feasible objective, or `None` when no feasible solution was found.
    pub fn best_feasible(&self) -> Option<f64> {
        self.best.feasible().then_some(self.best.f)
    }
}

pub type Observer<'a> = Box<dyn FnMut(&GenerationRecord) + 'a>;

pub(crate) struct Run<'a> {
    cfg: &'a RunConfig,
    problem: Problem,
    specs: Vec<GeneSpec>,
    direction: Direction,
    constrained: bool,
    rng: RunStreams,
    controller: Controller,
    archive: Option<EtvArchive>,
    oracle: Option<GenealogyOracle>,
    ctx: Option<PopulationContext>,
    gen: u64,
    evaluations: u64,
    best: Option<Individual>,
    best_feasible: Option<f64>,
    out_history: Vec<GenerationRecord>,
    out_probabilities: Vec<(u64, Vec<f64>)>,
    out_etv: Vec<EtvResult>,
    out_etv_stats: Vec<(u64, PassStats)>,
    out_topology: Vec<(u64, TopologyMetrics)>,
    out_edges: Vec<(u64, String)>,
    out_diversity: Vec<DiversityRecord>,
    observer: Option<Observer<'a>>,
}

impl<'a> Run<'a> {
    fn new(cfg: &'a RunConfig, problem: Problem, observer: Option<Observer<'a>>) -> Result<Self> {
        let specs = problem.gene_specs();
        let direction = problem.direction();
        let constrained = problem.constraint_count() > 0;
        let controller = Controller::for_design(cfg.design(), cfg.adaptation.params())?;
        let tracks = cfg.tracks_etv();
        let archive = if tracks { Some(EtvArchive::new(cfg.etv.config())?) } else { None };
        let oracle = if cfg.etv.oracle { Some(GenealogyOracle::new(&cfg.etv.config())?) } else { None };
        Ok(Run {
            cfg,
            problem,
            specs,
            direction,
            constrained,
            rng: RunStreams::new(cfg.seed),
            controller,
            archive,
            oracle,
            ctx: None,
            gen: 0,
            evaluations: 0,
            best: None,
            best_feasible: None,
            out_history: Vec::new(),
            out_probabilities: Vec::new(),
            out_etv: Vec::new(),
            out_etv_stats: Vec::new(),
            out_topology: Vec::new(),
            out_edges: Vec::new(),
            out_diversity: Vec::new(),
            observer,
        })
    }

    fn evaluate(&mut self, genes: Vec<f64>) -> Individual {
        let e = self.problem.evaluate_unchecked(&genes);
        self.evaluations += 1;
        let ind = Individual { genes, f: e.f, cost: self.direction.sign() * e.f, phi: e.phi, history: Vec::new() };
        if ind.phi == 0.0 && self.best_feasible.map_or(true, |b| self.direction.better(ind.f, b)) {
            self.best_feasible = Some(ind.f);
        }
        if self.best.as_ref().map_or(true, |b| ind.better_than(b)) {
            self.best = Some(Individual { history: Vec::new(), ..ind.clone() });
        }
        ind
    }

    fn init_population(&mut self, n: usize) -> Result<Vec<Individual>> {
        let mut pop = Vec::with_capacity(n);
        for _ in 0..n {
            let g = random_genome(&self.specs, &mut self.rng.init)?;
            pop.push(self.evaluate(g));
        }
        Ok(pop)
    }

    fn begin_generation(&mut self, pop: &[&Individual]) -> Result<()> {
        if matches!(self.controller.credit(), Credit::Fitness(_)) {
            let m: Vec<f64> = pop.iter().map(|i| i.measure()).collect();
            self.ctx = Some(PopulationContext::new(&m)?);
        }
        Ok(())
    }

    fn choose_operator(&mut self) -> OperatorKind {
        let i = operators::sample_index(self.controller.probabilities(), &mut self.rng.variation);
        OperatorKind::from_index(i).unwrap_or(OperatorKind::SinglePointMutation)
    }

    /// Applies `op` to best-first `parents` and evaluates the offspring.
    fn breed(&mut self, op: OperatorKind, parents: &[&Individual]) -> Result<Individual> {
        let used = &parents[..op.arity().min(parents.len())];
        let genes: Vec<&[f64]> = used.iter().map(|p| p.genes.as_slice()).collect();
        let child = operators::apply(op, &genes, &self.specs, &self.cfg.operators, &mut self.rng.variation)?;
        let dom = if self.archive.is_some() { dominant_parent(&child, &genes, &self.specs)? } else { 0 };
        let mut ind = self.evaluate(child);
        if let (Some(ctx), Credit::Fitness(_)) = (&self.ctx, self.controller.credit()) {
            self.controller.record_offspring(op.index(), ind.measure(), used[0].measure(), ctx);
        }
        ind.history = self.etv_birth(Some(op), used[dom]);
        Ok(ind)
    }

    /// Evaluates an asexual offspring of `parent`.
    fn breed_asexual(&mut self, op: Option<OperatorKind>, parent: &Individual, genes: Vec<f64>) -> Individual {
        let mut ind = self.evaluate(genes);
        ind.history = self.etv_birth(op, parent);
        ind
    }

    fn etv_birth(&mut self, op: Option<OperatorKind>, parent: &Individual) -> Vec<EventId> {
        let Some(archive) = self.archive.as_mut() else { return Vec::new() };
        let (id, list) = archive.record_birth(op, Some(&parent.history), self.gen, &mut self.rng.etv);
        if let Some(oracle) = self.oracle.as_mut() {
            let link = if list.len() >= 2 { parent.history.last().copied() } else { None };
            // Oracle overflow only disables cross-checking.
            if oracle.record_birth(id, link, op, self.gen).is_err() {
                self.oracle = None;
            }
        }
        list
    }

    /// Advances the generation counter and runs per-generation bookkeeping.
    fn end_generation(&mut self, pop: &[&Individual], network: Option<&Network>) -> Result<()> {
        self.gen += 1;
        let gen = self.gen;
        if let Some(archive) = self.archive.as_mut() {
            let lists: Vec<&[EventId]> = pop.iter().map(|i| i.history.as_slice()).collect();
            let (done, stats) = archive.generation_pass(&lists, gen);
            self.controller.record_etvs(&done);
            self.out_etv.extend(done);
            self.out_etv_stats.push((gen, stats));
            if let Some(oracle) = self.oracle.as_mut() {
                let members: Vec<Option<EventId>> = pop.iter().map(|i| i.history.last().copied()).collect();
                oracle.observe(&members, gen);
            }
        }
        self.controller.end_generation(gen);
        let tel = &self.cfg.telemetry;
        if tel.probabilities {
            self.out_probabilities.push((gen, self.controller.probabilities().to_vec()));
        }
        if let Some(g) = network {
            if tel.topology_every > 0 && gen % tel.topology_every == 0 {
                self.out_topology.push((gen, topology_metrics(g)?));
            }
            if tel.edges_every > 0 && gen % tel.edges_every == 0 {
                self.out_edges.push((gen, g.edge_list()));
            }
        }
        if tel.diversity_every > 0 && gen % tel.diversity_every == 0 && self.problem.is_binary() && pop.len() >= 2 {
            let order = order_of(pop);
            let all: Vec<&[f64]> = pop.iter().map(|i| i.genes.as_slice()).collect();
            let top_n = ((pop.len() as f64 * 0.2).round() as usize).clamp(2, pop.len());
            let top: Vec<&[f64]> = order[..top_n].iter().map(|&i| pop[i].genes.as_slice()).collect();
            self.out_diversity.push(DiversityRecord {
                generation: gen,
                all: diversity(&all, &self.specs)?,
                top20: diversity(&top, &self.specs)?,
            });
        }
        let pop_best_f = pop
            .iter()
            .filter(|i| i.phi == 0.0)
            .map(|i| i.f)
            .fold(None, |b: Option<f64>, f| Some(b.map_or(f, |b| if self.direction.better(f, b) { f } else { b })));
        let rec = GenerationRecord {
            generation: gen,
            evaluations: self.evaluations,
            best_f: self.best_feasible,
            pop_best_f,
            feasible: pop.iter().filter(|i| i.phi == 0.0).count(),
        };
        if let Some(obs) = self.observer.as_mut() {
            obs(&rec);
        }
        self.out_history.push(rec);
        Ok(())
    }

    fn finish(mut self) -> Result<RunResult> {
        let gen = self.gen;
        let mut etv = std::mem::take(&mut self.out_etv);
        let mut etv_capacity = Vec::new();
        if let Some(mut archive) = self.archive.take() {
            etv.extend(archive.finalize_all(gen));
            let censored: std::collections::HashSet<EventId> =
                etv.iter().filter(|r| r.censored).map(|r| r.serial).collect();
            etv_capacity =
                archive.required_capacities().filter(|(id, _)| !censored.contains(id)).map(|(_, c)| c).collect();
        }
        etv.sort_by_key(|r| r.serial);
        let oracle_etv = self.oracle.take().map(|o| o.finish(gen));
        let best = self.best.take().ok_or(Error::EmptyPopulation)?;
        Ok(RunResult {
            config: self.cfg.clone(),
            problem: self.problem.name(),
            direction: self.direction,
            history: self.out_history,
            best: BestSolution { f: best.f, phi: best.phi, genes: best.genes },
            evaluations: self.evaluations,
            probabilities: self.out_probabilities,
            etv,
            etv_stats: self.out_etv_stats,
            etv_capacity,
            oracle_etv,
            topology: self.out_topology,
            edges: self.out_edges,
            diversity: self.out_diversity,
        })
    }

    /// Picks `k` distinct members uniformly (with replacement when the
    /// population is smaller than `k`).
    fn random_members(&mut self, n: usize, k: usize) -> Vec<usize> {
        if n >= k {
            rand::seq::index::sample(&mut self.rng.selection, n, k).into_vec()
        } else {
            (0..k).map(|_| self.rng.selection.random_range(0..n)).collect()
        }
    }
}

/// Sorts parent indices best first.
fn best_first(pop: &[Individual], idx: &mut [usize]) {
    idx.sort_by(|&a, &b| {
        pop[a].phi.total_cmp(&pop[b].phi).then(pop[a].cost.total_cmp(&pop[b].cost)).then(a.cmp(&b))
    });
}

/// Executes one run.
pub fn run(config: &RunConfig) -> Result<RunResult> {
    run_with_observer(config, None)
}

/// Executes one run, reporting every generation to `observer`.
pub fn run_with_observer<'a>(config: &'a RunConfig, observer: Option<Observer<'a>>) -> Result<RunResult> {
    let problem = config.validate()?;
    let mut r = Run::new(config, problem, observer)?;
    match config.algorithm {
        Algorithm::Panmictic(p) => panmictic::run(&mut r, &p)?,
        Algorithm::Cga(c) => cellular::run(&mut r, cellular::Mode::Ring(c.radius))?,
        Algorithm::Sotea2(s) => cellular::run(&mut r, cellular::Mode::Sotea2(s))?,
        Algorithm::Sotea1(s) => sotea1::run(&mut r, &s)?,
    }
    r.finish()
}
