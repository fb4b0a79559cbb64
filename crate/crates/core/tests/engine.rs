use evonet::adaptation::Design;
use evonet::analysis::ranking::median;
use evonet::engine::batch::run_batch;
use evonet::engine::output::write_run;
use evonet::engine::{
    run, Algorithm, AdaptationConfig, EtvSettings, PanmicticParams, PanmicticUpdate, RunConfig, RunResult,
};
use evonet::objectives::{Direction, Problem};
use evonet::selection::SurvivalScheme;

const FAMILIES: [&str; 4] = ["panmictic", "cga", "sotea1", "sotea2"];

fn cfg(problem: &str, family: &str, n: usize, gens: u64, seed: u64) -> RunConfig {
    RunConfig {
        problem: problem.into(),
        seed,
        population: n,
        generations: gens,
        algorithm: Algorithm::from_family(family).unwrap(),
        ..Default::default()
    }
}

fn improves(direction: Direction, new: f64, old: f64) -> bool {
    match direction {
        Direction::Minimize => new <= old,
        Direction::Maximize => new >= old,
    }
}

fn check_history(r: &RunResult) {
    let mut prev_evals = 0;
    let mut prev_best: Option<f64> = None;
    for (i, h) in r.history.iter().enumerate() {
        assert_eq!(h.generation, i as u64 + 1);
        assert!(h.evaluations > prev_evals);
        prev_evals = h.evaluations;
        if let (Some(b), Some(p)) = (h.best_f, prev_best) {
            assert!(improves(r.direction, b, p), "best-so-far worsened: {p} -> {b}");
        }
        assert!(prev_best.is_none() || h.best_f.is_some());
        if let (Some(b), Some(pb)) = (h.best_f, h.pop_best_f) {
            assert!(improves(r.direction, b, pb));
        }
        prev_best = h.best_f;
    }
    assert_eq!(r.history.last().map(|h| h.evaluations), Some(r.evaluations));
    assert_eq!(r.history.last().and_then(|h| h.best_f), r.best_feasible());
}

#[test]
fn every_family_is_deterministic_and_seed_sensitive() {
    for family in FAMILIES {
        for problem in ["rastrigin:n=6", "pressure_vessel", "nk:N=24,K=2,seed=4"] {
            let c = cfg(problem, family, 16, 40, 3);
            let a = run(&c).unwrap();
            let b = run(&c).unwrap();
            assert_eq!(a, b, "{family} {problem}");
            check_history(&a);
            let other = run(&RunConfig { seed: 4, ..c.clone() }).unwrap();
            assert_ne!(a.best.genes, other.best.genes, "{family} {problem}");
        }
    }
}

#[test]
fn evaluation_accounting() {
    let (n, g) = (20usize, 30u64);
    for family in FAMILIES {
        let r = run(&cfg("quadratic", family, n, g, 1)).unwrap();
        assert_eq!(r.evaluations, (n as u64) * (g + 1), "{family}");
        assert_eq!(r.history.len(), g as usize);
    }
}

#[test]
fn reported_best_reevaluates() {
    for family in FAMILIES {
        let r = run(&cfg("welded_beam", family, 20, 60, 9)).unwrap();
        let p = Problem::from_name("welded_beam").unwrap();
        let ev = p.evaluate(&r.best.genes).unwrap();
        assert_eq!(ev.f, r.best.f);
        assert_eq!(ev.phi, r.best.phi);
        for (spec, &x) in p.gene_specs().iter().zip(&r.best.genes) {
            assert!(x >= spec.lower && x <= spec.upper);
        }
    }
}

#[test]
fn maximization_problems_report_raw_objective() {
    let r = run(&cfg("nk:N=20,K=3,seed=1", "panmictic", 20, 50, 2)).unwrap();
    assert_eq!(r.direction, Direction::Maximize);
    assert!((0.0..=1.0).contains(&r.best.f));
    assert!(!r.diversity.is_empty());
    check_history(&r);
}

#[test]
fn selection_and_update_variants_run() {
    let schemes = [
        SurvivalScheme::Tournament,
        SurvivalScheme::Truncation,
        SurvivalScheme::Random,
        SurvivalScheme::LinearRank,
        SurvivalScheme::ExponentialRank,
        SurvivalScheme::ModifiedTournament,
    ];
    for update in [PanmicticUpdate::SteadyState, PanmicticUpdate::Generational, PanmicticUpdate::Crowding] {
        for selection in schemes {
            let algorithm = Algorithm::Panmictic(PanmicticParams { update, selection, ..Default::default() });
            let c = RunConfig { algorithm, etv: EtvSettings { enabled: true, oracle: true, ..Default::default() }, ..cfg("ackley:n=5", "panmictic", 14, 30, 5) };
            let r = run(&c).unwrap();
            check_history(&r);
            assert_eq!(r.oracle_etv.as_ref(), Some(&r.etv), "{update:?} {selection:?}");
        }
    }
}

#[test]
fn adaptive_designs_keep_probability_floor() {
    for design in Design::TABLE {
        let c = RunConfig {
            adaptation: AdaptationConfig { design: Some(design), ..Default::default() },
            ..cfg("griewangk", "panmictic", 20, 60, 2)
        };
        let r = run(&c).unwrap();
        assert_eq!(r.probabilities.len(), 60);
        for (_, p) in &r.probabilities {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        if design.credit() != evonet::adaptation::Credit::Static {
            let (_, last) = r.probabilities.last().unwrap();
            assert!(last.iter().all(|&v| v >= 0.02 - 1e-12), "{}", design.name());
        }
    }
}

#[test]
fn structured_runs_record_topology() {
    let mut c = cfg("rastrigin:n=5", "sotea2", 30, 100, 1);
    c.telemetry.topology_every = 25;
    c.telemetry.edges_every = 50;
    let r = run(&c).unwrap();
    assert_eq!(r.topology.iter().map(|(g, _)| *g).collect::<Vec<_>>(), vec![25, 50, 75, 100]);
    assert!(r.topology.iter().all(|(_, m)| m.nodes == 30 && m.connected));
    assert_eq!(r.edges.len(), 2);
}

#[test]
fn static_ops10_solves_quadratic() {
    let finals: Vec<f64> = (1..=20u64)
        .map(|seed| run(&RunConfig { seed, ..Default::default() }).unwrap().best.f)
        .collect();
    let m = median(&finals).unwrap();
    assert!(m < 1e-6, "median {m}");
}

#[test]
fn batch_is_independent_of_worker_count() {
    let configs = vec![cfg("rastrigin:n=4", "panmictic", 12, 20, 0), cfg("spring", "cga", 12, 20, 0)];
    let seeds = [1, 2, 3];
    let serial = run_batch(&configs, &seeds, 1).unwrap();
    let parallel = run_batch(&configs, &seeds, 3).unwrap();
    assert_eq!(serial.len(), 6);
    for (a, b) in serial.iter().zip(&parallel) {
        assert_eq!((a.config_index, a.seed), (b.config_index, b.seed));
        assert_eq!(a.result.as_ref().unwrap(), b.result.as_ref().unwrap());
    }
    assert!(run_batch(&[], &seeds, 1).is_err());
}

#[test]
fn config_round_trips_and_validates() {
    let mut c = cfg("heat_exchanger", "sotea1", 25, 10, 77);
    c.adaptation.design = Some(Design::EtvOutlier);
    c.etv.enabled = true;
    let back = RunConfig::from_toml(&c.to_toml()).unwrap();
    assert_eq!(back, c);
    assert!(RunConfig::from_toml("population = 10\nbogus = 1").is_err());
    assert!(RunConfig { population: 1, ..c.clone() }.validate().is_err());
    assert!(RunConfig { problem: "nope".into(), ..c.clone() }.validate().is_err());
    assert!(run(&RunConfig { problem: "nope".into(), ..c }).is_err());
    let cga = cfg("quadratic", "cga", 2, 10, 1);
    assert!(cga.validate().is_err());
}

#[test]
fn written_run_reloads() {
    let mut c = cfg("rosenbrock", "cga", 16, 30, 5);
    c.etv.enabled = true;
    let r = run(&c).unwrap();
    let dir = std::env::temp_dir().join(format!("evonet-engine-{}", std::process::id()));
    write_run(&dir, &r).unwrap();
    let text = std::fs::read_to_string(dir.join("config.toml")).unwrap();
    assert_eq!(RunConfig::from_toml(&text).unwrap(), c);
    let runs = std::fs::read_to_string(dir.join("runs.csv")).unwrap();
    assert_eq!(runs.lines().count(), 31);
    assert!(run(&RunConfig::from_toml(&text).unwrap()).unwrap() == r);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ring_lineages_stay_local() {
    // Parents lie within two cells on an R = 1 ring, so a lineage tracked for
    // t_obs - 1 generations of descent spans at most 4 (t_obs - 1) + 1 cells.
    let t_obs = 5;
    let mut c = cfg("hyper_ellipsoid", "cga", 100, 2000, 2);
    c.adaptation.design = Some(Design::StaticOps10);
    c.etv = EtvSettings { enabled: true, t_obs, ..Default::default() };
    let r = run(&c).unwrap();
    let largest = r.etv.iter().map(|e| e.size).max().unwrap();
    assert!(largest as usize <= 4 * (t_obs - 1) + 1, "{largest}");
    assert!(largest > 1);
}
