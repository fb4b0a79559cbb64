//! Writes run telemetry to a directory of CSV files.

use std::fs;
use std::path::Path;

use super::RunResult;
use crate::error::Result;
use crate::operators::OperatorKind;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_else(|| "infeasible".into())
}

fn slope(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes every telemetry stream of `r` into `dir`, creating it if needed.
pub fn write_run(dir: &Path, r: &RunResult) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("config.toml"), r.config.to_toml())?;
    fs::write(dir.join("version.txt"), format!("evonet {VERSION}\n"))?;

    let mut w = csv::Writer::from_path(dir.join("runs.csv"))?;
    w.write_record(["generation", "evaluations", "best_f", "pop_best_f", "feasible"])?;
    for h in &r.history {
        w.write_record([
            h.generation.to_string(),
            h.evaluations.to_string(),
            opt(h.best_f),
            opt(h.pop_best_f),
            h.feasible.to_string(),
        ])?;
    }
    w.flush()?;

    if !r.probabilities.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("probabilities.csv"))?;
        let mut header = vec!["generation".to_string()];
        header.extend(OperatorKind::ALL.iter().map(|k| k.name().to_string()));
        w.write_record(&header)?;
        for (g, p) in &r.probabilities {
            let mut row = vec![g.to_string()];
            row.extend(p.iter().map(|v| v.to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
    }

    if !r.etv.is_empty() || !r.etv_stats.is_empty() {
        let mut sizes = csv::Writer::from_path(dir.join("etv_sizes.csv"))?;
        let mut ages = csv::Writer::from_path(dir.join("etv_ages.csv"))?;
        sizes.write_record(["serial", "operator", "birth_gen", "size", "censored"])?;
        ages.write_record(["serial", "operator", "birth_gen", "age", "censored"])?;
        for e in &r.etv {
            let op = e.operator.map(|o| o.name()).unwrap_or("none");
            let (s, b, c) = (e.serial.to_string(), e.birth_gen.to_string(), e.censored.to_string());
            sizes.write_record([s.as_str(), op, &b, &e.size.to_string(), &c])?;
            ages.write_record([s.as_str(), op, &b, &e.age.to_string(), &c])?;
        }
        sizes.flush()?;
        ages.flush()?;
    }

    if !r.topology.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("topology.csv"))?;
        w.write_record(["generation", "nodes", "edges", "connected", "L", "k_ave", "c_ave", "ck_slope", "nu", "c_rand"])?;
        for (g, m) in &r.topology {
            w.write_record([
                g.to_string(),
                m.nodes.to_string(),
                m.edges.to_string(),
                m.connected.to_string(),
                m.path_length.to_string(),
                m.k_ave.to_string(),
                m.c_ave.to_string(),
                slope(m.ck_slope),
                slope(m.nu),
                m.c_rand.to_string(),
            ])?;
        }
        w.flush()?;
    }

    if !r.diversity.is_empty() {
        let mut w = csv::Writer::from_path(dir.join("diversity.csv"))?;
        w.write_record(["generation", "all", "top20"])?;
        for d in &r.diversity {
            w.write_record([d.generation.to_string(), d.all.to_string(), d.top20.to_string()])?;
        }
        w.flush()?;
    }

    for (g, edges) in &r.edges {
        fs::write(dir.join(format!("edges_gen{g:04}.txt")), edges)?;
    }
    Ok(())
}

/// Summary row used by batch indexes.
pub fn summary_fields(r: &RunResult) -> Vec<String> {
    vec![
        r.problem.clone(),
        r.config.algorithm.family().to_string(),
        r.config.design().name().to_string(),
        r.config.seed.to_string(),
        r.evaluations.to_string(),
        opt(r.best_feasible()),
    ]
}

pub const SUMMARY_HEADER: [&str; 6] = ["problem", "family", "design", "seed", "evaluations", "best_f"];
