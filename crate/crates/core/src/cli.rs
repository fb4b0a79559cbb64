//! Command-line front end: single runs, seeded sweeps, ETV analysis and
//! summary reports over sweep directories.
//!
//! Standard output carries only machine-readable results; the resolved
//! configuration, heartbeats and diagnostics go to standard error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::adaptation::Design;
use crate::analysis::ranking::{best_design_share, found_best_share, median, rank_profile};
use crate::analysis::stats::mann_whitney_u;
use crate::analysis::{fit_power_law, record_statistics, Distribution};
use crate::engine::batch::for_each_run;
use crate::engine::output::{summary_fields, write_run, SUMMARY_HEADER, VERSION};
use crate::engine::{run_with_observer, Algorithm, GenerationRecord, Observer, RunConfig};
use crate::error::{Error, Result};
use crate::objectives::Problem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

const HEARTBEAT_EVERY: u64 = 100;

#[derive(Debug, Parser)]
#[command(name = "evonet", version, about = "Evolutionary algorithm experiments with event takeover values and adaptive population topologies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute one run and write its telemetry.
    Run(RunArgs),
    /// Execute every configuration of a manifest with every seed.
    Sweep(SweepArgs),
    /// Fit ETV size and age distributions of a run or sweep directory.
    Analyze(AnalyzeArgs),
    /// Summarise a sweep directory.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub problem: Option<String>,
    /// Algorithm family: panmictic, cga, sotea1 or sotea2.
    #[arg(long = "algo")]
    pub algorithm: Option<String>,
    /// Operator-selection design, e.g. etv_outlier or static_ops10.
    #[arg(long)]
    pub design: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<u64>,
    /// Record ETV telemetry even when the design does not need it.
    #[arg(long)]
    pub etv: bool,
    #[arg(long, default_value = "evonet-run")]
    pub out: PathBuf,
    /// Suppress heartbeat lines.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML manifest listing seeds and configuration axes.
    pub manifest: PathBuf,
    #[arg(long, default_value = "evonet-sweep")]
    pub out: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Run directory, or sweep directory containing `runs/`.
    pub dir: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub x_min: u64,
    /// Upper fit bound; defaults to a quarter of the population size.
    #[arg(long)]
    pub x_max: Option<u64>,
    /// Window for record statistics.
    #[arg(long, default_value_t = 200)]
    pub window: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Template {
    /// Per-design share of problems won and rank profile.
    DesignRanking,
    /// Pooled ETV size density with fitted exponent.
    EtvDistribution,
    /// Per-family statistics with one-sided U tests.
    ClassComparison,
    /// Mean interaction-network metrics per family.
    Topology,
    /// Best found per engineering problem against the best known value.
    Engineering,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Sweep directory written by `evonet sweep`.
    pub dir: PathBuf,
    #[arg(long, value_enum)]
    pub template: Template,
}

/// Parses `args` and executes the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Report(a) => cmd_report(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::UnknownProblem(_)
        | Error::InvalidProblemParameter(_)
        | Error::InvalidParameter(_)
        | Error::InvalidSpec { .. } => EXIT_CONFIG,
        _ => EXIT_PARTIAL,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

/// Builds the run configuration from an optional file plus flag overrides.
pub fn resolve_config(a: &RunArgs) -> Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::from_toml(&read(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(p) = &a.problem {
        cfg.problem = p.clone();
    }
    if let Some(f) = &a.algorithm {
        cfg.algorithm = Algorithm::from_family(f)?;
    }
    if let Some(d) = &a.design {
        cfg.adaptation.design = Some(Design::from_name(d).map_err(|e| Error::Config(e.to_string()))?);
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(n) = a.population {
        cfg.population = n;
    }
    if let Some(g) = a.generations {
        cfg.generations = g;
    }
    if a.etv {
        cfg.etv.enabled = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn heartbeat<'a>(total: u64) -> Observer<'a> {
    Box::new(move |g: &GenerationRecord| {
        if g.generation % HEARTBEAT_EVERY == 0 || g.generation == total {
            let best = g.best_f.map(|v| format!("{v:e}")).unwrap_or_else(|| "infeasible".into());
            eprintln!("gen {}/{total} evals {} best {best}", g.generation, g.evaluations);
        }
    })
}

fn cmd_run(a: &RunArgs) -> Result<i32> {
    let cfg = resolve_config(a)?;
    eprintln!("# resolved config\n{}", cfg.to_toml());
    let observer = (!a.quiet).then(|| heartbeat(cfg.generations));
    let result = run_with_observer(&cfg, observer)?;
    write_run(&a.out, &result)?;
    let mut w = csv::Writer::from_writer(std::io::stdout());
    let mut header: Vec<&str> = SUMMARY_HEADER.to_vec();
    header.push("dir");
    w.write_record(&header)?;
    let mut row = summary_fields(&result);
    row.push(a.out.display().to_string());
    w.write_record(&row)?;
    w.flush()?;
    Ok(EXIT_OK)
}

/// A sweep: the cartesian product of problems, designs and algorithms
/// applied to `base`, each run with every seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub seeds: Vec<u64>,
    /// Shorthand for seeds `1..=seed_count`.
    #[serde(default)]
    pub seed_count: Option<u64>,
    #[serde(default)]
    pub problems: Vec<String>,
    #[serde(default)]
    pub designs: Vec<Design>,
    /// Family names (`"cga"`) or full algorithm tables.
    #[serde(default, deserialize_with = "algorithm_entries")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub base: RunConfig,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlgorithmEntry {
    Family(String),
    Full(Algorithm),
}

fn algorithm_entries<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Algorithm>, D::Error> {
    Vec::<AlgorithmEntry>::deserialize(d)?
        .into_iter()
        .map(|e| match e {
            AlgorithmEntry::Family(name) => Algorithm::from_family(&name).map_err(serde::de::Error::custom),
            AlgorithmEntry::Full(a) => Ok(a),
        })
        .collect()
}

impl Manifest {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn seed_list(&self) -> Vec<u64> {
        let mut seeds = self.seeds.clone();
        if let Some(n) = self.seed_count {
            seeds.extend(1..=n);
        }
        seeds
    }

    /// Every configuration, problems outermost.
    pub fn configs(&self) -> Vec<RunConfig> {
        let problems = if self.problems.is_empty() { vec![self.base.problem.clone()] } else { self.problems.clone() };
        let designs: Vec<Option<Design>> =
            if self.designs.is_empty() { vec![self.base.adaptation.design] } else { self.designs.iter().map(|&d| Some(d)).collect() };
        let algorithms = if self.algorithms.is_empty() { vec![self.base.algorithm] } else { self.algorithms.clone() };
        let mut out = Vec::new();
        for p in &problems {
            for alg in &algorithms {
                for &d in &designs {
                    let mut c = self.base.clone();
                    c.problem = p.clone();
                    c.algorithm = *alg;
                    c.adaptation.design = d;
                    out.push(c);
                }
            }
        }
        out
    }
}

pub const INDEX_HEADER: [&str; 9] =
    ["config_index", "seed", "problem", "family", "design", "evaluations", "best_f", "status", "dir"];

fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let text = read(&a.manifest)?;
    let manifest = Manifest::from_toml(&text)?;
    let configs = manifest.configs();
    let seeds = manifest.seed_list();
    if seeds.is_empty() {
        return Err(Error::Config("manifest lists no seeds".into()));
    }
    for c in &configs {
        c.validate()?;
    }
    fs::create_dir_all(a.out.join("runs"))?;
    fs::write(a.out.join("manifest.toml"), &text)?;
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    fs::write(a.out.join("manifest.sha256"), format!("{hash}\n"))?;
    fs::write(a.out.join("version.txt"), format!("evonet {VERSION}\n"))?;
    eprintln!("sweep: {} configs x {} seeds, manifest sha256 {hash}", configs.len(), seeds.len());

    let rows = for_each_run(&configs, &seeds, a.jobs, |item| {
        let rel = format!("runs/c{:04}_s{}", item.config_index, item.seed);
        let cfg = &configs[item.config_index];
        let head = |status: String, tail: Vec<String>| {
            let mut row = vec![item.config_index.to_string(), item.seed.to_string()];
            row.extend(tail);
            row.push(status);
            row.push(rel.clone());
            row
        };
        match item.result.and_then(|r| write_run(&a.out.join(&rel), &r).map(|_| r)) {
            Ok(r) => {
                let f = summary_fields(&r);
                (true, head("ok".into(), vec![f[0].clone(), f[1].clone(), f[2].clone(), f[4].clone(), f[5].clone()]))
            }
            Err(e) => {
                let tail = vec![cfg.problem.clone(), cfg.algorithm.family().into(), cfg.design().name().into(), String::new(), String::new()];
                (false, head(format!("failed: {e}"), tail))
            }
        }
    })?;

    let mut w = csv::Writer::from_path(a.out.join("index.csv"))?;
    w.write_record(INDEX_HEADER)?;
    let mut failed = 0;
    for (ok, row) in &rows {
        if !ok {
            failed += 1;
            eprintln!("failed: config {} seed {}: {}", row[0], row[1], row[7]);
        }
        w.write_record(row)?;
    }
    w.flush()?;
    println!("{}", a.out.join("index.csv").display());
    Ok(if failed > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

/// Run directories below `dir`: the directory itself, or every entry of `dir/runs`.
fn run_dirs(dir: &Path) -> Result<Vec<PathBuf>> {
    let runs = dir.join("runs");
    if runs.is_dir() {
        let mut out: Vec<PathBuf> = fs::read_dir(&runs)?.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_dir()).collect();
        out.sort();
        Ok(out)
    } else {
        Ok(vec![dir.to_path_buf()])
    }
}

/// Non-censored values of column `col` from an ETV CSV; empty when the
/// run recorded no ETV telemetry.
fn etv_column(path: &Path, col: &str) -> Result<Vec<u64>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut r = csv::Reader::from_path(path)?;
    let h = r.headers()?.clone();
    let find = |name: &str| h.iter().position(|x| x == name).ok_or_else(|| Error::Config(format!("{} lacks column {name}", path.display())));
    let (vi, ci) = (find(col)?, find("censored")?);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if &rec[ci] == "false" {
            out.push(rec[vi].parse().map_err(|_| Error::Config(format!("bad {col} value in {}", path.display())))?);
        }
    }
    Ok(out)
}

fn write_density(path: &Path, d: &Distribution) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["bin_lo", "bin_hi", "center", "count", "density"])?;
    for ((&(lo, hi), c), (&x, &y)) in d.edges.iter().zip(&d.counts).zip(d.centers().iter().zip(&d.density)) {
        w.write_record([lo.to_string(), (hi - 1).to_string(), x.to_string(), c.to_string(), y.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<i32> {
    let dirs = run_dirs(&a.dir)?;
    let (mut sizes, mut ages) = (Vec::new(), Vec::new());
    let mut population = None;
    for d in &dirs {
        sizes.extend(etv_column(&d.join("etv_sizes.csv"), "size")?);
        ages.extend(etv_column(&d.join("etv_ages.csv"), "age")?);
        if population.is_none() {
            if let Ok(t) = fs::read_to_string(d.join("config.toml")) {
                population = RunConfig::from_toml(&t).ok().map(|c| c.population as u64);
            }
        }
    }
    if sizes.is_empty() {
        return Err(Error::InsufficientData(format!("no finalized ETVs below {}", a.dir.display())));
    }
    let x_max = a.x_max.unwrap_or_else(|| population.map(|n| n / 4).unwrap_or(50)).max(a.x_min + 1);
    let top = sizes.iter().chain(&ages).copied().max().unwrap_or(1).max(a.x_min);
    write_density(&a.dir.join("etv_size_density.csv"), &Distribution::log_binned(&sizes, 1, top, 2.0)?)?;
    write_density(&a.dir.join("etv_age_density.csv"), &Distribution::log_binned(&ages, 1, top, 2.0)?)?;

    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record(["quantity", "value"])?;
    let mut put = |k: &str, v: String| out.write_record([k, v.as_str()]);
    put("runs", dirs.len().to_string())?;
    put("events", sizes.len().to_string())?;
    let mean_age = if ages.is_empty() { f64::NAN } else { ages.iter().sum::<u64>() as f64 / ages.len() as f64 };
    put("mean_age", mean_age.to_string())?;
    for (name, data) in [("size", &sizes), ("age", &ages)] {
        match fit_power_law(data, a.x_min, x_max) {
            Ok(f) => {
                put(&format!("{name}_exponent"), f.exponent.to_string())?;
                put(&format!("{name}_r_squared"), f.r_squared.to_string())?;
            }
            Err(e) => eprintln!("{name} fit skipped: {e}"),
        }
    }
    match record_statistics(&sizes, a.window) {
        Ok(rec) => {
            let m = rec.iter().sum::<u64>() as f64 / rec.len() as f64;
            put("size_record_windows", rec.len().to_string())?;
            put("size_record_mean", m.to_string())?;
        }
        Err(e) => eprintln!("record statistics skipped: {e}"),
    }
    out.flush()?;
    Ok(EXIT_OK)
}

/// One successful row of a sweep index.
#[derive(Debug, Clone)]
struct IndexRow {
    config: usize,
    problem: String,
    family: String,
    design: String,
    /// Minimisation cost of the best feasible solution; infinite if none.
    cost: f64,
    best_f: Option<f64>,
    dir: PathBuf,
}

fn read_index(dir: &Path) -> Result<Vec<IndexRow>> {
    let path = dir.join("index.csv");
    if !path.exists() {
        return Err(Error::InsufficientData(format!("missing {}", path.display())));
    }
    let mut r = csv::Reader::from_path(&path)?;
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if &rec[7] != "ok" {
            continue;
        }
        let problem = rec[2].to_string();
        let sign = Problem::from_name(&problem).map(|p| p.direction().sign()).unwrap_or(1.0);
        let best_f: Option<f64> = rec[6].parse().ok();
        rows.push(IndexRow {
            config: rec[0].parse().map_err(|_| Error::Config("bad config_index in index.csv".into()))?,
            problem,
            family: rec[3].to_string(),
            design: rec[4].to_string(),
            cost: best_f.map(|f| sign * f).unwrap_or(f64::INFINITY),
            best_f,
            dir: dir.join(&rec[8]),
        });
    }
    if rows.is_empty() {
        return Err(Error::InsufficientData("index.csv lists no successful runs".into()));
    }
    Ok(rows)
}

/// Groups costs as `[problem][group][run]` with groups keyed by `key`.
fn grouped(rows: &[IndexRow], key: impl Fn(&IndexRow) -> String) -> (Vec<String>, Vec<String>, Vec<Vec<Vec<f64>>>) {
    let problems: Vec<String> = rows.iter().map(|r| r.problem.clone()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut groups: Vec<String> = Vec::new();
    for r in rows {
        let k = key(r);
        if !groups.contains(&k) {
            groups.push(k);
        }
    }
    let mut data = vec![vec![Vec::new(); groups.len()]; problems.len()];
    for r in rows {
        let p = problems.iter().position(|x| *x == r.problem).expect("problem listed");
        let g = groups.iter().position(|x| *x == key(r)).expect("group listed");
        data[p][g].push(r.cost);
    }
    (problems, groups, data)
}

const DESIGN_REFERENCE: [(&str, f64, f64); 10] = [
    ("i_median_pursuit", 10.4, 40.0),
    ("i_parent_pursuit", 2.9, 35.0),
    ("i_rank_pursuit", 7.9, 40.0),
    ("i_median", 4.5, 55.0),
    ("i_parent", 12.9, 45.0),
    ("i_rank", 9.5, 45.0),
    ("etv_outlier", 27.0, 90.0),
    ("etv", 15.4, 35.0),
    ("static_ops2", 3.0, 15.0),
    ("static_ops10", 6.6, 45.0),
];

const CLASS_REFERENCE: [(&str, [f64; 5]); 3] = [
    ("panmictic", [4.2, 5.1, 0.87, 8.3, 16.7]),
    ("cga", [9.4, 11.6, 0.50, 12.5, 66.7]),
    ("sotea2", [16.9, 25.2, 0.13, 79.2, 83.3]),
];

fn opt_str(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn cmd_report(a: &ReportArgs) -> Result<i32> {
    let rows = read_index(&a.dir)?;
    let mut w = csv::Writer::from_writer(std::io::stdout());
    match a.template {
        Template::DesignRanking => {
            let (problems, designs, data) = grouped(&rows, |r| r.design.clone());
            if data.iter().any(|p| p.iter().any(Vec::is_empty)) {
                return Err(Error::InsufficientData("every design must have runs on every problem".into()));
            }
            let best = best_design_share(&data);
            let found = found_best_share(&data);
            let finals: Vec<Vec<Vec<Vec<f64>>>> =
                data.iter().map(|p| p.iter().map(|runs| runs.iter().map(|&c| vec![c]).collect()).collect()).collect();
            let profile = rank_profile(&finals)?;
            w.write_record(["design", "problems", "best_design_pct", "found_best_pct", "final_rank", "reference_best_pct", "reference_found_pct"])?;
            for (i, d) in designs.iter().enumerate() {
                let reference = DESIGN_REFERENCE.iter().find(|r| r.0 == d);
                w.write_record([
                    d.clone(),
                    problems.len().to_string(),
                    best[i].to_string(),
                    found[i].to_string(),
                    profile[i][0].to_string(),
                    opt_str(reference.map(|r| r.1)),
                    opt_str(reference.map(|r| r.2)),
                ])?;
            }
        }
        Template::EtvDistribution => {
            let mut sizes = Vec::new();
            let mut population = 0u64;
            for r in &rows {
                sizes.extend(etv_column(&r.dir.join("etv_sizes.csv"), "size")?);
                if population == 0 {
                    population = fs::read_to_string(r.dir.join("config.toml"))
                        .ok()
                        .and_then(|t| RunConfig::from_toml(&t).ok())
                        .map(|c| c.population as u64)
                        .unwrap_or(0);
                }
            }
            if sizes.is_empty() {
                return Err(Error::InsufficientData("no finalized ETVs in the sweep".into()));
            }
            let hi = sizes.iter().copied().max().unwrap_or(1);
            let d = Distribution::log_binned(&sizes, 1, hi, 2.0)?;
            let fit = match fit_power_law(&sizes, 2, (population / 4).max(3)) {
                Ok(f) => Some(f),
                Err(e) => {
                    eprintln!("fit skipped: {e}");
                    None
                }
            };
            w.write_record(["bin_lo", "bin_hi", "center", "density", "fitted_density", "exponent"])?;
            for ((&(lo, hi), &x), &y) in d.edges.iter().zip(&d.centers()).zip(&d.density) {
                w.write_record([
                    lo.to_string(),
                    (hi - 1).to_string(),
                    x.to_string(),
                    y.to_string(),
                    opt_str(fit.map(|f| f.density(x))),
                    opt_str(fit.map(|f| f.exponent)),
                ])?;
            }
        }
        Template::ClassComparison => {
            let (problems, classes, data) = grouped(&rows, |r| r.family.clone());
            let (_, configs, by_config) = grouped(&rows, |r| format!("{}|{}", r.family, r.config));
            let class_of = |cfg: &str| cfg.split('|').next().unwrap_or("").to_string();
            let n = classes.len();
            let (mut found_runs, mut top5, mut p_sum) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
            let (mut best_design, mut found_problem) = (vec![0usize; n], vec![0usize; n]);
            for (pi, groups) in data.iter().enumerate() {
                let mut all: Vec<f64> = groups.iter().flatten().copied().collect();
                all.sort_by(f64::total_cmp);
                let best = all[0];
                let cut = all[((0.05 * all.len() as f64).ceil() as usize).saturating_sub(1)];
                for (ci, runs) in groups.iter().enumerate() {
                    if runs.is_empty() {
                        continue;
                    }
                    let k = runs.len() as f64;
                    found_runs[ci] += 100.0 * runs.iter().filter(|&&c| c == best).count() as f64 / k;
                    top5[ci] += 100.0 * runs.iter().filter(|&&c| c <= cut).count() as f64 / k;
                    if runs.contains(&best) {
                        found_problem[ci] += 1;
                    }
                    let rest: Vec<f64> = groups.iter().enumerate().filter(|&(j, _)| j != ci).flat_map(|(_, g)| g.iter().copied()).collect();
                    let clean = |v: &[f64]| v.iter().map(|&c| if c.is_finite() { c } else { f64::MAX }).collect::<Vec<_>>();
                    p_sum[ci] += if rest.is_empty() { 1.0 } else { mann_whitney_u(&clean(runs), &clean(&rest))?.p_less };
                }
                let medians: Vec<(usize, f64)> = by_config[pi]
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r.is_empty())
                    .map(|(i, r)| (i, median(r).unwrap_or(f64::INFINITY)))
                    .collect();
                let top = medians.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
                let mut credited = std::collections::BTreeSet::new();
                for (i, m) in medians {
                    if m == top {
                        credited.insert(class_of(&configs[i]));
                    }
                }
                for c in credited {
                    if let Some(ci) = classes.iter().position(|x| *x == c) {
                        best_design[ci] += 1;
                    }
                }
            }
            let np = problems.len() as f64;
            w.write_record([
                "family",
                "found_best_runs_pct",
                "top5_runs_pct",
                "u_test_p",
                "best_design_pct",
                "found_best_problems_pct",
                "reference",
            ])?;
            for (ci, c) in classes.iter().enumerate() {
                let reference = CLASS_REFERENCE
                    .iter()
                    .find(|r| r.0 == c)
                    .map(|r| r.1.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                w.write_record([
                    c.clone(),
                    (found_runs[ci] / np).to_string(),
                    (top5[ci] / np).to_string(),
                    (p_sum[ci] / np).to_string(),
                    (100.0 * best_design[ci] as f64 / np).to_string(),
                    (100.0 * found_problem[ci] as f64 / np).to_string(),
                    reference,
                ])?;
            }
        }
        Template::Topology => {
            let mut acc: BTreeMap<String, [f64; 6]> = BTreeMap::new();
            for r in &rows {
                let path = r.dir.join("topology.csv");
                if !path.exists() {
                    continue;
                }
                let mut rd = csv::Reader::from_path(&path)?;
                for rec in rd.records() {
                    let rec = rec?;
                    if &rec[0] == "0" {
                        continue;
                    }
                    let num = |i: usize| rec[i].parse::<f64>().ok();
                    let e = acc.entry(r.family.clone()).or_insert([0.0; 6]);
                    for (slot, i) in [(0, 4), (1, 5), (2, 6), (3, 7), (4, 8)] {
                        e[slot] += num(i).unwrap_or(0.0);
                    }
                    e[5] += 1.0;
                }
            }
            if acc.is_empty() {
                return Err(Error::InsufficientData("no topology.csv in the sweep".into()));
            }
            w.write_record(["family", "samples", "L", "k_ave", "c_ave", "ck_slope", "nu", "reference"])?;
            for (fam, e) in &acc {
                let reference = if fam == "sotea2" { "5.97 3.6 0.687 -4.75 11.8" } else { "" };
                let m = |i: usize| (e[i] / e[5]).to_string();
                w.write_record([fam.clone(), e[5].to_string(), m(0), m(1), m(2), m(3), m(4), reference.into()])?;
            }
        }
        Template::Engineering => {
            let mut best: BTreeMap<String, (f64, Option<f64>)> = BTreeMap::new();
            for r in &rows {
                let e = best.entry(r.problem.clone()).or_insert((f64::INFINITY, None));
                if r.cost < e.0 {
                    *e = (r.cost, r.best_f);
                }
            }
            w.write_record(["problem", "best_found", "best_known", "gap"])?;
            for (p, (_, f)) in best {
                let known = Problem::from_name(&p).ok().and_then(|pr| pr.known_optimum()).map(|k| k.f);
                let gap = match (f, known) {
                    (Some(f), Some(k)) => (f - k).abs().to_string(),
                    _ => String::new(),
                };
                w.write_record([p, f.map(|v| v.to_string()).unwrap_or_else(|| "infeasible".into()), opt_str(known), gap])?;
            }
        }
    }
    w.flush()?;
    std::io::stdout().flush()?;
    Ok(EXIT_OK)
}
