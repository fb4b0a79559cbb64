//! Benchmark problems.
//!
//! Every problem exposes its objective `F`, the constraint values `g_k`
//! (satisfied when `g_k <= 0`) and the total violation `phi`. Problems are
//! addressed by a canonical name with optional parameters, for example
//! `rastrigin`, `mttp:n=100` or `nk:N=30,K=14,seed=3`.

mod binary;
mod engineering;
mod functions;
pub mod nk;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{check_genome, GeneSpec};

pub use binary::{ecc_fitness, mmdp_fitness, mttp_fitness, MttpInstance, MMDP_Y};
pub use nk::NkLandscape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Factor turning a raw objective into a cost to minimize.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Minimize => 1.0,
            Direction::Maximize => -1.0,
        }
    }

    /// True when `a` is a strictly better raw objective than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnownOptimum {
    pub f: f64,
    pub genome: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    pub direction: Direction,
    pub gene_specs: Vec<GeneSpec>,
    pub constraint_count: usize,
    pub known_optimum: Option<KnownOptimum>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub f: f64,
    pub g: Vec<f64>,
    pub phi: f64,
}

impl Evaluation {
    pub fn unconstrained(f: f64) -> Self {
        Evaluation { f, g: Vec::new(), phi: 0.0 }
    }

    pub fn constrained(f: f64, g: Vec<f64>) -> Self {
        let phi = total_violation(&g);
        Evaluation { f, g, phi }
    }

    pub fn feasible(&self) -> bool {
        self.phi == 0.0
    }
}

/// Sum of positive constraint values.
pub fn total_violation(g: &[f64]) -> f64 {
    g.iter().map(|&v| v.max(0.0)).sum()
}

#[derive(Debug, Clone)]
pub enum Problem {
    Quadratic { n: usize },
    Rosenbrock { n: usize },
    Rastrigin { n: usize },
    Schwefel { n: usize },
    Griewangk { n: usize },
    Bohachevsky,
    Watson,
    Colville,
    LinearEquations,
    Ackley { n: usize },
    Neumaier2 { n: usize },
    HyperEllipsoid { n: usize },
    FrequencyModulation,
    Mttp(MttpInstance),
    Ecc { words: usize, bits: usize },
    Mmdp { k: usize },
    Nk(Box<NkLandscape>),
    Turbine,
    Alkylation,
    HeatExchanger,
    PressureVessel,
    WeldedBeam,
    Spring,
    GearTrain,
}

/// Canonical names of every problem in the suite.
pub const PROBLEM_NAMES: &[&str] = &[
    "mttp",
    "ecc",
    "mmdp",
    "frequency_modulation",
    "quadratic",
    "rosenbrock",
    "rastrigin",
    "schwefel",
    "griewangk",
    "bohachevsky",
    "watson",
    "colville",
    "linear_equations",
    "ackley",
    "neumaier2",
    "hyper_ellipsoid",
    "nk",
    "turbine",
    "alkylation",
    "heat_exchanger",
    "pressure_vessel",
    "welded_beam",
    "spring",
    "gear_train",
];

/// The artificial test functions used for the operator adaptation studies.
pub const ARTIFICIAL_SUITE: &[&str] = &[
    "mttp",
    "ecc",
    "mmdp",
    "frequency_modulation",
    "quadratic",
    "rosenbrock",
    "rastrigin",
    "schwefel",
    "griewangk",
    "bohachevsky",
    "watson",
    "colville",
    "linear_equations",
    "ackley",
    "neumaier2",
    "hyper_ellipsoid",
];

/// The constrained engineering design problems.
pub const ENGINEERING_SUITE: &[&str] =
    &["turbine", "alkylation", "heat_exchanger", "pressure_vessel", "welded_beam", "spring", "gear_train"];

struct Params<'a> {
    items: Vec<(&'a str, &'a str)>,
    name: &'a str,
}

impl<'a> Params<'a> {
    fn parse(name: &'a str, raw: Option<&'a str>) -> Result<Self> {
        let mut items = Vec::new();
        if let Some(raw) = raw {
            for part in raw.split(',').filter(|p| !p.trim().is_empty()) {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    Error::InvalidProblemParameter(format!("`{part}` in `{name}` is not key=value"))
                })?;
                items.push((k.trim(), v.trim()));
            }
        }
        Ok(Params { items, name })
    }

    fn get<T: std::str::FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.items.iter().position(|(k, _)| *k == key) {
            Some(pos) => {
                let (_, v) = self.items.remove(pos);
                v.parse().map_err(|_| {
                    Error::InvalidProblemParameter(format!("bad value `{v}` for `{key}` in `{}`", self.name))
                })
            }
            None => default.ok_or_else(|| {
                Error::InvalidProblemParameter(format!("`{}` needs parameter `{key}`", self.name))
            }),
        }
    }

    fn finish(self) -> Result<()> {
        match self.items.first() {
            Some((k, _)) => {
                Err(Error::InvalidProblemParameter(format!("unknown parameter `{k}` for `{}`", self.name)))
            }
            None => Ok(()),
        }
    }
}

fn positive(n: usize, what: &str) -> Result<usize> {
    if n == 0 {
        Err(Error::InvalidProblemParameter(format!("{what} must be positive")))
    } else {
        Ok(n)
    }
}

impl Problem {
    /// Builds a problem from its canonical name.
    pub fn from_name(full: &str) -> Result<Problem> {
        let full = full.trim();
        let (name, raw) = match full.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (full, None),
        };
        let mut p = Params::parse(name, raw)?;
        let problem = match name {
            "quadratic" => Problem::Quadratic { n: positive(p.get("n", Some(3))?, "n")? },
            "rosenbrock" => {
                let n = p.get("n", Some(2))?;
                if n < 2 {
                    return Err(Error::InvalidProblemParameter("rosenbrock needs n >= 2".into()));
                }
                Problem::Rosenbrock { n }
            }
            "rastrigin" => Problem::Rastrigin { n: positive(p.get("n", Some(20))?, "n")? },
            "schwefel" => Problem::Schwefel { n: positive(p.get("n", Some(20))?, "n")? },
            "griewangk" => Problem::Griewangk { n: positive(p.get("n", Some(10))?, "n")? },
            "bohachevsky" => Problem::Bohachevsky,
            "watson" => Problem::Watson,
            "colville" => Problem::Colville,
            "linear_equations" => Problem::LinearEquations,
            "ackley" => Problem::Ackley { n: positive(p.get("n", Some(25))?, "n")? },
            "neumaier2" => {
                let n = positive(p.get("n", Some(4))?, "n")?;
                if n > 4 {
                    return Err(Error::InvalidProblemParameter("neumaier2 is defined for n <= 4".into()));
                }
                Problem::Neumaier2 { n }
            }
            "hyper_ellipsoid" => Problem::HyperEllipsoid { n: positive(p.get("n", Some(30))?, "n")? },
            "frequency_modulation" => Problem::FrequencyModulation,
            "mttp" => Problem::Mttp(MttpInstance::new(p.get("n", Some(200))?)?),
            "ecc" => {
                let words = p.get("M", Some(24))?;
                let bits = p.get("N", Some(12))?;
                if words < 2 || bits == 0 {
                    return Err(Error::InvalidProblemParameter("ecc needs M >= 2 and N >= 1".into()));
                }
                Problem::Ecc { words, bits }
            }
            "mmdp" => Problem::Mmdp { k: positive(p.get("k", Some(20))?, "k")? },
            "nk" => {
                let n = p.get("N", None)?;
                let k = p.get("K", None)?;
                let seed = p.get("seed", Some(0u64))?;
                Problem::Nk(Box::new(NkLandscape::generate(n, k, seed)?))
            }
            "turbine" => Problem::Turbine,
            "alkylation" => Problem::Alkylation,
            "heat_exchanger" => Problem::HeatExchanger,
            "pressure_vessel" => Problem::PressureVessel,
            "welded_beam" => Problem::WeldedBeam,
            "spring" => Problem::Spring,
            "gear_train" => Problem::GearTrain,
            _ => return Err(Error::UnknownProblem(full.to_string())),
        };
        p.finish()?;
        Ok(problem)
    }

    /// Canonical name including any non-default parameters.
    pub fn name(&self) -> String {
        match self {
            Problem::Quadratic { n } => with_n("quadratic", *n, 3),
            Problem::Rosenbrock { n } => with_n("rosenbrock", *n, 2),
            Problem::Rastrigin { n } => with_n("rastrigin", *n, 20),
            Problem::Schwefel { n } => with_n("schwefel", *n, 20),
            Problem::Griewangk { n } => with_n("griewangk", *n, 10),
            Problem::Bohachevsky => "bohachevsky".into(),
            Problem::Watson => "watson".into(),
            Problem::Colville => "colville".into(),
            Problem::LinearEquations => "linear_equations".into(),
            Problem::Ackley { n } => with_n("ackley", *n, 25),
            Problem::Neumaier2 { n } => with_n("neumaier2", *n, 4),
            Problem::HyperEllipsoid { n } => with_n("hyper_ellipsoid", *n, 30),
            Problem::FrequencyModulation => "frequency_modulation".into(),
            Problem::Mttp(inst) => with_n("mttp", inst.n(), 200),
            Problem::Ecc { words, bits } => {
                if (*words, *bits) == (24, 12) {
                    "ecc".into()
                } else {
                    format!("ecc:M={words},N={bits}")
                }
            }
            Problem::Mmdp { k } => {
                if *k == 20 {
                    "mmdp".into()
                } else {
                    format!("mmdp:k={k}")
                }
            }
            Problem::Nk(l) => format!("nk:N={},K={},seed={}", l.n(), l.k(), l.seed()),
            Problem::Turbine => "turbine".into(),
            Problem::Alkylation => "alkylation".into(),
            Problem::HeatExchanger => "heat_exchanger".into(),
            Problem::PressureVessel => "pressure_vessel".into(),
            Problem::WeldedBeam => "welded_beam".into(),
            Problem::Spring => "spring".into(),
            Problem::GearTrain => "gear_train".into(),
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Problem::Ecc { .. } | Problem::Nk(_) | Problem::Alkylation => Direction::Maximize,
            _ => Direction::Minimize,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Problem::Quadratic { n }
            | Problem::Rosenbrock { n }
            | Problem::Rastrigin { n }
            | Problem::Schwefel { n }
            | Problem::Griewangk { n }
            | Problem::Ackley { n }
            | Problem::Neumaier2 { n }
            | Problem::HyperEllipsoid { n } => *n,
            Problem::Bohachevsky => 2,
            Problem::Watson => 6,
            Problem::Colville => 4,
            Problem::LinearEquations => 10,
            Problem::FrequencyModulation => 6,
            Problem::Mttp(inst) => inst.n(),
            Problem::Ecc { words, bits } => words * bits,
            Problem::Mmdp { k } => 6 * k,
            Problem::Nk(l) => l.n(),
            Problem::Turbine => 4,
            Problem::Alkylation => 7,
            Problem::HeatExchanger => 5,
            Problem::PressureVessel => 4,
            Problem::WeldedBeam => 4,
            Problem::Spring => 3,
            Problem::GearTrain => 4,
        }
    }

    pub fn gene_specs(&self) -> Vec<GeneSpec> {
        let n = self.dimension();
        let uniform = |lo: f64, hi: f64| vec![GeneSpec::real(lo, hi); n];
        let bounds = |lo: &[f64], hi: &[f64]| lo.iter().zip(hi).map(|(&l, &h)| GeneSpec::real(l, h)).collect();
        match self {
            Problem::Quadratic { .. } | Problem::Rastrigin { .. } => uniform(-5.12, 5.12),
            Problem::Rosenbrock { .. } => uniform(-2.0, 2.0),
            Problem::Schwefel { .. } => uniform(-500.0, 500.0),
            Problem::Griewangk { .. } => uniform(-600.0, 600.0),
            Problem::Bohachevsky => uniform(-50.0, 50.0),
            Problem::Watson => uniform(-2.0, 2.0),
            Problem::Colville => uniform(-10.0, 10.0),
            Problem::LinearEquations => uniform(-9.0, 9.0),
            Problem::Ackley { .. } => uniform(-32.768, 32.768),
            Problem::Neumaier2 { n } => uniform(0.0, *n as f64),
            Problem::HyperEllipsoid { .. } => uniform(-1.0, 1.0),
            Problem::FrequencyModulation => uniform(-6.4, 6.35),
            Problem::Mttp(_) | Problem::Ecc { .. } | Problem::Mmdp { .. } | Problem::Nk(_) => {
                vec![GeneSpec::binary(); n]
            }
            Problem::Turbine => bounds(&[18.0, 14.0, 0.0, 0.0], &[30.0, 25.0, 1.0, 1.0]),
            Problem::Alkylation => bounds(
                &[1500.0, 1.0, 3000.0, 85.0, 90.0, 3.0, 145.0],
                &[2000.0, 120.0, 3500.0, 93.0, 95.0, 12.0, 162.0],
            ),
            Problem::HeatExchanger => {
                bounds(&[100.0, 1000.0, 1000.0, 10.0, 10.0], &[10000.0, 10000.0, 10000.0, 1000.0, 1000.0])
            }
            Problem::PressureVessel => vec![
                GeneSpec::real(1.0, 100.0),
                GeneSpec::real(1.0, 400.0),
                GeneSpec::integer(1.0, 20.0),
                GeneSpec::integer(1.0, 20.0),
            ],
            Problem::WeldedBeam => bounds(&[0.1, 0.1, 0.1, 0.1], &[2.0, 10.0, 10.0, 2.0]),
            Problem::Spring => bounds(&[0.05, 0.25, 2.0], &[2.0, 1.3, 15.0]),
            Problem::GearTrain => vec![GeneSpec::integer(12.0, 60.0); 4],
        }
    }

    pub fn constraint_count(&self) -> usize {
        match self {
            Problem::Turbine => 1,
            Problem::Alkylation => 14,
            Problem::HeatExchanger => 3,
            Problem::PressureVessel => 4,
            Problem::WeldedBeam => 7,
            Problem::Spring => 4,
            _ => 0,
        }
    }

    pub fn known_optimum(&self) -> Option<KnownOptimum> {
        let at = |f: f64, genome: Vec<f64>| Some(KnownOptimum { f, genome: Some(genome) });
        let n = self.dimension();
        match self {
            Problem::Quadratic { .. }
            | Problem::Rastrigin { .. }
            | Problem::Griewangk { .. }
            | Problem::Ackley { .. }
            | Problem::HyperEllipsoid { .. }
            | Problem::Bohachevsky => at(0.0, vec![0.0; n]),
            Problem::Rosenbrock { .. } | Problem::Colville | Problem::LinearEquations => at(0.0, vec![1.0; n]),
            Problem::Schwefel { .. } => at(0.0, vec![functions::SCHWEFEL_ARGMIN; n]),
            Problem::FrequencyModulation => at(0.0, functions::FM_TARGET.to_vec()),
            Problem::Watson => at(2.288e-3, functions::WATSON_ARGMIN.to_vec()),
            Problem::Mttp(_) => Some(KnownOptimum { f: 0.0, genome: None }),
            Problem::Ecc { words: 24, bits: 12 } => Some(KnownOptimum { f: 0.067416, genome: None }),
            Problem::Mmdp { .. } => at(0.0, vec![0.0; n]),
            Problem::Alkylation => at(1772.77, engineering::ALKYLATION_BEST.to_vec()),
            Problem::HeatExchanger => at(7049.25, engineering::HEN_BEST.to_vec()),
            Problem::PressureVessel => at(5850.37, engineering::PRESSURE_VESSEL_BEST.to_vec()),
            Problem::WeldedBeam => at(1.72485, engineering::WELDED_BEAM_BEST.to_vec()),
            Problem::Spring => at(0.0126652303, engineering::SPRING_BEST.to_vec()),
            Problem::GearTrain => at(2.70e-12, vec![19.0, 16.0, 43.0, 49.0]),
            Problem::Turbine => at(3.05, vec![30.0, 20.0, 0.0, 0.58]),
            _ => None,
        }
    }

    pub fn spec(&self) -> ProblemSpec {
        ProblemSpec {
            name: self.name(),
            direction: self.direction(),
            gene_specs: self.gene_specs(),
            constraint_count: self.constraint_count(),
            known_optimum: self.known_optimum(),
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Problem::Mttp(_) | Problem::Ecc { .. } | Problem::Mmdp { .. } | Problem::Nk(_))
    }

    /// Evaluates a genome. Values outside bounds or off the integer lattice
    /// of integer genes are rejected.
    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        check_genome(x, &self.gene_specs())?;
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluates without validating bounds. The caller guarantees the
    /// genome has the right length.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> Evaluation {
        use functions as f;
        match self {
            Problem::Quadratic { .. } => Evaluation::unconstrained(f::sphere(x)),
            Problem::Rosenbrock { .. } => Evaluation::unconstrained(f::rosenbrock(x)),
            Problem::Rastrigin { .. } => Evaluation::unconstrained(f::rastrigin(x)),
            Problem::Schwefel { .. } => Evaluation::unconstrained(f::schwefel(x)),
            Problem::Griewangk { .. } => Evaluation::unconstrained(f::griewangk(x)),
            Problem::Bohachevsky => Evaluation::unconstrained(f::bohachevsky(x)),
            Problem::Watson => Evaluation::unconstrained(f::watson(x)),
            Problem::Colville => Evaluation::unconstrained(f::colville(x)),
            Problem::LinearEquations => Evaluation::unconstrained(f::linear_equations(x)),
            Problem::Ackley { .. } => Evaluation::unconstrained(f::ackley(x)),
            Problem::Neumaier2 { .. } => Evaluation::unconstrained(f::neumaier2(x)),
            Problem::HyperEllipsoid { .. } => Evaluation::unconstrained(f::hyper_ellipsoid(x)),
            Problem::FrequencyModulation => Evaluation::unconstrained(f::frequency_modulation(x)),
            Problem::Mttp(inst) => Evaluation::unconstrained(mttp_fitness(inst, x)),
            Problem::Ecc { words, bits } => Evaluation::unconstrained(ecc_fitness(x, *words, *bits)),
            Problem::Mmdp { k } => Evaluation::unconstrained(mmdp_fitness(x, *k)),
            Problem::Nk(l) => Evaluation::unconstrained(l.fitness(x)),
            Problem::Turbine => engineering::turbine(x),
            Problem::Alkylation => engineering::alkylation(x),
            Problem::HeatExchanger => engineering::heat_exchanger(x),
            Problem::PressureVessel => engineering::pressure_vessel(x),
            Problem::WeldedBeam => engineering::welded_beam(x),
            Problem::Spring => engineering::spring(x),
            Problem::GearTrain => Evaluation::unconstrained(engineering::gear_train(x)),
        }
    }
}

fn with_n(base: &str, n: usize, default: usize) -> String {
    if n == default {
        base.to_string()
    } else {
        format!("{base}:n={n}")
    }
}

/// Convenience wrapper: build by name and evaluate.
pub fn evaluate(name: &str, x: &[f64]) -> Result<Evaluation> {
    Problem::from_name(name)?.evaluate(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in PROBLEM_NAMES.iter().filter(|n| **n != "nk") {
            let p = Problem::from_name(name).unwrap();
            assert_eq!(&p.name(), name);
            assert_eq!(p.gene_specs().len(), p.dimension());
        }
        let p = Problem::from_name("nk:N=12,K=3,seed=9").unwrap();
        assert_eq!(p.name(), "nk:N=12,K=3,seed=9");
        assert_eq!(Problem::from_name("rastrigin:n=5").unwrap().name(), "rastrigin:n=5");
    }

    #[test]
    fn bad_names() {
        assert!(matches!(Problem::from_name("nope"), Err(Error::UnknownProblem(_))));
        assert!(Problem::from_name("rastrigin:m=3").is_err());
        assert!(Problem::from_name("rastrigin:n=x").is_err());
        assert!(Problem::from_name("nk:N=10").is_err());
        assert!(Problem::from_name("mttp:n=7").is_err());
    }

    #[test]
    fn dimension_checked() {
        let p = Problem::from_name("quadratic").unwrap();
        assert!(matches!(p.evaluate(&[0.0, 0.0]), Err(Error::DimensionMismatch { .. })));
    }
}
