//! Run configuration, read from TOML or built in code.

use serde::{Deserialize, Serialize};

use crate::adaptation::{ControllerParams, Design};
use crate::error::{Error, Result};
use crate::etv::EtvConfig;
use crate::objectives::Problem;
use crate::operators::OperatorParams;
use crate::selection::SurvivalScheme;
use crate::topology::rules::{Sotea1Params, Sotea2Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PanmicticUpdate {
    /// `mu = lambda = N`, unbounded age.
    SteadyState,
    /// `mu = N/2`, `lambda = N`, one generation of life, best parent kept.
    Generational,
    /// Deterministic crowding.
    Crowding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PanmicticParams {
    pub update: PanmicticUpdate,
    pub selection: SurvivalScheme,
    pub tournament_size: usize,
    pub exp_c: f64,
}

impl Default for PanmicticParams {
    fn default() -> Self {
        PanmicticParams {
            update: PanmicticUpdate::SteadyState,
            selection: SurvivalScheme::ModifiedTournament,
            tournament_size: 2,
            exp_c: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CgaParams {
    pub radius: usize,
}

impl Default for CgaParams {
    fn default() -> Self {
        CgaParams { radius: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Sotea,
    Cga,
    Panmictic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitnessMode {
    /// Rank among network neighbours.
    Epistatic,
    /// Raw objective.
    Objective,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sotea1Config {
    pub structure: Structure,
    pub fitness: FitnessMode,
    pub p_add: f64,
    pub p_remove: f64,
    /// Bit flip rate times genome length.
    pub flip_scale: f64,
}

impl Default for Sotea1Config {
    fn default() -> Self {
        let p = Sotea1Params::default();
        Sotea1Config {
            structure: Structure::Sotea,
            fitness: FitnessMode::Epistatic,
            p_add: p.p_add,
            p_remove: p.p_remove,
            flip_scale: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Algorithm {
    Panmictic(PanmicticParams),
    Cga(CgaParams),
    Sotea1(Sotea1Config),
    Sotea2(Sotea2Params),
}

impl Default for Algorithm {
    fn default() -> Self {
        Algorithm::Panmictic(PanmicticParams::default())
    }
}

impl Algorithm {
    pub fn family(&self) -> &'static str {
        match self {
            Algorithm::Panmictic(_) => "panmictic",
            Algorithm::Cga(_) => "cga",
            Algorithm::Sotea1(_) => "sotea1",
            Algorithm::Sotea2(_) => "sotea2",
        }
    }

    /// Default parameters for a family name.
    pub fn from_family(name: &str) -> Result<Self> {
        Ok(match name {
            "panmictic" => Algorithm::Panmictic(PanmicticParams::default()),
            "cga" => Algorithm::Cga(CgaParams::default()),
            "sotea1" => Algorithm::Sotea1(Sotea1Config::default()),
            "sotea2" | "sotea" => Algorithm::Sotea2(Sotea2Params::default()),
            _ => return Err(Error::Config(format!("unknown algorithm family `{name}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdaptationConfig {
    /// `None` picks the family default.
    pub design: Option<Design>,
    pub alpha: f64,
    pub beta: f64,
    pub tau: u64,
    pub p_min: f64,
}

impl Default for AdaptationConfig {
    fn default() -> Self {
        let p = ControllerParams::default();
        AdaptationConfig { design: None, alpha: p.alpha, beta: p.beta, tau: p.tau, p_min: p.p_min }
    }
}

impl AdaptationConfig {
    pub fn params(&self) -> ControllerParams {
        ControllerParams { alpha: self.alpha, beta: self.beta, tau: self.tau, p_min: self.p_min }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EtvSettings {
    pub enabled: bool,
    pub t_obs: usize,
    pub p_new: f64,
    /// Also track the brute-force genealogy for cross-checking.
    pub oracle: bool,
}

impl Default for EtvSettings {
    fn default() -> Self {
        let c = EtvConfig::default();
        EtvSettings { enabled: false, t_obs: c.t_obs, p_new: c.p_new, oracle: false }
    }
}

impl EtvSettings {
    pub fn config(&self) -> EtvConfig {
        EtvConfig { t_obs: self.t_obs, p_new: self.p_new }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TelemetryConfig {
    pub probabilities: bool,
    /// Topology metrics every this many generations; 0 disables.
    pub topology_every: u64,
    /// Edge list snapshots every this many generations; 0 disables.
    pub edges_every: u64,
    /// Diversity of binary populations every this many generations; 0 disables.
    pub diversity_every: u64,
}

impl Default for TelemetryConfig {
    fn default() -> Self {
        TelemetryConfig { probabilities: true, topology_every: 50, edges_every: 0, diversity_every: 10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstraintConfig {
    /// Stochastic ranking probability of comparing by objective.
    pub pf: f64,
}

impl Default for ConstraintConfig {
    fn default() -> Self {
        ConstraintConfig { pf: 0.45 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problem: String,
    pub seed: u64,
    pub population: usize,
    pub generations: u64,
    pub algorithm: Algorithm,
    pub adaptation: AdaptationConfig,
    pub operators: OperatorParams,
    pub etv: EtvSettings,
    pub constraints: ConstraintConfig,
    pub telemetry: TelemetryConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            problem: "quadratic".into(),
            seed: 1,
            population: 30,
            generations: 3000,
            algorithm: Algorithm::default(),
            adaptation: AdaptationConfig::default(),
            operators: OperatorParams::default(),
            etv: EtvSettings::default(),
            constraints: ConstraintConfig::default(),
            telemetry: TelemetryConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }

    /// The adaptive design in force, after family defaults.
    pub fn design(&self) -> Design {
        self.adaptation.design.unwrap_or(match self.algorithm {
            Algorithm::Panmictic(_) => Design::StaticOps10,
            _ => Design::StaticOps7,
        })
    }

    /// ETV tracking is needed for telemetry or for ETV-driven adaptation.
    pub fn tracks_etv(&self) -> bool {
        self.etv.enabled || self.etv.oracle || self.design().credit().uses_etv()
    }

    /// Checks everything that can be checked without running.
    pub fn validate(&self) -> Result<Problem> {
        let problem = Problem::from_name(&self.problem).map_err(|e| Error::Config(e.to_string()))?;
        let n = self.population;
        if n < 2 {
            return Err(Error::Config(format!("population must be at least 2, got {n}")));
        }
        self.etv.config().validate().map_err(|e| Error::Config(e.to_string()))?;
        if !(0.0..=1.0).contains(&self.constraints.pf) {
            return Err(Error::Config("constraints.pf must lie in [0, 1]".into()));
        }
        match &self.algorithm {
            Algorithm::Panmictic(p) => {
                if p.update == PanmicticUpdate::Generational && n < 4 {
                    return Err(Error::Config("generational updating needs N >= 4".into()));
                }
                if p.tournament_size == 0 {
                    return Err(Error::Config("tournament_size must be positive".into()));
                }
            }
            Algorithm::Cga(c) => {
                if c.radius == 0 || 2 * c.radius >= n {
                    return Err(Error::Config(format!("cGA radius {} must satisfy 1 <= R < N/2 for N = {n}", c.radius)));
                }
            }
            Algorithm::Sotea1(s) => {
                if n < 3 {
                    return Err(Error::Config("sotea1 needs N >= 3".into()));
                }
                Sotea1Params { p_add: s.p_add, p_remove: s.p_remove }.validate().map_err(|e| Error::Config(e.to_string()))?;
            }
            Algorithm::Sotea2(s) => {
                if n < 3 {
                    return Err(Error::Config("sotea2 needs N >= 3".into()));
                }
                s.validate().map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        crate::adaptation::Controller::for_design(self.design(), self.adaptation.params())
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(problem)
    }
}
