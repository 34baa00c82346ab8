//! Experiment configuration: one flat JSON document per experiment.
//!
//! ```json
//! {
//!   "experiment": "hypercube_l1",
//!   "n": 10,
//!   "omega_mode": "outside",
//!   "sigma_list": [0.0, 0.5],
//!   "T_list": [100, 1000, 10000],
//!   "seeds": [1, 2, 3],
//!   "algorithms": ["pfw", "pgd"],
//!   "output_dir": "out/hypercube"
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    /// `‖x − ω‖₁` over `[−1, 1]^n`.
    HypercubeL1,
    /// `Σ |X_ij − W_ij|` over the nuclear-norm ball `‖X‖_* ≤ τ`, X of size m x n.
    NuclearL1,
    /// Max-min rate allocation on a ring of `n` links: link capacities
    /// enter as an exact penalty, the budget simplex is the feasible set.
    Num3Demo,
}

impl Experiment {
    pub const ALL: [Experiment; 3] = [Experiment::HypercubeL1, Experiment::NuclearL1, Experiment::Num3Demo];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::HypercubeL1 => "hypercube_l1",
            Experiment::NuclearL1 => "nuclear_l1",
            Experiment::Num3Demo => "num3_demo",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Experiment::HypercubeL1 => "L1 distance to an anchor over the box [-1,1]^n (exact optimum known)",
            Experiment::NuclearL1 => "entrywise L1 distance to W over the nuclear-norm ball of radius tau",
            Experiment::Num3Demo => "max-min rates on a ring network, link capacities penalized, budget polytope as the set (pfw only)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaMode {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Pfw,
    Pgd,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Pfw => "pfw",
            Algorithm::Pgd => "pgd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    #[default]
    WithG,
    BOnly,
}

impl From<Schedule> for projfree::StochasticSchedule {
    fn from(s: Schedule) -> Self {
        match s {
            Schedule::WithG => projfree::StochasticSchedule::WithG,
            Schedule::BOnly => projfree::StochasticSchedule::BOnly,
        }
    }
}

fn default_omega_mode() -> OmegaMode {
    OmegaMode::Outside
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    /// Row count for `nuclear_l1`; unused elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Nuclear-norm radius for `nuclear_l1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default = "default_omega_mode")]
    pub omega_mode: OmegaMode,
    pub sigma_list: Vec<f64>,
    #[serde(rename = "T_list")]
    pub t_list: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    pub output_dir: PathBuf,
    /// Seed for drawing the anchor ω / W. Noise uses `seeds`.
    #[serde(default)]
    pub problem_seed: u64,
    #[serde(default)]
    pub stochastic_schedule: Schedule,
    /// Penalty weight for `num3_demo` (default `n`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Per-link capacity for `num3_demo` (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<f64>,
    /// Record wall-clock times in the CSV. Off by default so that repeated
    /// runs produce byte-identical output.
    #[serde(default)]
    pub record_wallclock: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn rows(&self) -> usize {
        match self.experiment {
            Experiment::NuclearL1 => self.m.unwrap_or(self.n),
            _ => 1,
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau.unwrap_or(1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma.unwrap_or(self.n as f64)
    }

    pub fn capacity(&self) -> f64 {
        self.capacity.unwrap_or(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(HarnessError::config(msg));
        if self.n == 0 {
            return fail("n must be positive".into());
        }
        if self.sigma_list.is_empty() {
            return fail("sigma_list is empty".into());
        }
        if let Some(s) = self.sigma_list.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return fail(format!("sigma values must be nonnegative, got {s}"));
        }
        if self.t_list.is_empty() {
            return fail("T_list is empty".into());
        }
        if self.t_list[0] == 0 {
            return fail("T values must be positive".into());
        }
        if self.t_list.windows(2).any(|w| w[0] >= w[1]) {
            return fail("T_list must be strictly increasing".into());
        }
        if self.seeds.is_empty() {
            return fail("seeds is empty".into());
        }
        if self.algorithms.is_empty() {
            return fail("algorithms is empty".into());
        }
        match self.experiment {
            Experiment::HypercubeL1 => {
                if self.m.is_some() || self.tau.is_some() {
                    return fail("m and tau only apply to nuclear_l1".into());
                }
            }
            Experiment::NuclearL1 => {
                if self.m == Some(0) {
                    return fail("m must be positive".into());
                }
                match self.tau {
                    Some(t) if t.is_finite() && t > 0.0 => {}
                    Some(t) => return fail(format!("tau must be positive, got {t}")),
                    None => return fail("nuclear_l1 needs tau".into()),
                }
                if self.n.max(self.rows()) > projfree::linalg::MAX_SVD_DIM {
                    return fail(format!("matrix dimensions are limited to {}", projfree::linalg::MAX_SVD_DIM));
                }
            }
            Experiment::Num3Demo => {
                if self.n < 2 {
                    return fail("num3_demo needs at least two users".into());
                }
                if self.algorithms.contains(&Algorithm::Pgd) {
                    return fail("num3_demo runs on a vertex polytope, which has no projection; use pfw only".into());
                }
                if !(self.gamma().is_finite() && self.gamma() > 0.0) {
                    return fail("gamma must be positive".into());
                }
                if !(self.capacity().is_finite() && self.capacity() > 0.0) {
                    return fail("capacity must be positive".into());
                }
            }
        }
        Ok(())
    }
}
