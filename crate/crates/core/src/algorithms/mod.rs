//! Solvers: the projection-free method and the projected baselines.

mod pfw;
mod pgd;

use std::time::Duration;

pub use pfw::{pfw_run, pfw_run_observed, pfw_run_stochastic, pfw_run_stochastic_observed, PfwStep};
pub use pgd::{pgd_run, pgd_run_observed, sgd_run, sgd_run_observed, PgdStep};

use crate::error::{Error, Result};
use crate::oracle::FeasibleSet;
use crate::params::PfwParams;
use crate::vector::RealVector;

/// Iterates are aborted once a coordinate exceeds this magnitude. Correct
/// oracles keep every iterate bounded, so this only trips on oracle bugs.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Tolerance on the membership residual of a user-supplied start point.
pub const START_FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunParams {
    Pfw(PfwParams),
    Pgd { beta: f64, horizon: usize },
}

impl RunParams {
    pub fn horizon(&self) -> usize {
        match *self {
            RunParams::Pfw(p) => p.horizon,
            RunParams::Pgd { horizon, .. } => horizon,
        }
    }
}

/// Diagnostics for one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    /// `f(y_k)` for the projection-free method, `f(x_k)` for PGD.
    pub f_value: f64,
    /// `‖Q_k‖`; absent for PGD.
    pub drift_norm: Option<f64>,
    pub elapsed: Duration,
}

/// Result of a run. Only `xbar` carries a convergence guarantee.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub xbar: RealVector,
    pub f_xbar: f64,
    pub per_iter: Vec<IterationRecord>,
    pub params: RunParams,
    pub elapsed: Duration,
}

impl RunTrace {
    /// Equality of everything except wall-clock timings.
    pub fn same_path(&self, other: &RunTrace) -> bool {
        self.xbar == other.xbar
            && self.f_xbar.to_bits() == other.f_xbar.to_bits()
            && self.params == other.params
            && self.per_iter.len() == other.per_iter.len()
            && self.per_iter.iter().zip(&other.per_iter).all(|(a, b)| {
                a.k == b.k
                    && a.f_value.to_bits() == b.f_value.to_bits()
                    && a.drift_norm.map(f64::to_bits) == b.drift_norm.map(f64::to_bits)
            })
    }
}

fn check_start<S: FeasibleSet + ?Sized>(set: &S, x: &RealVector) -> Result<()> {
    x.ensure_shape(set.shape())?;
    x.check_finite()?;
    match set.membership_residual(x) {
        Ok(r) if r > START_FEASIBILITY_TOL => {
            Err(Error::invalid(format!("start point is infeasible (residual {r:e})")))
        }
        Ok(_) | Err(Error::Unsupported(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

fn check_iterate(x: &RealVector, k: usize) -> Result<()> {
    for (index, &value) in x.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index }.at_iteration(k));
        }
        if value.abs() > DIVERGENCE_GUARD {
            return Err(Error::Diverged { index, value }.at_iteration(k));
        }
    }
    Ok(())
}
