//! Step-size schedules and the matching error bounds.
//!
//! All functions here are pure: equal inputs give bit-identical outputs.

use crate::error::{Error, Result};

/// Constants of the projection-free method: the proximal weight `alpha`,
/// the drift weight `eta` and the horizon `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfwParams {
    pub alpha: f64,
    pub eta: f64,
    pub horizon: usize,
}

/// Which stochastic schedule to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StochasticSchedule {
    /// `eta = G / (2 R sqrt T)`; needs the exact Lipschitz constant.
    WithG,
    /// `eta = 2 B / (R sqrt T)`; only the second-moment bound is known.
    BOnly,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn horizon_ok(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::invalid("horizon T must be at least 1"));
    }
    Ok(())
}

impl PfwParams {
    pub fn new(alpha: f64, eta: f64, horizon: usize) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("eta", eta)?;
        horizon_ok(horizon)?;
        Ok(PfwParams { alpha, eta, horizon })
    }

    /// `alpha = G sqrt(T) / R`, `eta = G / (2 R sqrt(T))`.
    pub fn deterministic(g: f64, r: f64, t: usize) -> Result<Self> {
        positive("G", g)?;
        positive("R", r)?;
        horizon_ok(t)?;
        let st = (t as f64).sqrt();
        PfwParams::new(g * st / r, g / (2.0 * r * st), t)
    }

    /// `alpha = B sqrt(T) / R` and `eta` per `schedule`.
    pub fn stochastic(g: f64, b: f64, r: f64, t: usize, schedule: StochasticSchedule) -> Result<Self> {
        positive("G", g)?;
        positive("B", b)?;
        positive("R", r)?;
        horizon_ok(t)?;
        if b < g {
            return Err(Error::invalid(format!("B ({b}) must be at least G ({g})")));
        }
        let st = (t as f64).sqrt();
        let eta = match schedule {
            StochasticSchedule::WithG => g / (2.0 * r * st),
            StochasticSchedule::BOnly => 2.0 * b / (r * st),
        };
        PfwParams::new(b * st / r, eta, t)
    }
}

/// Projected subgradient step `R / (G sqrt T)`. Pass `B` for the
/// stochastic variant.
pub fn pgd_step_size(g: f64, r: f64, t: usize) -> Result<f64> {
    positive("G", g)?;
    positive("R", r)?;
    horizon_ok(t)?;
    Ok(r / (g * (t as f64).sqrt()))
}

/// Guaranteed suboptimality bounds on the averaged iterate.
pub mod bounds {
    use super::StochasticSchedule;

    /// Projection-free, exact subgradients: `3 R G / sqrt T`.
    pub fn pfw(g: f64, r: f64, t: usize) -> f64 {
        3.0 * r * g / (t as f64).sqrt()
    }

    /// Projected subgradient descent: `R G / sqrt T`.
    pub fn pgd(g: f64, r: f64, t: usize) -> f64 {
        r * g / (t as f64).sqrt()
    }

    /// Projection-free, stochastic subgradients (bound in expectation).
    /// `(B R + 2 G R) / sqrt T` with the `WithG` schedule, `3 B R / sqrt T`
    /// with `BOnly`.
    pub fn pfw_stochastic(g: f64, b: f64, r: f64, t: usize, schedule: StochasticSchedule) -> f64 {
        let st = (t as f64).sqrt();
        match schedule {
            StochasticSchedule::WithG => (b * r + 2.0 * g * r) / st,
            StochasticSchedule::BOnly => 3.0 * b * r / st,
        }
    }

    /// Stochastic projected subgradient descent: `B R / sqrt T`.
    pub fn sgd(b: f64, r: f64, t: usize) -> f64 {
        b * r / (t as f64).sqrt()
    }
}
