//! The projection-free subgradient method.
//!
//! ```text
//! y_1 = x_1, Q_0 = 0
//! for k = 1 .. T-1:
//!     Q_k     = Q_{k-1} + y_k - x_k
//!     g_k     ∈ ∂f(y_k)
//!     x_{k+1} = argmin_{x in X} <-Q_k, x>
//!     y_{k+1} = (α y_k + η x_{k+1} - η Q_k - g_k) / (α + η)
//! return (1/T) Σ_{k=1..T} x_k
//! ```
//!
//! Every `x_k` is an LMO output (or the start point), so the average stays
//! feasible without a single projection.

use std::time::Instant;

use rand::SeedableRng;

use super::{check_iterate, check_start, IterationRecord, RunParams, RunTrace};
use crate::error::Result;
use crate::oracle::{FeasibleSet, Objective, OracleRng, StochasticOracle};
use crate::params::PfwParams;
use crate::vector::RealVector;

/// State exposed to an observer after each iteration `k`.
#[derive(Debug)]
pub struct PfwStep<'a> {
    pub k: usize,
    pub alpha: f64,
    pub eta: f64,
    pub x: &'a RealVector,
    pub y: &'a RealVector,
    pub drift: &'a RealVector,
    pub subgradient: &'a RealVector,
    pub x_next: &'a RealVector,
    pub y_next: &'a RealVector,
}

pub fn pfw_run<O, S>(objective: &O, set: &S, params: PfwParams, x1: &RealVector) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    S: FeasibleSet + ?Sized,
{
    pfw_run_observed(objective, set, params, x1, |_| {})
}

pub fn pfw_run_observed<O, S, F>(
    objective: &O,
    set: &S,
    params: PfwParams,
    x1: &RealVector,
    observer: F,
) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PfwStep<'_>),
{
    run(
        |x| objective.value(x),
        |y| objective.subgradient(y),
        set,
        params,
        x1,
        observer,
    )
}

/// Same loop with `g_k` drawn from the oracle. The generator is seeded from
/// `oracle.seed()`, so a fixed seed reproduces the run bit for bit.
pub fn pfw_run_stochastic<O, S>(oracle: &O, set: &S, params: PfwParams, x1: &RealVector) -> Result<RunTrace>
where
    O: StochasticOracle + ?Sized,
    S: FeasibleSet + ?Sized,
{
    pfw_run_stochastic_observed(oracle, set, params, x1, |_| {})
}

pub fn pfw_run_stochastic_observed<O, S, F>(
    oracle: &O,
    set: &S,
    params: PfwParams,
    x1: &RealVector,
    observer: F,
) -> Result<RunTrace>
where
    O: StochasticOracle + ?Sized,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PfwStep<'_>),
{
    let mut rng = OracleRng::seed_from_u64(oracle.seed());
    let objective = oracle.objective();
    run(
        |x| objective.value(x),
        |y| oracle.sample_subgradient(y, &mut rng),
        set,
        params,
        x1,
        observer,
    )
}

fn run<V, G, S, F>(
    value: V,
    mut subgradient: G,
    set: &S,
    params: PfwParams,
    x1: &RealVector,
    mut observer: F,
) -> Result<RunTrace>
where
    V: Fn(&RealVector) -> Result<f64>,
    G: FnMut(&RealVector) -> Result<RealVector>,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PfwStep<'_>),
{
    let params = PfwParams::new(params.alpha, params.eta, params.horizon)?;
    check_start(set, x1)?;
    let start = Instant::now();
    let (alpha, eta) = (params.alpha, params.eta);
    let denom = alpha + eta;

    let mut x = x1.clone();
    let mut y = x1.clone();
    let mut drift = RealVector::zeros(x1.shape());
    let mut sum_x = x1.clone();
    let mut per_iter = Vec::with_capacity(params.horizon.saturating_sub(1));
    let mut neg_drift = RealVector::zeros(x1.shape());

    for k in 1..params.horizon {
        drift.axpy(1.0, &y)?;
        drift.axpy(-1.0, &x)?;
        let g = subgradient(&y).map_err(|e| e.at_iteration(k))?;
        g.ensure_shape(x1.shape()).map_err(|e| e.at_iteration(k))?;

        for (n, q) in neg_drift.as_mut_slice().iter_mut().zip(drift.iter()) {
            *n = -q;
        }
        let x_next = set.lmo(&neg_drift).map_err(|e| e.at_iteration(k))?;
        x_next.ensure_shape(x1.shape()).map_err(|e| e.at_iteration(k))?;
        check_iterate(&x_next, k)?;

        let mut y_next = y.clone();
        {
            let out = y_next.as_mut_slice();
            let (yk, xn, q, gk) = (y.as_slice(), x_next.as_slice(), drift.as_slice(), g.as_slice());
            for i in 0..out.len() {
                out[i] = (alpha * yk[i] + eta * xn[i] - eta * q[i] - gk[i]) / denom;
            }
        }
        check_iterate(&y_next, k)?;

        per_iter.push(IterationRecord {
            k,
            f_value: value(&y).map_err(|e| e.at_iteration(k))?,
            drift_norm: Some(drift.norm()),
            elapsed: start.elapsed(),
        });
        observer(&PfwStep {
            k,
            alpha,
            eta,
            x: &x,
            y: &y,
            drift: &drift,
            subgradient: &g,
            x_next: &x_next,
            y_next: &y_next,
        });

        sum_x.axpy(1.0, &x_next)?;
        x = x_next;
        y = y_next;
    }

    let xbar = sum_x.scaled(1.0 / params.horizon as f64);
    let f_xbar = value(&xbar)?;
    Ok(RunTrace {
        xbar,
        f_xbar,
        per_iter,
        params: RunParams::Pfw(params),
        elapsed: start.elapsed(),
    })
}
