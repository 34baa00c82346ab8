//! Projected subgradient descent, `x_{k+1} = π_X(x_k - β g_k)`, and its
//! stochastic variant. Returns the average of `x_0 .. x_T` (T + 1 points).

use std::time::Instant;

use rand::SeedableRng;

use super::{check_iterate, check_start, IterationRecord, RunParams, RunTrace};
use crate::error::{Error, Result};
use crate::oracle::{FeasibleSet, Objective, OracleRng, StochasticOracle};
use crate::vector::RealVector;

#[derive(Debug)]
pub struct PgdStep<'a> {
    pub k: usize,
    pub x: &'a RealVector,
    pub subgradient: &'a RealVector,
    pub x_next: &'a RealVector,
}

pub fn pgd_run<O, S>(objective: &O, set: &S, beta: f64, horizon: usize, x0: &RealVector) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    S: FeasibleSet + ?Sized,
{
    pgd_run_observed(objective, set, beta, horizon, x0, |_| {})
}

pub fn pgd_run_observed<O, S, F>(
    objective: &O,
    set: &S,
    beta: f64,
    horizon: usize,
    x0: &RealVector,
    observer: F,
) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PgdStep<'_>),
{
    run(|x| objective.value(x), |x| objective.subgradient(x), set, beta, horizon, x0, observer)
}

/// Stochastic projected subgradient descent, seeded from `oracle.seed()`.
pub fn sgd_run<O, S>(oracle: &O, set: &S, beta: f64, horizon: usize, x0: &RealVector) -> Result<RunTrace>
where
    O: StochasticOracle + ?Sized,
    S: FeasibleSet + ?Sized,
{
    sgd_run_observed(oracle, set, beta, horizon, x0, |_| {})
}

pub fn sgd_run_observed<O, S, F>(
    oracle: &O,
    set: &S,
    beta: f64,
    horizon: usize,
    x0: &RealVector,
    observer: F,
) -> Result<RunTrace>
where
    O: StochasticOracle + ?Sized,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PgdStep<'_>),
{
    let mut rng = OracleRng::seed_from_u64(oracle.seed());
    let objective = oracle.objective();
    run(
        |x| objective.value(x),
        |x| oracle.sample_subgradient(x, &mut rng),
        set,
        beta,
        horizon,
        x0,
        observer,
    )
}

fn run<V, G, S, F>(
    value: V,
    mut subgradient: G,
    set: &S,
    beta: f64,
    horizon: usize,
    x0: &RealVector,
    mut observer: F,
) -> Result<RunTrace>
where
    V: Fn(&RealVector) -> Result<f64>,
    G: FnMut(&RealVector) -> Result<RealVector>,
    S: FeasibleSet + ?Sized,
    F: FnMut(&PgdStep<'_>),
{
    if !set.has_projection() {
        return Err(Error::Unsupported("projected methods need a set with a projection"));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::invalid(format!("step size must be positive, got {beta}")));
    }
    if horizon == 0 {
        return Err(Error::invalid("horizon T must be at least 1"));
    }
    check_start(set, x0)?;
    let start = Instant::now();

    let mut x = x0.clone();
    let mut sum_x = x0.clone();
    let mut per_iter = Vec::with_capacity(horizon);
    for k in 0..horizon {
        let g = subgradient(&x).map_err(|e| e.at_iteration(k))?;
        g.ensure_shape(x0.shape()).map_err(|e| e.at_iteration(k))?;
        let mut step = x.clone();
        step.axpy(-beta, &g)?;
        let x_next = set.project(&step).map_err(|e| e.at_iteration(k))?;
        check_iterate(&x_next, k)?;

        per_iter.push(IterationRecord {
            k,
            f_value: value(&x).map_err(|e| e.at_iteration(k))?,
            drift_norm: None,
            elapsed: start.elapsed(),
        });
        observer(&PgdStep { k, x: &x, subgradient: &g, x_next: &x_next });

        sum_x.axpy(1.0, &x_next)?;
        x = x_next;
    }

    let xbar = sum_x.scaled(1.0 / (horizon + 1) as f64);
    let f_xbar = value(&xbar)?;
    Ok(RunTrace {
        xbar,
        f_xbar,
        per_iter,
        params: RunParams::Pgd { beta, horizon },
        elapsed: start.elapsed(),
    })
}
