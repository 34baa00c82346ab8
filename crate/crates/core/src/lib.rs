//! Projection-free first-order methods for nonsmooth convex optimization.
//!
//! The central solver, [`pfw_run`], minimizes a convex Lipschitz function
//! over a convex set using only a linear minimization oracle (LMO) of the
//! set, never a projection. It reaches the same `O(1/sqrt T)` rate as
//! projected subgradient descent, which ships alongside as a baseline
//! ([`pgd_run`]). Both have stochastic variants driven by a seeded
//! unbiased subgradient oracle.
//!
//! Sets and objectives are traits ([`FeasibleSet`], [`Objective`],
//! [`StochasticOracle`]); the crate ships the hypercube, the nuclear-norm
//! ball and finite-vertex polytopes, plus L1-distance, exact-penalty and
//! max-min-rate objectives.
//!
//! ```
//! use projfree::{pfw_run, Hypercube, L1Distance, PfwParams, RealVector, FeasibleSet, Objective};
//!
//! let cube = Hypercube::new(3).unwrap();
//! let f = L1Distance::new(RealVector::new(vec![2.0, 0.0, -0.5]).unwrap());
//! let params = PfwParams::deterministic(f.lipschitz(), cube.radius(), 2000).unwrap();
//! let trace = pfw_run(&f, &cube, params, cube.center()).unwrap();
//! // optimum value is 1 (at (1, 0, -0.5))
//! assert!(trace.f_xbar - 1.0 <= 3.0 * cube.radius() * f.lipschitz() / 2000f64.sqrt());
//! ```

pub mod algorithms;
pub mod error;
pub mod linalg;
pub mod objectives;
pub mod oracle;
pub mod params;
pub mod sets;
pub mod vector;

pub use algorithms::{
    pfw_run, pfw_run_observed, pfw_run_stochastic, pfw_run_stochastic_observed, pgd_run,
    pgd_run_observed, sgd_run, sgd_run_observed, IterationRecord, PfwStep, PgdStep, RunParams,
    RunTrace,
};
pub use error::{Error, Result};
pub use objectives::{
    hypercube_l1_optimum, lipschitz_extend, GaussianNoise, L1Distance, NegMinRate, Penalized,
    PenaltySpec,
};
pub use oracle::{FeasibleSet, Objective, OracleRng, StochasticOracle};
pub use params::{bounds, pgd_step_size, PfwParams, StochasticSchedule};
pub use sets::{Hypercube, NuclearBall, VertexPolytope};
pub use vector::{inner, RealVector, Shape};
