//! Oracle contracts shared by every solver.
//!
//! A solver only sees a feasible set through its linear minimization oracle
//! (and, for the projected baselines, its Euclidean projection), and an
//! objective through its value and subgradient.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vector::{RealVector, Shape};

/// Random source handed to stochastic oracles. Seeded from a `u64` by the
/// caller; nothing in this crate touches a global generator.
pub type OracleRng = ChaCha8Rng;

/// A closed convex set contained in a Euclidean ball `B(center, radius)`,
/// with `center` itself a member of the set.
pub trait FeasibleSet {
    fn shape(&self) -> Shape;

    /// Returns a point of the set minimizing `<direction, x>`.
    fn lmo(&self, direction: &RealVector) -> Result<RealVector>;

    fn has_projection(&self) -> bool {
        false
    }

    /// Euclidean projection onto the set, when the set provides one.
    fn project(&self, _point: &RealVector) -> Result<RealVector> {
        Err(Error::Unsupported("set has no projection"))
    }

    fn center(&self) -> &RealVector;

    fn radius(&self) -> f64;

    /// Upper bound on the distance between two members: `2 * radius`.
    fn diameter(&self) -> f64 {
        2.0 * self.radius()
    }

    /// How far `x` lies outside the set in the set's natural measure
    /// (0 for members). Used for feasibility checks, not by the solvers.
    fn membership_residual(&self, x: &RealVector) -> Result<f64>;
}

/// A convex function with a first-order oracle, `G`-Lipschitz on the whole
/// space.
pub trait Objective {
    fn value(&self, x: &RealVector) -> Result<f64>;

    /// Some element of the subdifferential at `x`. Implementations document
    /// which one they pick when it is not unique.
    fn subgradient(&self, x: &RealVector) -> Result<RealVector>;

    /// Bound `G` on the norm of every subgradient.
    fn lipschitz(&self) -> f64;
}

/// A noisy but unbiased subgradient oracle with bounded second moment.
pub trait StochasticOracle {
    fn objective(&self) -> &dyn Objective;

    /// Draws `ĝ(x)` with `E[ĝ(x)] ∈ ∂f(x)` and `E‖ĝ(x)‖² ≤ B²`.
    fn sample_subgradient(&self, x: &RealVector, rng: &mut OracleRng) -> Result<RealVector>;

    /// The bound `B`; at least `objective().lipschitz()`.
    fn second_moment_bound(&self) -> f64;

    /// Seed for the generator a run creates for this oracle.
    fn seed(&self) -> u64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn value(&self, x: &RealVector) -> Result<f64> {
        (**self).value(x)
    }

    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        (**self).subgradient(x)
    }

    fn lipschitz(&self) -> f64 {
        (**self).lipschitz()
    }
}
