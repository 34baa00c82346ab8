//! Shipped objectives, the Gaussian noise oracle, the Lipschitz extension
//! and the exact-penalty construction.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::oracle::{Objective, OracleRng, StochasticOracle};
use crate::vector::{RealVector, Shape};

/// `f(x) = ‖x - ω‖₁` (entrywise for matrices). `G = sqrt(dim)`.
///
/// Subgradient: `sign(x_i - ω_i)` with `sign(0) = 0`.
#[derive(Debug, Clone)]
pub struct L1Distance {
    omega: RealVector,
}

impl L1Distance {
    pub fn new(omega: RealVector) -> Self {
        L1Distance { omega }
    }

    pub fn anchor(&self) -> &RealVector {
        &self.omega
    }
}

pub fn l1_value_subgrad(omega: &RealVector, x: &RealVector) -> Result<(f64, RealVector)> {
    let diff = x.sub(omega)?;
    let value = diff.norm_l1();
    let g = diff.map(|d| {
        if d > 0.0 {
            1.0
        } else if d < 0.0 {
            -1.0
        } else {
            0.0
        }
    });
    Ok((value, g))
}

impl Objective for L1Distance {
    fn value(&self, x: &RealVector) -> Result<f64> {
        Ok(x.sub(&self.omega)?.norm_l1())
    }

    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        Ok(l1_value_subgrad(&self.omega, x)?.1)
    }

    fn lipschitz(&self) -> f64 {
        (self.omega.len() as f64).sqrt()
    }
}

/// Minimizer and minimum of `‖x - ω‖₁` over `[-1, 1]^n`.
pub fn hypercube_l1_optimum(omega: &RealVector) -> (RealVector, f64) {
    let x_star = omega.map(|w| w.clamp(-1.0, 1.0));
    let f_star = omega.iter().map(|w| (w.abs() - 1.0).max(0.0)).sum();
    (x_star, f_star)
}

/// `ĝ(x) = g(x) + N`, `N ~ Normal(0, σ² I)`, with `B = sqrt(G² + dim σ²)`.
///
/// Draws one standard normal per coordinate, in coordinate order, through
/// `rand_distr::StandardNormal` (ziggurat on the caller's ChaCha8 stream).
#[derive(Debug, Clone)]
pub struct GaussianNoise<O> {
    base: O,
    sigma: f64,
    dim: usize,
    seed: u64,
}

impl<O: Objective> GaussianNoise<O> {
    pub fn new(base: O, shape: Shape, sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::invalid(format!("sigma must be nonnegative, got {sigma}")));
        }
        Ok(GaussianNoise { base, sigma, dim: shape.len(), seed })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn base(&self) -> &O {
        &self.base
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Adds `σ N(0, I)` noise to an exact subgradient. With `σ = 0` nothing is
/// drawn and the subgradient is returned untouched.
pub fn noisy_subgrad(
    base: &dyn Objective,
    sigma: f64,
    x: &RealVector,
    rng: &mut OracleRng,
) -> Result<RealVector> {
    let mut g = base.subgradient(x)?;
    if sigma > 0.0 {
        for gi in g.as_mut_slice() {
            let z: f64 = StandardNormal.sample(rng);
            *gi += sigma * z;
        }
    }
    Ok(g)
}

impl<O: Objective> StochasticOracle for GaussianNoise<O> {
    fn objective(&self) -> &dyn Objective {
        &self.base
    }

    fn sample_subgradient(&self, x: &RealVector, rng: &mut OracleRng) -> Result<RealVector> {
        if x.len() != self.dim {
            return Err(Error::Dimension { expected: Shape::Vector(self.dim), found: x.shape() });
        }
        noisy_subgrad(&self.base, self.sigma, x, rng)
    }

    fn second_moment_bound(&self) -> f64 {
        let g = self.base.lipschitz();
        (g * g + self.dim as f64 * self.sigma * self.sigma).sqrt()
    }

    fn seed(&self) -> u64 {
        self.seed
    }
}

/// Lipschitz extension `min_{x in candidates} f(x) + G ‖x - w‖` of a function
/// known only on a feasible set, evaluated over a finite candidate set.
///
/// This is an upper bound on the infimum over the whole set and equals it
/// when the candidates are the set. At a candidate `w` it returns `f(w)`
/// exactly.
pub fn lipschitz_extend<F>(f: F, g: f64, candidates: &[RealVector], w: &RealVector) -> Result<f64>
where
    F: Fn(&RealVector) -> Result<f64>,
{
    if candidates.is_empty() {
        return Err(Error::invalid("lipschitz_extend needs at least one candidate"));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::invalid(format!("G must be positive, got {g}")));
    }
    let mut best = f64::INFINITY;
    for x in candidates {
        best = best.min(f(x)? + g * x.distance(w)?);
    }
    Ok(best)
}

/// Linear inequality constraints `<a_j, x> ≤ b_j` folded into the objective
/// with weight `gamma`.
#[derive(Debug, Clone)]
pub struct PenaltySpec {
    pub constraints: Vec<(RealVector, f64)>,
    pub gamma: f64,
}

impl PenaltySpec {
    pub fn new(constraints: Vec<(RealVector, f64)>, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::invalid(format!("gamma must be nonnegative, got {gamma}")));
        }
        if let Some((a0, _)) = constraints.first() {
            for (a, b) in &constraints {
                a.ensure_shape(a0.shape())?;
                if !b.is_finite() {
                    return Err(Error::invalid("constraint offsets must be finite"));
                }
            }
        }
        Ok(PenaltySpec { constraints, gamma })
    }

    /// `max_j <a_j, x> - b_j` with the smallest maximizing index, or `None`
    /// with no constraints.
    fn worst(&self, x: &RealVector) -> Result<Option<(usize, f64)>> {
        let mut worst: Option<(usize, f64)> = None;
        for (j, (a, b)) in self.constraints.iter().enumerate() {
            let viol = a.inner(x)? - b;
            match worst {
                Some((_, w)) if viol <= w => {}
                _ => worst = Some((j, viol)),
            }
        }
        Ok(worst)
    }
}

/// Penalized value and subgradient:
/// `f(x) + γ max(0, max_j <a_j,x> - b_j)`, adding `γ a_{j*}` to the base
/// subgradient when the penalty is active.
pub fn penalize(base: &dyn Objective, spec: &PenaltySpec, x: &RealVector) -> Result<(f64, RealVector)> {
    let mut value = base.value(x)?;
    let mut g = base.subgradient(x)?;
    if let Some((j, viol)) = spec.worst(x)? {
        if viol > 0.0 && spec.gamma > 0.0 {
            value += spec.gamma * viol;
            g.axpy(spec.gamma, &spec.constraints[j].0)?;
        }
    }
    Ok((value, g))
}

/// A base objective plus an exact penalty. `G = G_base + γ max_j ‖a_j‖`.
#[derive(Debug, Clone)]
pub struct Penalized<O> {
    base: O,
    spec: PenaltySpec,
}

impl<O: Objective> Penalized<O> {
    pub fn new(base: O, spec: PenaltySpec) -> Self {
        Penalized { base, spec }
    }
}

impl<O: Objective> Objective for Penalized<O> {
    fn value(&self, x: &RealVector) -> Result<f64> {
        Ok(penalize(&self.base, &self.spec, x)?.0)
    }

    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        Ok(penalize(&self.base, &self.spec, x)?.1)
    }

    fn lipschitz(&self) -> f64 {
        let amax = self.spec.constraints.iter().map(|(a, _)| a.norm()).fold(0.0, f64::max);
        self.base.lipschitz() + self.spec.gamma * amax
    }
}

/// Negated max-min fairness utility, `f(x) = -min_i x_i`. `G = 1`.
///
/// Subgradient: `-e_i` for the smallest index attaining the minimum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NegMinRate;

impl Objective for NegMinRate {
    fn value(&self, x: &RealVector) -> Result<f64> {
        if x.is_empty() {
            return Err(Error::invalid("empty rate vector"));
        }
        Ok(-x.iter().cloned().fold(f64::INFINITY, f64::min))
    }

    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        if x.is_empty() {
            return Err(Error::invalid("empty rate vector"));
        }
        let mut idx = 0;
        for (i, &v) in x.iter().enumerate() {
            if v < x[idx] {
                idx = i;
            }
        }
        let mut g = RealVector::zeros(x.shape());
        g.as_mut_slice()[idx] = -1.0;
        Ok(g)
    }

    fn lipschitz(&self) -> f64 {
        1.0
    }
}
