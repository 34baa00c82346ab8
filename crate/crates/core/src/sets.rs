//! Concrete feasible sets.
//!
//! Tie-breaking is deterministic everywhere: the hypercube LMO returns 0 on
//! coordinates where the direction vanishes, the nuclear-ball LMO returns
//! the zero matrix for a zero direction, and the polytope LMO returns the
//! lowest-index minimizing vertex.

use crate::error::{Error, Result};
use crate::linalg::{full_svd, top_singular_triplet, Matrix};
use crate::oracle::FeasibleSet;
use crate::vector::{RealVector, Shape};

/// The box `[-1, 1]^n`, enclosed in the ball of radius `2 sqrt n` around 0.
#[derive(Debug, Clone)]
pub struct Hypercube {
    n: usize,
    center: RealVector,
}

impl Hypercube {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("hypercube dimension must be positive"));
        }
        Ok(Hypercube { n, center: RealVector::zeros(Shape::Vector(n)) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// `argmin_{x in [-1,1]^n} <d, x>`: `-sign(d_i)` per coordinate, 0 where `d_i = 0`.
pub fn hypercube_lmo(d: &RealVector) -> RealVector {
    d.map(|v| {
        if v > 0.0 {
            -1.0
        } else if v < 0.0 {
            1.0
        } else {
            0.0
        }
    })
}

/// Coordinate-wise clamp to `[-1, 1]`.
pub fn hypercube_project(z: &RealVector) -> RealVector {
    z.map(|v| v.clamp(-1.0, 1.0))
}

impl FeasibleSet for Hypercube {
    fn shape(&self) -> Shape {
        Shape::Vector(self.n)
    }

    fn lmo(&self, direction: &RealVector) -> Result<RealVector> {
        direction.ensure_shape(self.shape())?;
        Ok(hypercube_lmo(direction))
    }

    fn has_projection(&self) -> bool {
        true
    }

    fn project(&self, point: &RealVector) -> Result<RealVector> {
        point.ensure_shape(self.shape())?;
        Ok(hypercube_project(point))
    }

    fn center(&self) -> &RealVector {
        &self.center
    }

    fn radius(&self) -> f64 {
        2.0 * (self.n as f64).sqrt()
    }

    /// Largest violation `max_i (|x_i| - 1)^+`.
    fn membership_residual(&self, x: &RealVector) -> Result<f64> {
        x.ensure_shape(self.shape())?;
        Ok((x.norm_inf() - 1.0).max(0.0))
    }
}

/// `{A in R^{m x n} : ‖A‖_* ≤ tau}`, centered at 0 with radius `tau`
/// (Frobenius norm is bounded by the nuclear norm).
#[derive(Debug, Clone)]
pub struct NuclearBall {
    rows: usize,
    cols: usize,
    tau: f64,
    center: RealVector,
}

impl NuclearBall {
    pub fn new(rows: usize, cols: usize, tau: f64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::invalid(format!("tau must be positive, got {tau}")));
        }
        Ok(NuclearBall { rows, cols, tau, center: RealVector::zeros(Shape::Matrix(rows, cols)) })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// `argmin_{‖X‖_* ≤ tau} <A, X>_F = -tau u1 v1ᵀ`, where `(u1, s1, v1)` is the
/// leading singular triplet of `A`. The zero matrix maps to 0.
pub fn nuclear_lmo(a: &RealVector, tau: f64) -> Result<RealVector> {
    let mat = Matrix::from_vector(a)?;
    let t = top_singular_triplet(&mat)?;
    if t.degenerate {
        return Ok(RealVector::zeros(a.shape()));
    }
    let (m, n) = (mat.rows(), mat.cols());
    let mut out = Vec::with_capacity(m * n);
    for &ui in &t.u1 {
        for &vj in &t.v1 {
            out.push(-tau * ui * vj);
        }
    }
    RealVector::matrix(m, n, out)
}

/// Threshold `lambda ≥ 0` with `Σ max(0, s_i - lambda) = tau`, for singular
/// values sorted in descending order summing to more than `tau`.
///
/// Solved exactly on the active prefix: with `S_k` the sum of the `k`
/// largest values, the active count is the largest `k` for which
/// `s_k > (S_k - tau) / k`, and then `lambda = (S_k - tau) / k`.
pub fn water_filling_threshold(sorted_desc: &[f64], tau: f64) -> f64 {
    let mut prefix = 0.0;
    let mut lambda = 0.0;
    for (i, &s) in sorted_desc.iter().enumerate() {
        prefix += s;
        let candidate = (prefix - tau) / (i + 1) as f64;
        if s > candidate {
            lambda = candidate;
        } else {
            break;
        }
    }
    lambda.max(0.0)
}

/// Euclidean projection onto the nuclear-norm ball by singular-value
/// soft-thresholding.
pub fn nuclear_project(a: &RealVector, tau: f64) -> Result<RealVector> {
    let mat = Matrix::from_vector(a)?;
    let svd = full_svd(&mat)?;
    if svd.nuclear_norm() <= tau {
        return Ok(a.clone());
    }
    let lambda = water_filling_threshold(&svd.singular_values, tau);
    let shrunk: Vec<f64> = svd.singular_values.iter().map(|&s| (s - lambda).max(0.0)).collect();
    svd.recompose(&shrunk).into_vector()
}

impl FeasibleSet for NuclearBall {
    fn shape(&self) -> Shape {
        Shape::Matrix(self.rows, self.cols)
    }

    fn lmo(&self, direction: &RealVector) -> Result<RealVector> {
        direction.ensure_shape(self.shape())?;
        nuclear_lmo(direction, self.tau)
    }

    fn has_projection(&self) -> bool {
        true
    }

    fn project(&self, point: &RealVector) -> Result<RealVector> {
        point.ensure_shape(self.shape())?;
        nuclear_project(point, self.tau)
    }

    fn center(&self) -> &RealVector {
        &self.center
    }

    fn radius(&self) -> f64 {
        self.tau
    }

    /// `(‖x‖_* - tau)^+`
    fn membership_residual(&self, x: &RealVector) -> Result<f64> {
        x.ensure_shape(self.shape())?;
        let nuc = full_svd(&Matrix::from_vector(x)?)?.nuclear_norm();
        Ok((nuc - self.tau).max(0.0))
    }
}

/// Convex hull of a finite vertex list. The first vertex is the center.
#[derive(Debug, Clone)]
pub struct VertexPolytope {
    vertices: Vec<RealVector>,
    radius: f64,
}

impl VertexPolytope {
    pub fn new(vertices: Vec<RealVector>) -> Result<Self> {
        let first = vertices.first().ok_or_else(|| Error::invalid("polytope needs at least one vertex"))?;
        let shape = first.shape();
        let mut radius: f64 = 0.0;
        for v in &vertices {
            v.ensure_shape(shape)?;
            radius = radius.max(v.distance(first)?);
        }
        Ok(VertexPolytope { vertices, radius })
    }

    pub fn vertices(&self) -> &[RealVector] {
        &self.vertices
    }
}

/// Vertex minimizing `<d, v>`, lowest index on ties.
pub fn polytope_lmo(vertices: &[RealVector], d: &RealVector) -> Result<RealVector> {
    let mut best: Option<(f64, &RealVector)> = None;
    for v in vertices {
        let score = v.inner(d)?;
        match best {
            Some((b, _)) if score >= b => {}
            _ => best = Some((score, v)),
        }
    }
    best.map(|(_, v)| v.clone()).ok_or_else(|| Error::invalid("empty vertex list"))
}

impl FeasibleSet for VertexPolytope {
    fn shape(&self) -> Shape {
        self.vertices[0].shape()
    }

    fn lmo(&self, direction: &RealVector) -> Result<RealVector> {
        polytope_lmo(&self.vertices, direction)
    }

    fn center(&self) -> &RealVector {
        &self.vertices[0]
    }

    fn radius(&self) -> f64 {
        self.radius
    }

    fn membership_residual(&self, _x: &RealVector) -> Result<f64> {
        Err(Error::Unsupported("membership test for vertex polytopes"))
    }
}
