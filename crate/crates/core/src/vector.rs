//! Dense real vectors with an attached shape tag.
//!
//! Matrices are stored flattened in row-major order. Every algorithm in this
//! crate works on the flat coordinates; the shape only matters to the sets
//! and oracles that need to reshape (the nuclear-norm ball, for instance).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Vector(usize),
    /// `rows x cols`, row-major.
    Matrix(usize, usize),
}

impl Shape {
    pub fn len(&self) -> usize {
        match *self {
            Shape::Vector(n) => n,
            Shape::Matrix(m, n) => m * n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Vector(n) => write!(f, "vector({n})"),
            Shape::Matrix(m, n) => write!(f, "matrix({m}x{n})"),
        }
    }
}

/// A point in R^n (or R^{m x n}, flattened).
///
/// Constructors reject NaN and infinite entries. The arithmetic helpers
/// do not re-check; solvers call [`RealVector::check_finite`] where an
/// iterate might have blown up.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    data: Vec<f64>,
    shape: Shape,
}

impl RealVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        let n = data.len();
        Self::with_shape(data, Shape::Vector(n))
    }

    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        Self::with_shape(data, Shape::Matrix(rows, cols))
    }

    pub fn with_shape(data: Vec<f64>, shape: Shape) -> Result<Self> {
        if data.len() != shape.len() {
            return Err(Error::Dimension {
                expected: shape,
                found: Shape::Vector(data.len()),
            });
        }
        let v = RealVector { data, shape };
        v.check_finite()?;
        Ok(v)
    }

    pub fn zeros(shape: Shape) -> Self {
        RealVector {
            data: vec![0.0; shape.len()],
            shape,
        }
    }

    pub fn filled(shape: Shape, value: f64) -> Self {
        RealVector {
            data: vec![value; shape.len()],
            shape,
        }
    }

    /// Builds a vector from data known to be finite and of the right length.
    pub(crate) fn from_parts(data: Vec<f64>, shape: Shape) -> Self {
        debug_assert_eq!(data.len(), shape.len());
        RealVector { data, shape }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    pub fn ensure_shape(&self, expected: Shape) -> Result<()> {
        if self.shape != expected {
            return Err(Error::Dimension {
                expected,
                found: self.shape,
            });
        }
        Ok(())
    }

    /// Euclidean (Frobenius, for matrices) inner product.
    pub fn inner(&self, other: &RealVector) -> Result<f64> {
        other.ensure_shape(self.shape)?;
        Ok(dot(&self.data, &other.data))
    }

    pub fn norm(&self) -> f64 {
        dot(&self.data, &self.data).sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn distance(&self, other: &RealVector) -> Result<f64> {
        other.ensure_shape(self.shape)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    pub fn sub(&self, other: &RealVector) -> Result<RealVector> {
        other.ensure_shape(self.shape)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RealVector::from_parts(data, self.shape))
    }

    pub fn add(&self, other: &RealVector) -> Result<RealVector> {
        other.ensure_shape(self.shape)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RealVector::from_parts(data, self.shape))
    }

    pub fn scaled(&self, factor: f64) -> RealVector {
        RealVector::from_parts(self.data.iter().map(|v| v * factor).collect(), self.shape)
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &RealVector) -> Result<()> {
        other.ensure_shape(self.shape)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealVector {
        RealVector::from_parts(self.data.iter().map(|&v| f(v)).collect(), self.shape)
    }
}

impl std::ops::Index<usize> for RealVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

/// Inner product of two vectors, checking shapes.
pub fn inner(a: &RealVector, b: &RealVector) -> Result<f64> {
    a.inner(b)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_small_cases() {
        let a = RealVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        let b = RealVector::new(vec![4.0, 5.0, 6.0]).unwrap();
        assert_eq!(inner(&a, &b).unwrap(), 32.0);
        let z = RealVector::zeros(Shape::Vector(3));
        assert_eq!(inner(&a, &z).unwrap(), 0.0);
    }

    #[test]
    fn inner_matches_naive_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let xs: Vec<f64> = (0..8).map(|_| rng.random_range(-5.0..5.0)).collect();
            let ys: Vec<f64> = (0..8).map(|_| rng.random_range(-5.0..5.0)).collect();
            let mut expected = 0.0;
            for i in 0..8 {
                expected += xs[i] * ys[i];
            }
            let a = RealVector::new(xs).unwrap();
            let b = RealVector::new(ys).unwrap();
            assert!((a.inner(&b).unwrap() - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn frobenius_inner_on_matrices() {
        let a = RealVector::matrix(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(a.inner(&a).unwrap(), 30.0);
        let v = RealVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(a.inner(&v), Err(Error::Dimension { .. })));
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            RealVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(RealVector::new(vec![f64::INFINITY]).is_err());
        assert!(matches!(
            RealVector::matrix(2, 3, vec![0.0; 5]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = RealVector::new(vec![1.0, 2.0]).unwrap();
        let b = RealVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::Dimension { .. })));
        assert!(a.sub(&b).is_err());
    }
}
