//! Property checks for the set oracles and objectives, with an independent
//! SVD (nalgebra) as the reference for the nuclear-norm ball.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projfree::linalg::{full_svd, Matrix};
use projfree::sets::{hypercube_project, nuclear_lmo, nuclear_project};
use projfree::{FeasibleSet, Hypercube, L1Distance, NuclearBall, Objective, RealVector};

fn reference_singular_values(a: &RealVector) -> Vec<f64> {
    let m = Matrix::from_vector(a).unwrap();
    let dm = DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice());
    let mut s: Vec<f64> = dm.singular_values().iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn random_matrix(m: usize, n: usize, rng: &mut ChaCha8Rng) -> RealVector {
    RealVector::matrix(m, n, (0..m * n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

fn random_nuclear_point(m: usize, n: usize, tau: f64, rng: &mut ChaCha8Rng) -> RealVector {
    let z = random_matrix(m, n, rng);
    let nuc: f64 = reference_singular_values(&z).iter().sum();
    z.scaled(tau * rng.random_range(0.0..1.0) / nuc)
}

#[test]
fn jacobi_singular_values_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for (m, n) in [(8, 6), (6, 8), (10, 10), (3, 1)] {
        for _ in 0..10 {
            let a = random_matrix(m, n, &mut rng);
            let ours = full_svd(&Matrix::from_vector(&a).unwrap()).unwrap().singular_values;
            let theirs = reference_singular_values(&a);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-10 * (1.0 + y));
            }
        }
    }
}

#[test]
fn nuclear_lmo_value_is_minus_tau_sigma_max() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..20 {
        let a = random_matrix(5, 4, &mut rng);
        let tau = rng.random_range(0.5..3.0);
        let x = nuclear_lmo(&a, tau).unwrap();
        let smax = reference_singular_values(&a)[0];
        assert!((a.inner(&x).unwrap() + tau * smax).abs() <= 1e-8);
    }
}

#[test]
fn lmo_certificates_against_random_feasible_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let cube = Hypercube::new(7).unwrap();
    for _ in 0..5 {
        let d = RealVector::new((0..7).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let best = d.inner(&cube.lmo(&d).unwrap()).unwrap();
        for _ in 0..10_000 {
            let z = RealVector::new((0..7).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
            assert!(best <= d.inner(&z).unwrap() + 1e-12);
        }
    }
    let ball = NuclearBall::new(4, 3, 1.5).unwrap();
    for _ in 0..5 {
        let d = random_matrix(4, 3, &mut rng);
        let best = d.inner(&ball.lmo(&d).unwrap()).unwrap();
        for _ in 0..2000 {
            let z = random_nuclear_point(4, 3, 1.5, &mut rng);
            assert!(best <= d.inner(&z).unwrap() + 1e-12);
        }
    }
}

#[test]
fn projections_satisfy_variational_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let ball = NuclearBall::new(4, 5, 1.0).unwrap();
    for _ in 0..10 {
        let z = random_matrix(4, 5, &mut rng).scaled(3.0);
        let p = nuclear_project(&z, 1.0).unwrap();
        let resid = z.sub(&p).unwrap();
        for _ in 0..200 {
            let x = random_nuclear_point(4, 5, 1.0, &mut rng);
            assert!(resid.inner(&x.sub(&p).unwrap()).unwrap() <= 1e-8);
        }
        let nuc: f64 = reference_singular_values(&p).iter().sum();
        assert!((nuc - 1.0).abs() <= 1e-8);
        assert!(ball.membership_residual(&p).unwrap() <= 1e-8);
    }
}

fn vec_strategy(n: usize, scale: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-scale..scale, n)
}

proptest! {
    #[test]
    fn hypercube_projection_is_idempotent_and_nonexpansive(
        a in vec_strategy(6, 4.0),
        b in vec_strategy(6, 4.0),
    ) {
        let a = RealVector::new(a).unwrap();
        let b = RealVector::new(b).unwrap();
        let pa = hypercube_project(&a);
        let pb = hypercube_project(&b);
        prop_assert_eq!(hypercube_project(&pa), pa.clone());
        prop_assert!(pa.distance(&pb).unwrap() <= a.distance(&b).unwrap() + 1e-12);
        // variational inequality against the other projected point
        let lhs = a.sub(&pa).unwrap().inner(&pb.sub(&pa).unwrap()).unwrap();
        prop_assert!(lhs <= 1e-12);
    }

    #[test]
    fn hypercube_lmo_is_feasible_and_within_radius(d in vec_strategy(9, 10.0)) {
        let cube = Hypercube::new(9).unwrap();
        let d = RealVector::new(d).unwrap();
        let x = cube.lmo(&d).unwrap();
        prop_assert_eq!(cube.membership_residual(&x).unwrap(), 0.0);
        prop_assert!(x.norm() <= 3.0 && 3.0 <= cube.radius());
    }

    #[test]
    fn l1_subgradient_inequality_holds(
        w in vec_strategy(5, 2.0),
        x in vec_strategy(5, 2.0),
        y in vec_strategy(5, 3.0),
    ) {
        let f = L1Distance::new(RealVector::new(w).unwrap());
        let x = RealVector::new(x).unwrap();
        let y = RealVector::new(y).unwrap();
        let g = f.subgradient(&x).unwrap();
        prop_assert!(g.norm() <= f.lipschitz() + 1e-12);
        let lin = f.value(&x).unwrap() + g.inner(&y.sub(&x).unwrap()).unwrap();
        prop_assert!(f.value(&y).unwrap() >= lin - 1e-12);
    }

    #[test]
    fn nuclear_projection_is_idempotent(data in vec_strategy(12, 2.0)) {
        let a = RealVector::matrix(3, 4, data).unwrap();
        let p = nuclear_project(&a, 1.0).unwrap();
        let pp = nuclear_project(&p, 1.0 + 1e-9).unwrap();
        prop_assert!(p.distance(&pp).unwrap() <= 1e-9);
    }
}
