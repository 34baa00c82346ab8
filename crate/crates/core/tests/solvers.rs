use projfree::{
    bounds, hypercube_l1_optimum, pfw_run, pfw_run_observed, pfw_run_stochastic, pgd_run,
    pgd_run_observed, pgd_step_size, sgd_run, Error, FeasibleSet, GaussianNoise, Hypercube,
    L1Distance, NuclearBall, Objective, PfwParams, RealVector, Result, Shape, StochasticOracle,
    StochasticSchedule, VertexPolytope,
};

fn v(xs: &[f64]) -> RealVector {
    RealVector::new(xs.to_vec()).unwrap()
}

fn det_params(f: &dyn Objective, set: &dyn FeasibleSet, t: usize) -> PfwParams {
    PfwParams::deterministic(f.lipschitz(), set.radius(), t).unwrap()
}

#[test]
fn single_iteration_returns_start_point() {
    let cube = Hypercube::new(4).unwrap();
    let f = L1Distance::new(v(&[3.0, -2.0, 0.1, 0.0]));
    let x1 = v(&[0.5, -0.5, 1.0, 0.0]);
    let trace = pfw_run(&f, &cube, det_params(&f, &cube, 1), &x1).unwrap();
    assert_eq!(trace.xbar, x1);
    assert!(trace.per_iter.is_empty());
    assert_eq!(trace.f_xbar, f.value(&x1).unwrap());
}

#[test]
fn hypercube_outside_anchor_meets_bound() {
    let n = 10;
    let cube = Hypercube::new(n).unwrap();
    let omega = v(&[2.0; 10]);
    let f = L1Distance::new(omega.clone());
    let (_, f_star) = hypercube_l1_optimum(&omega);
    let t = 10_000;
    let trace = pfw_run(&f, &cube, det_params(&f, &cube, t), cube.center()).unwrap();
    let err = trace.f_xbar - f_star;
    // 3 * 2 sqrt10 * sqrt10 / 100 = 0.6
    let bound = bounds::pfw(f.lipschitz(), cube.radius(), t);
    assert!((bound - 0.6).abs() < 1e-12);
    assert!(err >= -1e-9 && err <= bound, "error {err} bound {bound}");
}

#[test]
fn hypercube_inside_anchor_against_grid_search() {
    let cube = Hypercube::new(2).unwrap();
    let f = L1Distance::new(v(&[0.0, 0.0]));
    // grid over [-1, 1]^2 at resolution 1e-3
    let mut grid_min = f64::INFINITY;
    for i in 0..=2000 {
        for j in (0..=2000).step_by(40) {
            let p = v(&[-1.0 + i as f64 * 1e-3, -1.0 + j as f64 * 1e-3]);
            grid_min = grid_min.min(f.value(&p).unwrap());
        }
    }
    let mut last = f64::INFINITY;
    for t in [100, 1000, 10_000] {
        let trace = pfw_run(&f, &cube, det_params(&f, &cube, t), cube.center()).unwrap();
        let err = trace.f_xbar - grid_min;
        assert!(err <= bounds::pfw(f.lipschitz(), cube.radius(), t));
        last = err;
    }
    assert!(last < 0.05, "error at T=10000 is {last}");
}

#[test]
fn drift_and_y_update_identities_hold() {
    let cube = Hypercube::new(6).unwrap();
    let f = L1Distance::new(v(&[1.5, -0.2, 0.7, -3.0, 0.0, 2.0]));
    let params = det_params(&f, &cube, 1000);
    let mut sum = RealVector::zeros(Shape::Vector(6));
    let mut max_q = 0.0f64;
    let mut max_y = 0.0f64;
    let mut steps = 0;
    pfw_run_observed(&f, &cube, params, cube.center(), |s| {
        sum.axpy(1.0, s.y).unwrap();
        sum.axpy(-1.0, s.x).unwrap();
        for i in 0..6 {
            max_q = max_q.max((sum[i] - s.drift[i]).abs());
            let r = (s.alpha + s.eta) * s.y_next[i] - s.alpha * s.y[i] - s.eta * s.x_next[i]
                + s.eta * s.drift[i]
                + s.subgradient[i];
            max_y = max_y.max(r.abs());
        }
        assert!(cube.membership_residual(s.x_next).unwrap() <= 1e-9);
        steps += 1;
    })
    .unwrap();
    assert_eq!(steps, 999);
    assert!(max_q <= 1e-9, "{max_q}");
    assert!(max_y <= 1e-9, "{max_y}");
}

#[test]
fn nuclear_ball_iterates_stay_feasible() {
    let ball = NuclearBall::new(4, 3, 2.0).unwrap();
    let w = RealVector::matrix(4, 3, (0..12).map(|i| ((i * 7 % 5) as f64 - 2.0) * 0.8).collect()).unwrap();
    let f = L1Distance::new(w);
    let params = det_params(&f, &ball, 300);
    let mut worst = 0.0f64;
    let trace = pfw_run_observed(&f, &ball, params, ball.center(), |s| {
        worst = worst.max(ball.membership_residual(s.x_next).unwrap());
    })
    .unwrap();
    assert!(worst <= 1e-7);
    assert!(ball.membership_residual(&trace.xbar).unwrap() <= 1e-7);
}

#[test]
fn polytope_runs_without_projection() {
    let tri = VertexPolytope::new(vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
    let f = L1Distance::new(v(&[1.0, 1.0]));
    let trace = pfw_run(&f, &tri, det_params(&f, &tri, 4000), tri.center()).unwrap();
    // min over the triangle is 1 (any point on the hypotenuse)
    assert!(trace.f_xbar - 1.0 <= bounds::pfw(f.lipschitz(), tri.radius(), 4000));
    assert!(trace.xbar[0] >= 0.0 && trace.xbar[1] >= 0.0 && trace.xbar[0] + trace.xbar[1] <= 1.0 + 1e-12);

    let err = pgd_run(&f, &tri, 0.1, 10, tri.center()).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn rejects_infeasible_start_and_bad_shapes() {
    let cube = Hypercube::new(2).unwrap();
    let f = L1Distance::new(v(&[0.0, 0.0]));
    let p = det_params(&f, &cube, 10);
    assert!(matches!(pfw_run(&f, &cube, p, &v(&[2.0, 0.0])), Err(Error::InvalidArgument(_))));
    assert!(matches!(pfw_run(&f, &cube, p, &v(&[0.0])), Err(Error::Dimension { .. })));
}

/// Subgradient oracle that returns garbage, to trip the solver guards.
struct Exploding;

impl Objective for Exploding {
    fn value(&self, _x: &RealVector) -> Result<f64> {
        Ok(0.0)
    }
    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        Ok(RealVector::filled(x.shape(), 1e300))
    }
    fn lipschitz(&self) -> f64 {
        1.0
    }
}

#[test]
fn divergence_guard_reports_iteration() {
    let cube = Hypercube::new(2).unwrap();
    let p = PfwParams::new(1.0, 1.0, 5).unwrap();
    match pfw_run(&Exploding, &cube, p, cube.center()) {
        Err(Error::Solver { k, source }) => {
            assert_eq!(k, 1);
            assert!(matches!(*source, Error::Diverged { .. }));
        }
        other => panic!("expected solver error, got {other:?}"),
    }
}

fn noisy(omega: RealVector, sigma: f64, seed: u64) -> GaussianNoise<L1Distance> {
    let shape = omega.shape();
    GaussianNoise::new(L1Distance::new(omega), shape, sigma, seed).unwrap()
}

#[test]
fn zero_noise_matches_deterministic_runs() {
    let cube = Hypercube::new(5).unwrap();
    let omega = v(&[1.4, -0.3, 2.2, 0.9, -1.7]);
    let oracle = noisy(omega.clone(), 0.0, 99);
    let f = L1Distance::new(omega);
    let p = det_params(&f, &cube, 500);
    let a = pfw_run(&f, &cube, p, cube.center()).unwrap();
    let b = pfw_run_stochastic(&oracle, &cube, p, cube.center()).unwrap();
    assert!(a.same_path(&b));

    let beta = pgd_step_size(f.lipschitz(), cube.radius(), 500).unwrap();
    let a = pgd_run(&f, &cube, beta, 500, cube.center()).unwrap();
    let b = sgd_run(&oracle, &cube, beta, 500, cube.center()).unwrap();
    assert!(a.same_path(&b));
}

#[test]
fn stochastic_runs_are_seed_deterministic() {
    let cube = Hypercube::new(8).unwrap();
    let omega = v(&[1.5; 8]);
    let o1 = noisy(omega.clone(), 1.0, 1);
    let o2 = noisy(omega, 1.0, 2);
    let p = PfwParams::stochastic(
        o1.objective().lipschitz(),
        o1.second_moment_bound(),
        cube.radius(),
        200,
        StochasticSchedule::WithG,
    )
    .unwrap();
    let a = pfw_run_stochastic(&o1, &cube, p, cube.center()).unwrap();
    let b = pfw_run_stochastic(&o1, &cube, p, cube.center()).unwrap();
    let c = pfw_run_stochastic(&o2, &cube, p, cube.center()).unwrap();
    assert!(a.same_path(&b));
    assert!(!a.same_path(&c));

    let beta = pgd_step_size(o1.second_moment_bound(), cube.radius(), 200).unwrap();
    let a = sgd_run(&o1, &cube, beta, 200, cube.center()).unwrap();
    let b = sgd_run(&o1, &cube, beta, 200, cube.center()).unwrap();
    let c = sgd_run(&o2, &cube, beta, 200, cube.center()).unwrap();
    assert!(a.same_path(&b));
    assert!(!a.same_path(&c));
}

#[test]
fn stochastic_bound_holds_on_seed_mean() {
    let n = 20;
    let cube = Hypercube::new(n).unwrap();
    let omega = v(&(0..n).map(|i| if i % 2 == 0 { 1.8 } else { -0.4 }).collect::<Vec<_>>());
    let (_, f_star) = hypercube_l1_optimum(&omega);
    let t = 2000;
    let mut errs = Vec::new();
    for seed in 0..10 {
        let o = noisy(omega.clone(), 0.5, seed);
        let g = o.objective().lipschitz();
        let b = o.second_moment_bound();
        let p = PfwParams::stochastic(g, b, cube.radius(), t, StochasticSchedule::BOnly).unwrap();
        let tr = pfw_run_stochastic(&o, &cube, p, cube.center()).unwrap();
        errs.push(tr.f_xbar - f_star);
    }
    let o = noisy(omega, 0.5, 0);
    let bound = bounds::pfw_stochastic(
        o.objective().lipschitz(),
        o.second_moment_bound(),
        cube.radius(),
        t,
        StochasticSchedule::BOnly,
    );
    let mean = errs.iter().sum::<f64>() / errs.len() as f64;
    assert!(mean <= bound, "{mean} > {bound}");
}

/// `f = 0`: every subgradient is zero.
struct Flat;

impl Objective for Flat {
    fn value(&self, _x: &RealVector) -> Result<f64> {
        Ok(1.25)
    }
    fn subgradient(&self, x: &RealVector) -> Result<RealVector> {
        Ok(RealVector::zeros(x.shape()))
    }
    fn lipschitz(&self) -> f64 {
        1.0
    }
}

#[test]
fn pgd_fixed_point_and_interior_step() {
    let cube = Hypercube::new(3).unwrap();
    let x0 = v(&[0.2, -0.4, 0.9]);
    let tr = pgd_run(&Flat, &cube, 0.3, 57, &x0).unwrap();
    for i in 0..3 {
        assert!((tr.xbar[i] - x0[i]).abs() < 1e-15);
    }

    let f = L1Distance::new(v(&[5.0, 5.0, -5.0]));
    let beta = 0.01;
    let mut first = None;
    pgd_run_observed(&f, &cube, beta, 1, &x0, |s| first = Some(s.x_next.clone())).unwrap();
    let g = f.subgradient(&x0).unwrap();
    let x1 = first.unwrap();
    for i in 0..3 {
        assert_eq!(x1[i], x0[i] - beta * g[i]);
    }
}

#[test]
fn pgd_meets_its_bound_on_hypercube() {
    let cube = Hypercube::new(10).unwrap();
    let omega = v(&[2.0, -1.5, 0.3, 3.0, -0.9, 1.1, 0.0, -2.5, 0.6, 1.01]);
    let f = L1Distance::new(omega.clone());
    let (_, f_star) = hypercube_l1_optimum(&omega);
    for t in [100, 1000, 10_000] {
        let beta = pgd_step_size(f.lipschitz(), cube.radius(), t).unwrap();
        let tr = pgd_run(&f, &cube, beta, t, cube.center()).unwrap();
        let err = tr.f_xbar - f_star;
        assert!(err >= -1e-9 && err <= bounds::pgd(f.lipschitz(), cube.radius(), t));
    }
}
