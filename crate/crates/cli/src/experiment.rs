//! Builds problem instances from a config and sweeps the (σ, T, seed,
//! algorithm) grid.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use projfree::linalg::{nuclear_norm, Matrix};
use projfree::{
    bounds, hypercube_l1_optimum, pfw_run, pfw_run_stochastic, pgd_run, pgd_step_size, sgd_run,
    FeasibleSet, GaussianNoise, Hypercube, L1Distance, NegMinRate, NuclearBall, Objective,
    Penalized, PenaltySpec, PfwParams, RealVector, RunTrace, StochasticOracle, VertexPolytope,
};

use crate::config::{Algorithm, Experiment, ExperimentConfig, OmegaMode};
use crate::error::{HarnessError, Result};

/// One row of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub experiment: Experiment,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub sigma: f64,
    pub t: usize,
    /// `None` marks the mean over all seeds of a stochastic cell.
    pub seed: Option<u64>,
    pub f_xbar: f64,
    /// `f(x̄) − f*`, when the optimum is known.
    pub error: Option<f64>,
    pub bound: f64,
    pub wallclock_ms: f64,
}

/// Objectives the harness ships, behind one concrete type so the noise
/// wrapper stays monomorphic.
#[derive(Debug, Clone)]
pub enum ProblemObjective {
    L1(L1Distance),
    Rates(Penalized<NegMinRate>),
}

impl Objective for ProblemObjective {
    fn value(&self, x: &RealVector) -> projfree::Result<f64> {
        match self {
            ProblemObjective::L1(f) => f.value(x),
            ProblemObjective::Rates(f) => f.value(x),
        }
    }

    fn subgradient(&self, x: &RealVector) -> projfree::Result<RealVector> {
        match self {
            ProblemObjective::L1(f) => f.subgradient(x),
            ProblemObjective::Rates(f) => f.subgradient(x),
        }
    }

    fn lipschitz(&self) -> f64 {
        match self {
            ProblemObjective::L1(f) => f.lipschitz(),
            ProblemObjective::Rates(f) => f.lipschitz(),
        }
    }
}

/// A concrete instance: set, objective and (when known) the optimal value.
pub struct Problem {
    pub experiment: Experiment,
    pub n: usize,
    pub m: usize,
    pub set: Box<dyn FeasibleSet + Send + Sync>,
    pub objective: ProblemObjective,
    pub f_star: Option<f64>,
    /// ω, W, or the rate cap per user (num3).
    pub anchor: RealVector,
}

impl Problem {
    pub fn build(cfg: &ExperimentConfig) -> Result<Problem> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.problem_seed);
        let n = cfg.n;
        let wrap = |e: projfree::Error| HarnessError::Solver { cell: "problem setup".into(), source: e };
        match cfg.experiment {
            Experiment::HypercubeL1 => {
                let omega = hypercube_anchor(n, cfg.omega_mode, &mut rng).map_err(wrap)?;
                let (_, f_star) = hypercube_l1_optimum(&omega);
                Ok(Problem {
                    experiment: cfg.experiment,
                    n,
                    m: 1,
                    set: Box::new(Hypercube::new(n).map_err(wrap)?),
                    objective: ProblemObjective::L1(L1Distance::new(omega.clone())),
                    f_star: Some(f_star),
                    anchor: omega,
                })
            }
            Experiment::NuclearL1 => {
                let m = cfg.rows();
                let tau = cfg.tau();
                let w = nuclear_anchor(m, n, tau, cfg.omega_mode, &mut rng).map_err(wrap)?;
                // Inside the ball W is the minimizer; outside there is no closed form.
                let f_star = match cfg.omega_mode {
                    OmegaMode::Inside => Some(0.0),
                    OmegaMode::Outside => None,
                };
                Ok(Problem {
                    experiment: cfg.experiment,
                    n,
                    m,
                    set: Box::new(NuclearBall::new(m, n, tau).map_err(wrap)?),
                    objective: ProblemObjective::L1(L1Distance::new(w.clone())),
                    f_star,
                    anchor: w,
                })
            }
            Experiment::Num3Demo => {
                let (set, objective, f_star) = ring_network(n, cfg.capacity(), cfg.gamma()).map_err(wrap)?;
                Ok(Problem {
                    experiment: cfg.experiment,
                    n,
                    m: 1,
                    set: Box::new(set),
                    objective: ProblemObjective::Rates(objective),
                    f_star,
                    anchor: RealVector::filled(projfree::Shape::Vector(n), cfg.capacity() / 2.0),
                })
            }
        }
    }
}

/// Inside: uniform on `[−1, 1]^n`. Outside: the same draw scaled by 2, or
/// up to sup-norm 2 if the doubled draw would still be inside.
pub fn hypercube_anchor(n: usize, mode: OmegaMode, rng: &mut ChaCha8Rng) -> projfree::Result<RealVector> {
    let u = RealVector::new((0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())?;
    match mode {
        OmegaMode::Inside => Ok(u),
        OmegaMode::Outside => {
            let sup = u.norm_inf();
            let factor = if sup > 0.5 { 2.0 } else { 2.0 / sup.max(f64::MIN_POSITIVE) };
            Ok(u.scaled(factor))
        }
    }
}

/// Entries uniform on `[−1, 1]`, rescaled to nuclear norm `r τ` with
/// `r ~ U(0, 1)` (inside) or to `2 τ` (outside).
pub fn nuclear_anchor(
    m: usize,
    n: usize,
    tau: f64,
    mode: OmegaMode,
    rng: &mut ChaCha8Rng,
) -> projfree::Result<RealVector> {
    let z = Matrix::new(m, n, (0..m * n).map(|_| rng.random_range(-1.0..=1.0)).collect())?;
    let nuc = nuclear_norm(&z)?.max(f64::MIN_POSITIVE);
    let target = match mode {
        OmegaMode::Inside => tau * rng.random_range(0.0..1.0),
        OmegaMode::Outside => 2.0 * tau,
    };
    Ok(z.into_vector()?.scaled(target / nuc))
}

/// `n` users on a ring of `n` links; link `j` carries users `j` and `j+1`
/// and has capacity `c`. Maximize the minimum rate:
///
/// `min −min_i x_i + γ max(0, max_j x_j + x_{j+1} − c)` over the budget
/// polytope `conv{0, n c e_i}`.
///
/// For `γ ≥ 1/2` the optimum is `−c/2` (at `x = c/2 · 1`): with
/// `t = min_i x_i`, every link carries at least `2t`, so the objective is at
/// least `−t + γ (2t − c)^+ ≥ −c/2`.
fn ring_network(n: usize, c: f64, gamma: f64) -> projfree::Result<(VertexPolytope, Penalized<NegMinRate>, Option<f64>)> {
    let budget = n as f64 * c;
    let mut vertices = vec![RealVector::zeros(projfree::Shape::Vector(n))];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = budget;
        vertices.push(RealVector::new(e)?);
    }
    let mut links = Vec::with_capacity(n);
    for j in 0..n {
        let mut a = vec![0.0; n];
        a[j] += 1.0;
        a[(j + 1) % n] += 1.0;
        links.push((RealVector::new(a)?, c));
    }
    let spec = PenaltySpec::new(links, gamma)?;
    let f_star = (gamma >= 0.5).then_some(-c / 2.0);
    Ok((VertexPolytope::new(vertices)?, Penalized::new(NegMinRate, spec), f_star))
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    algorithm: Algorithm,
    sigma: f64,
    t: usize,
    seed: u64,
}

impl Cell {
    fn label(&self, exp: Experiment) -> String {
        format!(
            "{} {} sigma={} T={} seed={}",
            exp.name(),
            self.algorithm.name(),
            self.sigma,
            self.t,
            self.seed
        )
    }
}

fn run_cell(problem: &Problem, cfg: &ExperimentConfig, cell: Cell) -> Result<CurvePoint> {
    let set = problem.set.as_ref();
    let shape = set.shape();
    let g = problem.objective.lipschitz();
    let r = set.radius();
    let oracle = GaussianNoise::new(problem.objective.clone(), shape, cell.sigma, cell.seed)
        .map_err(|e| HarnessError::Solver { cell: cell.label(problem.experiment), source: e })?;
    let b = oracle.second_moment_bound();
    let t = cell.t;
    let x1 = set.center();
    let stochastic = cell.sigma > 0.0;

    let outcome: projfree::Result<(RunTrace, f64)> = (|| match (cell.algorithm, stochastic) {
        (Algorithm::Pfw, false) => {
            let p = PfwParams::deterministic(g, r, t)?;
            Ok((pfw_run(&problem.objective, set, p, x1)?, bounds::pfw(g, r, t)))
        }
        (Algorithm::Pfw, true) => {
            let schedule = cfg.stochastic_schedule.into();
            let p = PfwParams::stochastic(g, b, r, t, schedule)?;
            Ok((pfw_run_stochastic(&oracle, set, p, x1)?, bounds::pfw_stochastic(g, b, r, t, schedule)))
        }
        (Algorithm::Pgd, false) => {
            let beta = pgd_step_size(g, r, t)?;
            Ok((pgd_run(&problem.objective, set, beta, t, x1)?, bounds::pgd(g, r, t)))
        }
        (Algorithm::Pgd, true) => {
            let beta = pgd_step_size(b, r, t)?;
            Ok((sgd_run(&oracle, set, beta, t, x1)?, bounds::sgd(b, r, t)))
        }
    })();
    let (trace, bound) =
        outcome.map_err(|e| HarnessError::Solver { cell: cell.label(problem.experiment), source: e })?;

    Ok(CurvePoint {
        experiment: problem.experiment,
        algorithm: cell.algorithm,
        n: problem.n,
        m: problem.m,
        sigma: cell.sigma,
        t,
        seed: Some(cell.seed),
        f_xbar: trace.f_xbar,
        error: problem.f_star.map(|fs| trace.f_xbar - fs),
        bound,
        wallclock_ms: if cfg.record_wallclock { trace.elapsed.as_secs_f64() * 1e3 } else { 0.0 },
    })
}

/// Runs every cell of the grid and returns the points in CSV order.
///
/// Deterministic cells (σ = 0) run once, with the first seed. Stochastic
/// cells run every seed and, with more than one seed, add a mean row.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CurvePoint>> {
    let problem = Problem::build(cfg)?;
    run_on(&problem, cfg)
}

pub fn run_on(problem: &Problem, cfg: &ExperimentConfig) -> Result<Vec<CurvePoint>> {
    let mut cells = Vec::new();
    for &algorithm in &cfg.algorithms {
        for &sigma in &cfg.sigma_list {
            for &t in &cfg.t_list {
                let seeds: &[u64] = if sigma > 0.0 { &cfg.seeds } else { &cfg.seeds[..1] };
                for &seed in seeds {
                    cells.push(Cell { algorithm, sigma, t, seed });
                }
            }
        }
    }
    let mut points = cells
        .into_par_iter()
        .map(|cell| run_cell(problem, cfg, cell))
        .collect::<Result<Vec<_>>>()?;

    let mut groups: BTreeMap<(Algorithm, u64, usize), Vec<&CurvePoint>> = BTreeMap::new();
    for p in points.iter().filter(|p| p.sigma > 0.0) {
        groups.entry((p.algorithm, p.sigma.to_bits(), p.t)).or_default().push(p);
    }
    let means: Vec<CurvePoint> = groups
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|g| mean_point(&g))
        .collect();
    points.extend(means);
    sort_points(&mut points);
    Ok(points)
}

fn mean_point(group: &[&CurvePoint]) -> CurvePoint {
    let k = group.len() as f64;
    let mean = |f: &dyn Fn(&CurvePoint) -> f64| group.iter().map(|p| f(p)).sum::<f64>() / k;
    let first = group[0];
    CurvePoint {
        seed: None,
        f_xbar: mean(&|p| p.f_xbar),
        error: first.error.map(|_| mean(&|p| p.error.unwrap_or(0.0))),
        bound: mean(&|p| p.bound),
        wallclock_ms: mean(&|p| p.wallclock_ms),
        ..first.clone()
    }
}

/// Orders rows by (experiment, algorithm, sigma, T, seed), mean rows last
/// within a cell.
pub fn sort_points(points: &mut [CurvePoint]) {
    points.sort_by(|a, b| {
        a.experiment
            .name()
            .cmp(b.experiment.name())
            .then(a.algorithm.name().cmp(b.algorithm.name()))
            .then(a.sigma.total_cmp(&b.sigma))
            .then(a.t.cmp(&b.t))
            .then(match (a.seed, b.seed) {
                (Some(x), Some(y)) => x.cmp(&y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
    });
}

/// Number of increases of the plotted quantity along T, per deterministic
/// series. The bounds do not promise monotone decrease, so this is a
/// warning signal rather than a failure.
pub fn monotonicity_inversions(points: &[CurvePoint]) -> Vec<(Algorithm, usize)> {
    let mut series: BTreeMap<Algorithm, Vec<(usize, f64)>> = BTreeMap::new();
    for p in points.iter().filter(|p| p.sigma == 0.0 && p.seed.is_some()) {
        series.entry(p.algorithm).or_default().push((p.t, p.error.unwrap_or(p.f_xbar)));
    }
    series
        .into_iter()
        .map(|(alg, mut s)| {
            s.sort_by_key(|&(t, _)| t);
            let inv = s.windows(2).filter(|w| w[1].1 > w[0].1).count();
            (alg, inv)
        })
        .collect()
}
