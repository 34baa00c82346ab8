//! Writes a run's artifacts into its output directory.

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::config::{ExperimentConfig, OmegaMode};
use crate::csv_io::write_csv;
use crate::error::{HarnessError, Result};
use crate::experiment::{monotonicity_inversions, run_on, CurvePoint, Problem};
use crate::plot::render_plot;

pub const CSV_NAME: &str = "results.csv";
pub const PLOT_NAME: &str = "plot.svg";
pub const METADATA_NAME: &str = "metadata.json";

#[derive(Debug)]
pub struct RunOutput {
    pub points: Vec<CurvePoint>,
    pub csv: PathBuf,
    pub plot: PathBuf,
    pub metadata: PathBuf,
    /// Human-readable notes about non-monotone deterministic curves.
    pub warnings: Vec<String>,
}

fn generator_note(cfg: &ExperimentConfig) -> &'static str {
    use crate::config::Experiment::*;
    match (cfg.experiment, cfg.omega_mode) {
        (HypercubeL1, OmegaMode::Inside) => "omega_i ~ U[-1,1] i.i.d.",
        (HypercubeL1, OmegaMode::Outside) => "u ~ U[-1,1]^n; omega = 2u, or 2u/|u|_inf when |u|_inf <= 0.5",
        (NuclearL1, OmegaMode::Inside) => "Z_ij ~ U[-1,1]; W = Z * r * tau / |Z|_*, r ~ U(0,1)",
        (NuclearL1, OmegaMode::Outside) => "Z_ij ~ U[-1,1]; W = Z * 2 tau / |Z|_*",
        (Num3Demo, _) => "deterministic ring network; anchor holds the fair rate c/2",
    }
}

/// Runs the experiment and writes `results.csv`, `plot.svg` and
/// `metadata.json` under `dir` (created if missing).
pub fn run_to_dir(cfg: &ExperimentConfig, dir: &Path) -> Result<RunOutput> {
    let problem = Problem::build(cfg)?;
    let points = run_on(&problem, cfg)?;
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;

    let csv = dir.join(CSV_NAME);
    write_csv(&points, &csv)?;
    let plot = dir.join(PLOT_NAME);
    render_plot(&points, &plot)?;

    let metadata = dir.join(METADATA_NAME);
    let meta = json!({
        "config": cfg,
        "problem": {
            "rows": problem.m,
            "cols": problem.n,
            "f_star": problem.f_star,
            "generator": generator_note(cfg),
            "anchor": problem.anchor.as_slice(),
        },
    });
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
    std::fs::write(&metadata, text).map_err(|e| HarnessError::io(&metadata, e))?;

    let warnings = monotonicity_inversions(&points)
        .into_iter()
        .filter(|&(_, k)| k > 0)
        .map(|(alg, k)| format!("{}: deterministic curve increases {k} time(s) along T", alg.name()))
        .collect();
    Ok(RunOutput { points, csv, plot, metadata, warnings })
}
