//! Experiment harness for the `projfree` solvers: JSON configs in, CSV
//! tables and SVG convergence plots out.

pub mod config;
pub mod csv_io;
pub mod error;
pub mod experiment;
pub mod output;
pub mod plot;

pub use config::{Algorithm, Experiment, ExperimentConfig, OmegaMode, Schedule};
pub use csv_io::{parse_csv, read_csv, to_csv_string, write_csv};
pub use error::{HarnessError, Result};
pub use experiment::{monotonicity_inversions, run_experiment, CurvePoint, Problem};
pub use plot::{plot_series, render_plot, render_svg, Series};
pub use output::{run_to_dir, RunOutput};
