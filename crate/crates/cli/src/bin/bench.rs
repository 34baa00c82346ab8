use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use projfree_cli::{read_csv, render_plot, run_to_dir, Experiment, ExperimentConfig, HarnessError};

#[derive(Parser)]
#[command(name = "bench", about = "Run projection-free optimization experiments")]
struct Cli {
    /// Print the available experiments and exit.
    #[arg(long)]
    list_experiments: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Override the config's output_dir.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Render an SVG plot from a results CSV.
    Plot { csv: PathBuf, out: PathBuf },
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    if cli.list_experiments {
        for e in Experiment::ALL {
            println!("{:<14} {}", e.name(), e.description());
        }
        return Ok(());
    }
    match cli.command {
        Some(Command::Run { config, output_dir }) => {
            let cfg = ExperimentConfig::load(&config)?;
            let dir = output_dir.unwrap_or_else(|| cfg.output_dir.clone());
            let out = run_to_dir(&cfg, &dir)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            println!("{} rows -> {}", out.points.len(), out.csv.display());
            println!("plot -> {}", out.plot.display());
            Ok(())
        }
        Some(Command::Plot { csv, out }) => {
            let points = read_csv(&csv)?;
            render_plot(&points, &out)?;
            println!("plot -> {}", out.display());
            Ok(())
        }
        None => Err(HarnessError::Config("no command given; try --help".into())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
