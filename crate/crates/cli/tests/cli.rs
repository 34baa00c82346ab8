use std::path::Path;
use std::process::{Command, Output};

use projfree_cli::{parse_csv, Experiment};

fn bench(args: &[&std::ffi::OsStr]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bench")).args(args).output().unwrap()
}

fn write_config(dir: &Path, body: serde_json::Value) -> std::path::PathBuf {
    let p = dir.join("cfg.json");
    std::fs::write(&p, body.to_string()).unwrap();
    p
}

#[test]
fn lists_experiments() {
    let out = bench(&["--list-experiments".as_ref()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for e in Experiment::ALL {
        assert!(text.contains(e.name()));
    }
}

#[test]
fn run_writes_csv_plot_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        serde_json::json!({
            "experiment": "nuclear_l1", "n": 5, "m": 4, "tau": 2.0, "omega_mode": "inside",
            "sigma_list": [0.0, 0.2], "T_list": [10, 100], "seeds": [4, 5],
            "algorithms": ["pfw", "pgd"], "output_dir": dir.path().join("from_config")
        }),
    );
    let out = bench(&["run".as_ref(), cfg.as_os_str()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let base = dir.path().join("from_config");
    let points = parse_csv(&std::fs::read_to_string(base.join("results.csv")).unwrap()).unwrap();
    assert_eq!(points.len(), 2 * (2 + 2 * 3));
    assert!(points.iter().all(|p| p.error.is_some() && p.m == 4));
    let svg = std::fs::read_to_string(base.join("plot.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="series""#).count(), 4);
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(base.join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["problem"]["anchor"].as_array().unwrap().len(), 20);
    assert_eq!(meta["problem"]["f_star"], 0.0);

    // re-plotting the CSV reproduces the run's plot
    let replot = dir.path().join("again.svg");
    let out = bench(&["plot".as_ref(), base.join("results.csv").as_os_str(), replot.as_os_str()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(replot).unwrap(), svg);
}

#[test]
fn invalid_config_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        serde_json::json!({
            "experiment": "hypercube_l1", "n": 3, "sigma_list": [], "T_list": [10],
            "seeds": [1], "algorithms": ["pfw"], "output_dir": "x"
        }),
    );
    let out = bench(&["run".as_ref(), cfg.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma_list"));

    let out = bench(&["run".as_ref(), dir.path().join("missing.json").as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    let out = bench(&["frobnicate".as_ref()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plotting_a_header_only_csv_fails() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    std::fs::write(&csv, "experiment,algorithm,n,m,sigma,T,seed,f_xbar,error,bound,wallclock_ms\n").unwrap();
    let out = bench(&["plot".as_ref(), csv.as_os_str(), dir.path().join("x.svg").as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn shipped_configs_are_valid() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            projfree_cli::ExperimentConfig::load(&path).unwrap();
            count += 1;
        }
    }
    assert!(count >= 4);
}
