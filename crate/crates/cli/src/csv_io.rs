//! Results table: fixed column order, 12 significant digits per float.

use std::path::Path;

use crate::config::{Algorithm, Experiment};
use crate::error::{HarnessError, Result};
use crate::experiment::{sort_points, CurvePoint};

pub const HEADER: [&str; 11] =
    ["experiment", "algorithm", "n", "m", "sigma", "T", "seed", "f_xbar", "error", "bound", "wallclock_ms"];

/// 12 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn record(p: &CurvePoint) -> [String; 11] {
    [
        p.experiment.name().to_string(),
        p.algorithm.name().to_string(),
        p.n.to_string(),
        p.m.to_string(),
        format_float(p.sigma),
        p.t.to_string(),
        p.seed.map_or_else(|| "mean".to_string(), |s| s.to_string()),
        format_float(p.f_xbar),
        p.error.map(format_float).unwrap_or_default(),
        format_float(p.bound),
        format_float(p.wallclock_ms),
    ]
}

/// Renders the table to a string, sorting a copy of the points first.
pub fn to_csv_string(points: &[CurvePoint]) -> Result<String> {
    let mut sorted = points.to_vec();
    sort_points(&mut sorted);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for p in &sorted {
        w.write_record(record(p))?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::io("<csv buffer>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn write_csv(points: &[CurvePoint], path: &Path) -> Result<()> {
    let text = to_csv_string(points)?;
    std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

fn parse_experiment(s: &str) -> Option<Experiment> {
    Experiment::ALL.into_iter().find(|e| e.name() == s)
}

fn parse_algorithm(s: &str) -> Option<Algorithm> {
    [Algorithm::Pfw, Algorithm::Pgd].into_iter().find(|a| a.name() == s)
}

pub fn parse_csv(text: &str) -> Result<Vec<CurvePoint>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    if r.headers()?.iter().ne(HEADER) {
        return Err(HarnessError::CsvRow { row: 0, reason: "unexpected header".into() });
    }
    let mut points = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        let bad = |what: &str| HarnessError::CsvRow { row, reason: format!("bad {what}") };
        let float = |j: usize, what: &str| rec[j].parse::<f64>().map_err(|_| bad(what));
        let int = |j: usize, what: &str| rec[j].parse::<usize>().map_err(|_| bad(what));
        points.push(CurvePoint {
            experiment: parse_experiment(&rec[0]).ok_or_else(|| bad("experiment"))?,
            algorithm: parse_algorithm(&rec[1]).ok_or_else(|| bad("algorithm"))?,
            n: int(2, "n")?,
            m: int(3, "m")?,
            sigma: float(4, "sigma")?,
            t: int(5, "T")?,
            seed: match &rec[6] {
                "mean" => None,
                s => Some(s.parse().map_err(|_| bad("seed"))?),
            },
            f_xbar: float(7, "f_xbar")?,
            error: if rec[8].is_empty() { None } else { Some(float(8, "error")?) },
            bound: float(9, "bound")?,
            wallclock_ms: float(10, "wallclock_ms")?,
        });
    }
    Ok(points)
}

pub fn read_csv(path: &Path) -> Result<Vec<CurvePoint>> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(seed: Option<u64>, error: Option<f64>) -> CurvePoint {
        CurvePoint {
            experiment: Experiment::HypercubeL1,
            algorithm: Algorithm::Pfw,
            n: 10,
            m: 1,
            sigma: 0.5,
            t: 100,
            seed,
            f_xbar: std::f64::consts::PI,
            error,
            bound: 1.0 / 3.0,
            wallclock_ms: 0.0,
        }
    }

    fn round12(x: f64) -> f64 {
        format!("{x:.11e}").parse().unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        let s = to_csv_string(&[]).unwrap();
        assert_eq!(s, "experiment,algorithm,n,m,sigma,T,seed,f_xbar,error,bound,wallclock_ms\n");
    }

    #[test]
    fn one_point_gives_two_lines() {
        let s = to_csv_string(&[point(Some(7), None)]).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[1],
            "hypercube_l1,pfw,10,1,5.00000000000e-1,100,7,3.14159265359e0,,3.33333333333e-1,0.00000000000e0"
        );
    }

    #[test]
    fn round_trip_at_twelve_digits() {
        let pts = vec![point(Some(2), Some(1e-7 / 3.0)), point(None, Some(-2.5e10)), point(Some(1), None)];
        let back = parse_csv(&to_csv_string(&pts).unwrap()).unwrap();
        let mut want = pts.clone();
        sort_points(&mut want);
        assert_eq!(back.len(), 3);
        for (a, b) in want.iter().zip(&back) {
            assert_eq!(a.seed, b.seed);
            assert_eq!(round12(a.f_xbar), b.f_xbar);
            assert_eq!(a.error.map(round12), b.error);
            assert_eq!(round12(a.bound), b.bound);
        }
        // parsing the re-emitted table is a fixed point
        assert_eq!(to_csv_string(&back).unwrap(), to_csv_string(&pts).unwrap());
    }

    #[test]
    fn rejects_malformed_rows() {
        let mut s = to_csv_string(&[point(Some(1), None)]).unwrap();
        s = s.replace(",pfw,", ",adam,");
        assert!(matches!(parse_csv(&s), Err(HarnessError::CsvRow { row: 1, .. })));
        assert!(parse_csv("a,b\n").is_err());
    }
}
