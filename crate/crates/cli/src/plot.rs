//! Log-log convergence plots as standalone SVG.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::config::Algorithm;
use crate::error::{HarnessError, Result};
use crate::experiment::CurvePoint;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// One curve: per-T means over seeds of the error (or of `f(x̄)` when the
/// optimum is unknown), plus the per-T bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub algorithm: Algorithm,
    pub sigma: f64,
    /// `(T, mean value, mean bound)`, sorted by T.
    pub points: Vec<(usize, f64, f64)>,
}

impl Series {
    pub fn label(&self) -> String {
        format!("{} sigma={}", self.algorithm.name(), self.sigma)
    }
}

/// Running (value, bound, count) totals for one T.
type Sums = (f64, f64, usize);

/// Groups per-seed rows by (algorithm, σ) and averages them per T. Mean
/// rows already in the table are skipped so they are not counted twice.
pub fn plot_series(points: &[CurvePoint]) -> Vec<Series> {
    let mut acc: BTreeMap<(Algorithm, u64), BTreeMap<usize, Sums>> = BTreeMap::new();
    for p in points.iter().filter(|p| p.seed.is_some()) {
        let e = acc.entry((p.algorithm, p.sigma.to_bits())).or_default().entry(p.t).or_insert((0.0, 0.0, 0));
        e.0 += p.error.unwrap_or(p.f_xbar);
        e.1 += p.bound;
        e.2 += 1;
    }
    let mut out: Vec<Series> = acc
        .into_iter()
        .map(|((algorithm, bits), per_t)| Series {
            algorithm,
            sigma: f64::from_bits(bits),
            points: per_t.into_iter().map(|(t, (v, b, k))| (t, v / k as f64, b / k as f64)).collect(),
        })
        .collect();
    out.sort_by(|a, b| a.algorithm.cmp(&b.algorithm).then(a.sigma.total_cmp(&b.sigma)));
    out
}

struct LogAxis {
    lo: f64,
    hi: f64,
    start: f64,
    len: f64,
    flip: bool,
}

impl LogAxis {
    fn new(min: f64, max: f64, start: f64, len: f64, flip: bool) -> Self {
        let mut lo = min.log10().floor();
        let mut hi = max.log10().ceil();
        if hi <= lo {
            lo -= 1.0;
            hi += 1.0;
        }
        LogAxis { lo, hi, start, len, flip }
    }

    fn map(&self, v: f64) -> f64 {
        let frac = (v.log10() - self.lo) / (self.hi - self.lo);
        if self.flip {
            self.start + self.len * (1.0 - frac)
        } else {
            self.start + self.len * frac
        }
    }

    fn decades(&self) -> impl Iterator<Item = i32> {
        (self.lo as i32)..=(self.hi as i32)
    }
}

/// Renders the SVG document. Nonpositive values are clamped to a floor
/// below the smallest positive value so they stay on the log axis.
pub fn render_svg(points: &[CurvePoint]) -> Result<String> {
    let series = plot_series(points);
    if series.is_empty() {
        return Err(HarnessError::EmptyPlot);
    }
    let values: Vec<f64> = series.iter().flat_map(|s| s.points.iter().flat_map(|&(_, v, b)| [v, b])).collect();
    let smallest = values.iter().copied().filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    let floor = if smallest.is_finite() { smallest / 10.0 } else { 1e-12 };
    let clamp = |v: f64| if v > floor { v } else { floor };
    let ymax = values.iter().copied().map(clamp).fold(floor, f64::max);
    let ts: Vec<f64> = series.iter().flat_map(|s| s.points.iter().map(|p| p.0 as f64)).collect();
    let tmin = ts.iter().copied().fold(f64::INFINITY, f64::min);
    let tmax = ts.iter().copied().fold(0.0, f64::max);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let xa = LogAxis::new(tmin, tmax, LEFT, plot_w, false);
    let ya = LogAxis::new(floor.max(values.iter().copied().map(clamp).fold(f64::INFINITY, f64::min)), ymax, TOP, plot_h, true);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for d in xa.decades() {
        let x = xa.map(10f64.powi(d));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 18.0
        );
    }
    for d in ya.decades() {
        let y = ya.map(10f64.powi(d));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">T</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">f(x̄) − f*</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path = |pick: &dyn Fn(&(usize, f64, f64)) -> f64| {
            ser.points
                .iter()
                .map(|p| format!("{:.2},{:.2}", xa.map(p.0 as f64), ya.map(clamp(pick(p)))))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(
            s,
            r#"<polyline class="series" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path(&|p| p.1)
        );
        let _ = writeln!(
            s,
            r#"<polyline class="bound" points="{}" fill="none" stroke="{color}" stroke-width="1" stroke-dasharray="6,4"/>"#,
            path(&|p| p.2)
        );
        let ly = TOP + 10.0 + 36.0 * i as f64;
        let lx = LEFT + plot_w + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 25.0,
            lx + 30.0,
            ly + 4.0,
            ser.label()
        );
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-dasharray="6,4"/><text x="{:.2}" y="{:.2}">bound</text>"#,
            ly + 16.0,
            lx + 25.0,
            ly + 16.0,
            lx + 30.0,
            ly + 20.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_plot(points: &[CurvePoint], path: &Path) -> Result<()> {
    let svg = render_svg(points)?;
    std::fs::write(path, svg).map_err(|e| HarnessError::io(path, e))
}
