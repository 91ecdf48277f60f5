//! Finite-size scaling collapse of variance curves.

use crate::error::{invalid, IrdError, Result};

/// One curve `y(s)` at system size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub n: usize,
    pub s: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseParams {
    pub s_c: f64,
    pub zeta: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s_c: (f64, f64, f64),
    pub zeta: (f64, f64, f64),
    pub nu: (f64, f64, f64),
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { s_c: (0.35, 0.55, 0.005), zeta: (0.0, 0.5, 0.05), nu: (1.0, 3.0, 0.1) }
    }
}

/// Strict interior local minima of `y(s)`.
pub fn local_minima(s: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] < y[i - 1] && y[i] < y[i + 1] {
            xs.push(s[i]);
            ys.push(y[i]);
        }
    }
    (xs, ys)
}

pub fn minima_curve(n: usize, s: &[f64], y: &[f64]) -> Curve {
    let (s, y) = local_minima(s, y);
    Curve { n, s, y }
}

/// `(N^(1/nu) (s - s_c), N^(-zeta/nu) y)`.
pub fn scale_curve(c: &Curve, p: CollapseParams) -> Curve {
    let nf = c.n as f64;
    let fx = nf.powf(1.0 / p.nu);
    let fy = nf.powf(-p.zeta / p.nu);
    Curve { n: c.n, s: c.s.iter().map(|s| fx * (s - p.s_c)).collect(), y: c.y.iter().map(|y| fy * y).collect() }
}

fn interpolate(x: &[f64], y: &[f64], t: f64) -> Option<f64> {
    if x.len() < 2 || t < x[0] || t > x[x.len() - 1] {
        return None;
    }
    let i = x.partition_point(|&v| v <= t).clamp(1, x.len() - 1);
    let (x0, x1) = (x[i - 1], x[i]);
    let w = if x1 > x0 { (t - x0) / (x1 - x0) } else { 0.0 };
    Some(y[i - 1] + w * (y[i] - y[i - 1]))
}

/// Mean squared vertical distance between every pair of scaled curves, sampled at the
/// points of each curve that fall in the other's support, relative to the mean squared height.
pub fn collapse_quality(curves: &[Curve], p: CollapseParams) -> Result<f64> {
    let scaled: Vec<Curve> = curves.iter().map(|c| scale_curve(c, p)).collect();
    let mut sum = 0.0;
    let mut norm = 0.0;
    let mut count = 0usize;
    let mut overlapping = 0usize;
    for a in 0..scaled.len() {
        for b in 0..scaled.len() {
            if a == b {
                continue;
            }
            let mut hit = false;
            for (&x, &y) in scaled[a].s.iter().zip(&scaled[a].y) {
                if let Some(yb) = interpolate(&scaled[b].s, &scaled[b].y, x) {
                    sum += (y - yb).powi(2);
                    norm += 0.5 * (y * y + yb * yb);
                    count += 1;
                    hit = true;
                }
            }
            if hit {
                overlapping += 1;
            }
        }
    }
    if overlapping < 2 || count == 0 || norm <= 0.0 {
        return Err(IrdError::UndefinedMetric("fewer than two scaled curves overlap".into()));
    }
    Ok(sum / norm)
}

fn axis((lo, hi, step): (f64, f64, f64)) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

/// Best collapse over the grid; ties resolve to the first point visited.
pub fn grid_search(curves: &[Curve], grid: GridSpec) -> Result<(CollapseParams, f64)> {
    if curves.len() < 2 {
        return Err(invalid("collapse needs at least two curves"));
    }
    let mut best: Option<(CollapseParams, f64)> = None;
    for &s_c in &axis(grid.s_c) {
        for &zeta in &axis(grid.zeta) {
            for &nu in &axis(grid.nu) {
                let p = CollapseParams { s_c, zeta, nu };
                if let Ok(q) = collapse_quality(curves, p) {
                    if best.map_or(true, |b| q < b.1) {
                        best = Some((p, q));
                    }
                }
            }
        }
    }
    best.ok_or_else(|| IrdError::UndefinedMetric("no grid point produced overlapping curves".into()))
}
