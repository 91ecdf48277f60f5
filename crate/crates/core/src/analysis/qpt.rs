//! Ground-state and dynamical order parameters along s sweeps.

use crate::dynamics::{diagonalize, perturbed_scars_from, Spectrum};
use crate::error::{invalid, Result};
use crate::hbuild::{assemble_reference, weight_table, DistilledHamiltonian, TensorWeights};
use crate::irreps::{distill, BasisLayout, DistilledAmplitudes};
use crate::model::ModelParams;
use crate::par_map;

use super::sweep::{steepest_rise, SweepResult};

pub const DEFAULT_AVERAGING_TIME: f64 = 1e5;

/// `Jz` acting on a real distilled vector.
fn apply_jz(layout: &BasisLayout, v: &[f64]) -> Vec<f64> {
    layout.iter().map(|ix| ix.m as f64 * v[ix.flat]).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Ground-state `Z_g = (2/N) sqrt(<Jz^2>)` and the doublet variant `(2/N) |<E0|Jz|E1>|`.
pub fn ground_order(spec: &Spectrum) -> (f64, f64) {
    let layout = spec.layout();
    let scale = 2.0 / layout.n() as f64;
    let g = spec.vector(0);
    let jg = apply_jz(&layout, g);
    let zg = scale * dot(&jg, &jg).sqrt();
    let broken = if spec.len() > 1 { scale * dot(&jg, spec.vector(1)).abs() } else { 0.0 };
    (zg, broken)
}

/// Infinite-time average of `(2/N)<Jz>` from the all-up state, summing coherences inside
/// clusters of levels closer than `1/t_avg`.
pub fn diagonal_ensemble_z(spec: &Spectrum, t_avg: f64) -> Result<f64> {
    if !(t_avg > 0.0) {
        return Err(invalid("averaging time must be positive"));
    }
    let layout = spec.layout();
    let top = layout.flat(0, layout.spin(0)).expect("stretch state");
    let gap = 1.0 / t_avg;
    let e = spec.energies();
    let mut total = 0.0;
    let mut start = 0;
    while start < spec.len() {
        let mut end = start + 1;
        while end < spec.len() && e[end] - e[end - 1] < gap {
            end += 1;
        }
        let members: Vec<usize> = (start..end).filter(|&k| spec.vector(k)[top] != 0.0).collect();
        let jv: Vec<Vec<f64>> = members.iter().map(|&k| apply_jz(&layout, spec.vector(k))).collect();
        for (a, &k) in members.iter().enumerate() {
            for &l in &members {
                total += spec.vector(k)[top] * spec.vector(l)[top] * dot(&jv[a], spec.vector(l));
            }
        }
        start = end;
    }
    Ok(2.0 * total / layout.n() as f64)
}

/// Trapezoid average of `(2/N)<Jz>(t)` over `[0, t_avg]` with `steps` intervals.
///
/// Each oscillating term is summed in closed form, so large `steps` costs nothing extra.
pub fn trapezoid_z(spec: &Spectrum, t_avg: f64, steps: u64) -> Result<f64> {
    if !(t_avg > 0.0) || steps == 0 {
        return Err(invalid("trapezoid needs positive time and at least one step"));
    }
    let layout = spec.layout();
    let top = layout.flat(0, layout.spin(0)).expect("stretch state");
    let h = t_avg / steps as f64;
    let members: Vec<usize> = (0..spec.len()).filter(|&k| spec.vector(k)[top].abs() > 1e-15).collect();
    let jv: Vec<Vec<f64>> = members.iter().map(|&k| apply_jz(&layout, spec.vector(k))).collect();
    let kernel = |w: f64| -> f64 {
        // Real part of (1/T) * trapezoid sum of exp(i w t_j) h.
        let x = w * h;
        if x.abs() < 1e-12 {
            return 1.0;
        }
        let k = steps as f64;
        let z = num_complex::Complex64::from_polar(1.0, x);
        let zk = num_complex::Complex64::from_polar(1.0, x * k);
        let geom = (num_complex::Complex64::new(1.0, 0.0) - zk * z) / (num_complex::Complex64::new(1.0, 0.0) - z);
        ((geom - (zk + 1.0) * 0.5) / k).re
    };
    let mut total = 0.0;
    for (a, &k) in members.iter().enumerate() {
        for &l in &members {
            let jz = dot(&jv[a], spec.vector(l));
            if jz == 0.0 {
                continue;
            }
            let w = spec.energy(k) - spec.energy(l);
            total += spec.vector(k)[top] * spec.vector(l)[top] * jz * kernel(w);
        }
    }
    Ok(2.0 * total / layout.n() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QptPoint {
    pub s: f64,
    pub ground_energy: f64,
    pub gap: f64,
    pub z_g: f64,
    pub z_broken: f64,
    pub z_bar: f64,
}

fn weights_for(n: usize, alpha: f64) -> Result<(DistilledAmplitudes, TensorWeights)> {
    let params = ModelParams::new(n, 0.5, alpha)?;
    let amps = distill(&crate::model::CouplingKernel::from_params(&params))?;
    let w = weight_table(&params, &amps)?;
    Ok((amps, w))
}

fn qpt_point(n: usize, alpha: f64, w: &TensorWeights, s: f64, t_avg: f64) -> Result<QptPoint> {
    let params = ModelParams::new(n, s, alpha)?;
    let h = DistilledHamiltonian::from_weights(&params, w)?;
    let spec = diagonalize(&h)?;
    let (z_g, z_broken) = ground_order(&spec);
    Ok(QptPoint {
        s,
        ground_energy: spec.energy(0),
        gap: spec.energy(1) - spec.energy(0),
        z_g,
        z_broken,
        z_bar: diagonal_ensemble_z(&spec, t_avg)?,
    })
}

/// Ground-state and dynamical order parameters at every `s`; one diagonalization per point.
pub fn qpt_sweep(n: usize, alpha: f64, s_values: &[f64], t_avg: f64) -> Result<SweepResult> {
    let mut out = SweepResult::new("s", s_values.to_vec())?;
    let (_, w) = weights_for(n, alpha)?;
    let pts: Vec<QptPoint> =
        par_map(s_values.to_vec(), |s| qpt_point(n, alpha, &w, s, t_avg)).into_iter().collect::<Result<_>>()?;
    out.push_column("z_g", pts.iter().map(|p| p.z_g).collect())?;
    out.push_column("z_broken", pts.iter().map(|p| p.z_broken).collect())?;
    out.push_column("z_bar", pts.iter().map(|p| p.z_bar).collect())?;
    out.push_column("e0", pts.iter().map(|p| p.ground_energy).collect())?;
    out.push_column("gap", pts.iter().map(|p| p.gap).collect())?;
    out.note("n", n);
    out.note("alpha", alpha);
    out.note("t_avg", t_avg);
    out.check_finite()?;
    Ok(out)
}

pub fn gqpt(n: usize, alpha: f64, s_values: &[f64]) -> Result<SweepResult> {
    let mut r = qpt_sweep(n, alpha, s_values, DEFAULT_AVERAGING_TIME)?;
    r.columns.retain(|c| c.0 != "z_bar");
    Ok(r)
}

pub fn dqpt(n: usize, alpha: f64, s_values: &[f64], t_avg: f64) -> Result<SweepResult> {
    let mut r = qpt_sweep(n, alpha, s_values, t_avg)?;
    r.columns.retain(|c| c.0 == "z_bar");
    Ok(r)
}

/// Location and slope of the steepest rise of column `name`.
pub fn crossover(sweep: &SweepResult, name: &str) -> Option<(f64, f64)> {
    steepest_rise(&sweep.axis, sweep.column(name)?)
}

/// Perturbed-scar energy variances (`de_max`, `de_mean`) against `s`.
pub fn variance_sweep(n: usize, alpha: f64, s_values: &[f64]) -> Result<SweepResult> {
    let mut out = SweepResult::new("s", s_values.to_vec())?;
    let (amps, w) = weights_for(n, alpha)?;
    let rows: Vec<(f64, f64)> = par_map(s_values.to_vec(), |s| -> Result<(f64, f64)> {
        let params = ModelParams::new(n, s, alpha)?;
        let h = DistilledHamiltonian::from_weights(&params, &w)?;
        let h_ref = assemble_reference(&params, &amps)?;
        let set = perturbed_scars_from(&h, &h_ref)?;
        Ok((set.max_variance(), set.mean_variance()))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    out.push_column("de_max", rows.iter().map(|r| r.0).collect())?;
    out.push_column("de_mean", rows.iter().map(|r| r.1).collect())?;
    out.note("n", n);
    out.note("alpha", alpha);
    out.check_finite()?;
    Ok(out)
}
