//! Loschmidt echoes between the exact distilled evolution and the perturbed-scar evolution.

use faer::Mat;
use num_complex::Complex64;

use super::perturb::{perturbed_scars_from, PerturbedScarSet};
use super::spectrum::{diagonalize, Spectrum};
use crate::error::{invalid, IrdError, Result};
use crate::hbuild::{assemble, assemble_reference};
use crate::irreps::{scs_amplitudes, DistilledAmplitudes, DistilledState};
use crate::linalg::sym_eigen;
use crate::model::ModelParams;

/// Echo engine: scars orthonormalized symmetrically (`S^{-1/2}`) and projected on the eigenbasis.
pub struct Loschmidt<'a> {
    spec: &'a Spectrum,
    energies: Vec<f64>,
    states: Vec<Vec<f64>>,
    overlap: Mat<f64>,
}

#[derive(Debug, Clone)]
pub struct LoschmidtTrace {
    pub times: Vec<f64>,
    pub echo: Vec<f64>,
    pub mean: f64,
}

impl<'a> Loschmidt<'a> {
    pub fn new(spec: &'a Spectrum, scars: &PerturbedScarSet) -> Result<Self> {
        let raw: Vec<Vec<f64>> =
            scars.scars.iter().map(|s| s.state.amplitudes().iter().map(|a| a.re).collect()).collect();
        let ns = raw.len();
        let gram: Vec<f64> = (0..ns * ns).map(|ij| dot(&raw[ij / ns], &raw[ij % ns])).collect();
        let (vals, vecs) = sym_eigen(&gram, ns)?;
        if vals.first().map_or(true, |&v| v <= 1e-8) {
            return Err(IrdError::Numerical("perturbed scars are linearly dependent".into()));
        }
        // S^{-1/2}, eigenvectors stored column-major.
        let mut inv_sqrt = vec![0.0; ns * ns];
        for (k, &lam) in vals.iter().enumerate() {
            let u = &vecs[k * ns..(k + 1) * ns];
            let f = lam.sqrt().recip();
            for a in 0..ns {
                for b in 0..ns {
                    inv_sqrt[a * ns + b] += f * u[a] * u[b];
                }
            }
        }
        let d = spec.dim();
        let states: Vec<Vec<f64>> = (0..ns)
            .map(|n| {
                let mut v = vec![0.0; d];
                for (m, r) in raw.iter().enumerate() {
                    let c = inv_sqrt[m * ns + n];
                    v.iter_mut().zip(r).for_each(|(x, y)| *x += c * y);
                }
                v
            })
            .collect();
        let overlap = Mat::<f64>::from_fn(ns, spec.len(), |n, k| dot(&states[n], spec.vector(k)));
        Ok(Self { spec, energies: scars.scars.iter().map(|s| s.energy).collect(), states, overlap })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Orthonormalized scar `n`.
    pub fn scar_state(&self, n: usize) -> DistilledState {
        DistilledState::from_real(self.spec.layout(), &self.states[n]).expect("dimension")
    }

    /// Energy uncertainty of the orthonormalized scar `n` under `H_D`.
    pub fn scar_variance(&self, n: usize) -> f64 {
        let weights = (0..self.spec.len()).map(|k| (self.overlap[(n, k)].powi(2), self.spec.energy(k)));
        let mean: f64 = weights.clone().map(|(p, e)| p * e).sum();
        weights.map(|(p, e)| p * (e - mean).powi(2)).sum::<f64>().sqrt()
    }

    /// `|sum_n <psi|n'> e^{i E'_n t} <n'| e^{-iHt} |psi>|^2` at each time.
    pub fn echo(&self, psi: &DistilledState, times: &[f64]) -> Vec<f64> {
        let c = self.spec.decompose(psi);
        let a: Vec<Complex64> =
            self.states.iter().map(|s| s.iter().zip(psi.amplitudes()).map(|(&v, x)| x * v).sum()).collect();
        let nt = times.len();
        let d = self.spec.len();
        let wr =
            Mat::<f64>::from_fn(d, nt, |k, t| (c[k] * Complex64::from_polar(1.0, -self.spec.energy(k) * times[t])).re);
        let wi =
            Mat::<f64>::from_fn(d, nt, |k, t| (c[k] * Complex64::from_polar(1.0, -self.spec.energy(k) * times[t])).im);
        let br = &self.overlap * &wr;
        let bi = &self.overlap * &wi;
        (0..nt)
            .map(|t| {
                let mut amp = Complex64::new(0.0, 0.0);
                for (n, an) in a.iter().enumerate() {
                    let ph = Complex64::from_polar(1.0, self.energies[n] * times[t]);
                    amp += an.conj() * ph * Complex64::new(br[(n, t)], bi[(n, t)]);
                }
                amp.norm_sqr()
            })
            .collect()
    }

    pub fn echo_scs(&self, theta: f64, phi: f64, times: &[f64]) -> Result<Vec<f64>> {
        let psi = scs_amplitudes(self.spec.layout().n(), theta, phi)?;
        Ok(self.echo(&psi, times))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Return probability `|<psi| e^{-iHt} |psi>|^2`.
pub fn survival(spec: &Spectrum, psi: &DistilledState, times: &[f64]) -> Vec<f64> {
    let c = spec.decompose(psi);
    let w: Vec<(f64, f64)> = c.iter().enumerate().map(|(k, x)| (spec.energy(k), x.norm_sqr())).collect();
    times
        .iter()
        .map(|&t| w.iter().map(|&(e, p)| Complex64::from_polar(p, -e * t)).sum::<Complex64>().norm_sqr())
        .collect()
}

/// Trapezoid average of `values` over `times`.
pub fn time_average(times: &[f64], values: &[f64]) -> Result<f64> {
    if times.len() != values.len() || times.is_empty() {
        return Err(invalid("time grid and values must be non-empty and equally long"));
    }
    if times.len() == 1 {
        return Ok(values[0]);
    }
    let span = times[times.len() - 1] - times[0];
    if !(span > 0.0) {
        return Err(invalid("time grid must be increasing"));
    }
    let area: f64 = times.windows(2).zip(values.windows(2)).map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1])).sum();
    Ok(area / span)
}

/// Uniform grid of `points` times on `[0, t_max]`.
pub fn uniform_times(t_max: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![0.0];
    }
    (0..points).map(|i| t_max * i as f64 / (points - 1) as f64).collect()
}

pub fn loschmidt(
    params: &ModelParams,
    amps: &DistilledAmplitudes,
    theta: f64,
    phi: f64,
    times: &[f64],
) -> Result<LoschmidtTrace> {
    let h = assemble(params, amps)?;
    let h_ref = assemble_reference(params, amps)?;
    let spec = diagonalize(&h)?;
    let scars = perturbed_scars_from(&h, &h_ref)?;
    let engine = Loschmidt::new(&spec, &scars)?;
    let echo = engine.echo_scs(theta, phi, times)?;
    let mean = time_average(times, &echo)?;
    Ok(LoschmidtTrace { times: times.to_vec(), echo, mean })
}
