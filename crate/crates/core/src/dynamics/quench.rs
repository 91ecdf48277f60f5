//! Collective observables along exact distilled evolution.

use super::spectrum::{diagonalize, Spectrum};
use crate::error::Result;
use crate::hbuild::{assemble, DistilledHamiltonian};
use crate::irreps::{DistilledAmplitudes, DistilledState};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// `X^2 + Y^2 + Z^2`.
    pub r2: f64,
    /// `(4/N^2)(<Jz^2> - <Jz>^2)`.
    pub dz2: f64,
    pub energy: f64,
}

/// Scaled collective moments of one state.
pub fn collective_point(psi: &DistilledState, t: f64, energy: f64) -> QuenchPoint {
    let scale = 2.0 / psi.n() as f64;
    let jp = psi.jplus();
    let jz = psi.jz();
    let (x, y, z) = (scale * jp.re, scale * jp.im, scale * jz);
    QuenchPoint { t, x, y, z, r2: x * x + y * y + z * z, dz2: scale * scale * (psi.jz2() - jz * jz), energy }
}

pub fn quench_with(
    h: &DistilledHamiltonian,
    spec: &Spectrum,
    psi0: &DistilledState,
    times: &[f64],
) -> Vec<QuenchPoint> {
    let c = spec.decompose(psi0);
    times
        .iter()
        .map(|&t| {
            let psi = spec.evolve_coefficients(&c, t);
            collective_point(&psi, t, h.expectation(&psi))
        })
        .collect()
}

pub fn quench(
    params: &ModelParams,
    amps: &DistilledAmplitudes,
    psi0: &DistilledState,
    times: &[f64],
) -> Result<Vec<QuenchPoint>> {
    let h = assemble(params, amps)?;
    let spec = diagonalize(&h)?;
    Ok(quench_with(&h, &spec, psi0, times))
}
