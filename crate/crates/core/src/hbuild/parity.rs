//! Spin-flip parity restricted to the distilled space.

use crate::irreps::{BasisLayout, DistilledState};

/// Sign picked up by block `delta` under `|delta, M> -> sign |delta, -M>`.
#[inline]
pub fn parity_sign(delta: usize) -> f64 {
    if delta % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Image of basis vector `flat` under the parity: `(target, sign)`.
pub fn parity_image(layout: &BasisLayout, flat: usize) -> (usize, f64) {
    let idx = layout.index(flat);
    (layout.flat(idx.delta, -idx.m).unwrap(), parity_sign(idx.delta))
}

pub fn apply_parity(psi: &DistilledState) -> DistilledState {
    let layout = psi.layout();
    let mut out = DistilledState::zeros(layout);
    let src = psi.amplitudes();
    let dst = out.amplitudes_mut();
    for (f, a) in src.iter().enumerate() {
        let (t, sgn) = parity_image(&layout, f);
        dst[t] = a * sgn;
    }
    out
}

pub fn parity_expectation(psi: &DistilledState) -> f64 {
    psi.inner(&apply_parity(psi)).re
}
