//! Explicit Dicke vectors of the distilled irreps and projections onto them.

use num_complex::Complex64;

use super::exact::{apply_jminus, build_exact, site_bit, sz, ExactState, MAX_EXACT_N};
use crate::error::{invalid, IrdError, Result};
use crate::irreps::{BasisLayout, DistilledAmplitudes, DistilledState};
use crate::model::ModelParams;

/// The `3(N-1)` Dicke vectors of the distilled irreps, in distilled-basis order.
#[derive(Debug, Clone)]
pub struct DickeBasis {
    layout: BasisLayout,
    vectors: Vec<Vec<f64>>,
}

/// Stretch state of block `delta` as a full vector.
pub fn stretch_vector(n: usize, delta: usize, amps: &DistilledAmplitudes) -> Vec<f64> {
    let mut v = vec![0.0; 1 << n];
    match delta {
        0 => v[0] = 1.0,
        1 => {
            for j in 0..n {
                v[site_bit(n, j)] = amps.c1()[j];
            }
        }
        _ => {
            for j in 0..n {
                for k in 0..j {
                    v[site_bit(n, j) | site_bit(n, k)] = amps.c2_at(j, k);
                }
            }
        }
    }
    v
}

pub fn dicke_vectors(n: usize, amps: &DistilledAmplitudes) -> Result<DickeBasis> {
    if n > MAX_EXACT_N {
        return Err(IrdError::ResourceLimit(format!("Dicke vectors limited to N <= {MAX_EXACT_N}")));
    }
    if amps.degenerate() {
        return Err(invalid("degenerate amplitudes do not define bright irreps"));
    }
    if amps.n() != n {
        return Err(invalid(format!("amplitudes built for N = {}, requested N = {n}", amps.n())));
    }
    let layout = BasisLayout::new(n)?;
    let mut vectors = vec![Vec::new(); layout.dim()];
    for delta in 0..3 {
        let j = layout.spin(delta);
        let mut v = stretch_vector(n, delta, amps);
        for m in (-j..=j).rev() {
            if m < j {
                // J- |J, m+1> = sqrt((J+m+1)(J-m)) |J, m>
                let f = (((j + m + 1) * (j - m)) as f64).sqrt();
                v = apply_jminus(n, &v);
                v.iter_mut().for_each(|x| *x /= f);
            }
            vectors[layout.flat(delta, m).unwrap()] = v.clone();
        }
    }
    Ok(DickeBasis { layout, vectors })
}

impl DickeBasis {
    pub fn layout(&self) -> BasisLayout {
        self.layout
    }
    pub fn n(&self) -> usize {
        self.layout.n()
    }
    pub fn vector(&self, flat: usize) -> &[f64] {
        &self.vectors[flat]
    }
    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Coordinates of a full state in the distilled basis and the weight left outside.
    pub fn project(&self, state: &ExactState) -> (DistilledState, f64) {
        let amps: Vec<Complex64> =
            self.vectors.iter().map(|v| v.iter().zip(state.amplitudes()).map(|(&b, a)| a * b).sum()).collect();
        let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let total: f64 = state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        let leakage = (1.0 - kept / total).clamp(0.0, 1.0);
        (DistilledState::from_amplitudes(self.layout, amps).expect("layout dim"), leakage)
    }

    /// Embed a distilled state into the full space.
    pub fn embed(&self, psi: &DistilledState) -> ExactState {
        let d = 1usize << self.n();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (v, a) in self.vectors.iter().zip(psi.amplitudes()) {
            for (o, &b) in out.iter_mut().zip(v) {
                *o += a * b;
            }
        }
        ExactState::new(self.n(), out).expect("dimension")
    }

    /// Compression `P H P` of the exact Hamiltonian, row-major.
    pub fn project_hamiltonian(&self, params: &ModelParams) -> Result<Vec<f64>> {
        let h = build_exact(params)?;
        let d = self.layout.dim();
        let hv: Vec<Vec<f64>> = self.vectors.iter().map(|v| h.apply_real(v)).collect();
        let mut out = vec![0.0; d * d];
        for a in 0..d {
            for b in 0..d {
                out[a * d + b] = dot(&self.vectors[a], &hv[b]);
            }
        }
        Ok(out)
    }

    /// `<dicke a| sz_j sz_k |dicke b>`.
    pub fn sandwich_zz(&self, a: usize, b: usize, j: usize, k: usize) -> f64 {
        let n = self.n();
        let (u, v) = (&self.vectors[a], &self.vectors[b]);
        (0..u.len()).map(|x| u[x] * sz(n, x, j) * sz(n, x, k) * v[x]).sum()
    }
}

pub fn project_distilled(state: &ExactState, basis: &DickeBasis) -> (DistilledState, f64) {
    basis.project(state)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
