//! First-order dressed symmetric eigenstates and their energy uncertainty.

use crate::error::{IrdError, Result};
use crate::hbuild::{assemble, assemble_reference, DistilledHamiltonian};
use crate::irreps::{DistilledAmplitudes, DistilledState};
use crate::linalg::sym_eigen;
use crate::model::ModelParams;

#[derive(Debug, Clone)]
pub struct PerturbedScar {
    /// Position within the symmetric-block reference spectrum.
    pub index: usize,
    /// First-order energy `E_n + <n|V|n>`.
    pub energy: f64,
    pub state: DistilledState,
    /// Norm of the first-order vector before normalization.
    pub raw_norm: f64,
    /// `sqrt(<H^2> - <H>^2)` against the full distilled Hamiltonian.
    pub variance: f64,
    /// Near-degenerate reference states `(delta, index)` left out of the sum.
    pub hybridizations: Vec<(usize, usize)>,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct PerturbedScarSet {
    pub scars: Vec<PerturbedScar>,
    pub degeneracy_threshold: f64,
    /// Largest `|<n|V|n>|`; zero up to rounding since V has no symmetric-block elements.
    pub max_first_order_shift: f64,
}

impl PerturbedScarSet {
    pub fn len(&self) -> usize {
        self.scars.len()
    }
    pub fn is_empty(&self) -> bool {
        self.scars.is_empty()
    }
    pub fn max_variance(&self) -> f64 {
        self.scars.iter().map(|s| s.variance).fold(0.0, f64::max)
    }
    pub fn mean_variance(&self) -> f64 {
        self.scars.iter().map(|s| s.variance).sum::<f64>() / self.scars.len() as f64
    }
    pub fn skipped_terms(&self) -> usize {
        self.scars.iter().map(|s| s.hybridizations.len()).sum()
    }
    /// Largest `|<n'|m'>|` over distinct scars.
    pub fn max_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.scars.iter().enumerate() {
            for b in &self.scars[..i] {
                worst = worst.max(a.state.inner(&b.state).norm());
            }
        }
        worst
    }
    /// Smallest gap between consecutive first-order energies.
    pub fn min_gap(&self) -> f64 {
        self.scars.windows(2).map(|w| (w[1].energy - w[0].energy).abs()).fold(f64::INFINITY, f64::min)
    }
}

pub fn perturbed_scars(params: &ModelParams, amps: &DistilledAmplitudes) -> Result<PerturbedScarSet> {
    let h = assemble(params, amps)?;
    let h_ref = assemble_reference(params, amps)?;
    perturbed_scars_from(&h, &h_ref)
}

/// Reference eigenpairs of one diagonal block.
fn block_eigen(h: &DistilledHamiltonian, delta: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let r = h.layout().block(delta);
    let (o, d) = (r.start, r.len());
    let mut m = vec![0.0; d * d];
    for i in 0..d {
        for &(j, v) in h.row(o + i) {
            if r.contains(&j) {
                m[i * d + (j - o)] = v;
            } else if v != 0.0 {
                return Err(IrdError::Numerical("reference Hamiltonian is not block diagonal".into()));
            }
        }
    }
    sym_eigen(&m, d)
}

pub fn perturbed_scars_from(h: &DistilledHamiltonian, h_ref: &DistilledHamiltonian) -> Result<PerturbedScarSet> {
    let layout = h.layout();
    let dim = layout.dim();
    let v_op = h.difference(h_ref)?;
    let blocks: Vec<(Vec<f64>, Vec<f64>)> = (0..3).map(|d| block_eigen(h_ref, d)).collect::<Result<_>>()?;
    let radius = blocks.iter().flat_map(|b| b.0.iter()).fold(0.0f64, |a, e| a.max(e.abs()));
    let threshold = 1e-8 * radius.max(f64::MIN_POSITIVE);

    let sym = layout.block(0);
    let ns = sym.len();
    let mut scars = Vec::with_capacity(ns);
    let mut max_shift: f64 = 0.0;
    for n in 0..ns {
        let e_n = blocks[0].0[n];
        let u = &blocks[0].1[n * ns..(n + 1) * ns];
        let mut psi = vec![0.0; dim];
        psi[sym.clone()].copy_from_slice(u);
        let vn = v_op.apply_real(&psi);
        let shift: f64 = u.iter().zip(&vn[sym.clone()]).map(|(a, b)| a * b).sum();
        max_shift = max_shift.max(shift.abs());

        let coupling_scale = vn.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let mut hyb = Vec::new();
        let mut used = 0usize;
        for delta in 1..3 {
            let r = layout.block(delta);
            let dl = r.len();
            let (vals, vecs) = &blocks[delta];
            let g = &vn[r.clone()];
            for m in 0..dl {
                let phi = &vecs[m * dl..(m + 1) * dl];
                let c: f64 = phi.iter().zip(g).map(|(a, b)| a * b).sum();
                if c.abs() <= 1e-14 * coupling_scale.max(f64::MIN_POSITIVE) {
                    continue;
                }
                let gap = e_n - vals[m];
                if gap.abs() < threshold {
                    hyb.push((delta, m));
                    continue;
                }
                used += 1;
                let coef = c / gap;
                for (x, p) in psi[r.clone()].iter_mut().zip(phi) {
                    *x += coef * p;
                }
            }
        }
        let raw_norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
        psi.iter_mut().for_each(|x| *x /= raw_norm);
        let hp = h.apply_real(&psi);
        let mean: f64 = psi.iter().zip(&hp).map(|(a, b)| a * b).sum();
        // Residual norm; sqrt(<H^2> - <H>^2) loses half the digits near zero.
        let variance = hp.iter().zip(&psi).map(|(a, b)| (a - mean * b).powi(2)).sum::<f64>().sqrt();
        scars.push(PerturbedScar {
            index: n,
            energy: e_n + shift,
            state: DistilledState::from_real(layout, &psi)?,
            raw_norm,
            variance,
            valid: used > 0 || hyb.is_empty(),
            hybridizations: hyb,
        });
    }
    Ok(PerturbedScarSet { scars, degeneracy_threshold: threshold, max_first_order_shift: max_shift })
}
