//! Full eigendecomposition of the distilled Hamiltonian, split by parity.

use num_complex::Complex64;

use crate::error::{IrdError, Result};
use crate::hbuild::{parity_image, DistilledHamiltonian};
use crate::irreps::{BasisLayout, DistilledState};
use crate::linalg::sym_eigen;

#[derive(Debug, Clone)]
pub struct Spectrum {
    layout: BasisLayout,
    energies: Vec<f64>,
    vectors: Vec<f64>,
    parity: Vec<i8>,
}

/// Orthonormal parity-adapted basis: `(parity, [(flat, coef)])` per vector.
fn parity_basis(layout: &BasisLayout) -> Vec<(i8, Vec<(usize, f64)>)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(layout.dim());
    for f in 0..layout.dim() {
        let (t, sgn) = parity_image(layout, f);
        if t == f {
            out.push((sgn as i8, vec![(f, 1.0)]));
        } else if f < t {
            out.push((1, vec![(f, h), (t, sgn * h)]));
            out.push((-1, vec![(f, h), (t, -sgn * h)]));
        }
    }
    out
}

pub fn diagonalize(h: &DistilledHamiltonian) -> Result<Spectrum> {
    let layout = h.layout();
    let d = layout.dim();
    if (0..d).any(|i| h.row(i).iter().any(|e| !e.1.is_finite())) {
        return Err(IrdError::Numerical("non-finite Hamiltonian entry".into()));
    }
    let basis = parity_basis(&layout);
    let mut pairs: Vec<(f64, i8, Vec<f64>)> = Vec::with_capacity(d);
    for sector in [1i8, -1] {
        let sb: Vec<&Vec<(usize, f64)>> = basis.iter().filter(|b| b.0 == sector).map(|b| &b.1).collect();
        let ds = sb.len();
        let mut slot = vec![(usize::MAX, 0.0); d];
        for (a, v) in sb.iter().enumerate() {
            for &(f, c) in v.iter() {
                slot[f] = (a, c);
            }
        }
        let mut m = vec![0.0; ds * ds];
        for (b, v) in sb.iter().enumerate() {
            for &(f, c) in v.iter() {
                for &(g, hv) in h.row(f) {
                    let (a, ca) = slot[g];
                    if a != usize::MAX {
                        m[a * ds + b] += ca * hv * c;
                    }
                }
            }
        }
        let (vals, vecs) = sym_eigen(&m, ds)?;
        for k in 0..ds {
            let mut full = vec![0.0; d];
            for (a, v) in sb.iter().enumerate() {
                let x = vecs[k * ds + a];
                for &(f, c) in v.iter() {
                    full[f] += c * x;
                }
            }
            fix_sign(&mut full);
            pairs.push((vals[k], sector, full));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut energies = Vec::with_capacity(d);
    let mut parity = Vec::with_capacity(d);
    let mut vectors = Vec::with_capacity(d * d);
    for (e, p, v) in pairs {
        energies.push(e);
        parity.push(p);
        vectors.extend_from_slice(&v);
    }
    Ok(Spectrum { layout, energies, vectors, parity })
}

/// Make the largest-magnitude component positive.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

impl Spectrum {
    pub fn layout(&self) -> BasisLayout {
        self.layout
    }
    pub fn dim(&self) -> usize {
        self.layout.dim()
    }
    pub fn len(&self) -> usize {
        self.energies.len()
    }
    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
    pub fn energy(&self, k: usize) -> f64 {
        self.energies[k]
    }
    pub fn vector(&self, k: usize) -> &[f64] {
        let d = self.dim();
        &self.vectors[k * d..(k + 1) * d]
    }
    /// Parity eigenvalue of eigenvector `k`.
    pub fn parity(&self, k: usize) -> i8 {
        self.parity[k]
    }
    pub fn state(&self, k: usize) -> DistilledState {
        DistilledState::from_real(self.layout, self.vector(k)).expect("dimension")
    }
    pub fn radius(&self) -> f64 {
        self.energies.iter().fold(0.0, |a, e| a.max(e.abs()))
    }

    /// Weight of eigenvector `k` in the symmetric block.
    pub fn sym_population(&self, k: usize) -> f64 {
        self.vector(k)[self.layout.block(0)].iter().map(|x| x * x).sum()
    }

    /// `<J>` of eigenvector `k`.
    pub fn spin_number(&self, k: usize) -> f64 {
        let v = self.vector(k);
        (0..3).map(|d| self.layout.spin(d) as f64 * v[self.layout.block(d)].iter().map(|x| x * x).sum::<f64>()).sum()
    }

    /// Eigenbasis coordinates `<k|psi>`.
    pub fn decompose(&self, psi: &DistilledState) -> Vec<Complex64> {
        let a = psi.amplitudes();
        (0..self.len()).map(|k| self.vector(k).iter().zip(a).map(|(&v, x)| x * v).sum()).collect()
    }

    /// `sum_k exp(-i E_k t) c_k |k>`.
    pub fn evolve_coefficients(&self, coeffs: &[Complex64], t: f64) -> DistilledState {
        let d = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (k, c) in coeffs.iter().enumerate() {
            let ph = *c * Complex64::from_polar(1.0, -self.energies[k] * t);
            if ph == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.vector(k)) {
                *o += ph * v;
            }
        }
        DistilledState::from_amplitudes(self.layout, out).expect("dimension")
    }

    /// Largest residual `|H v - E v|` over all eigenpairs.
    pub fn max_residual(&self, h: &DistilledHamiltonian) -> f64 {
        (0..self.len())
            .map(|k| {
                let v = self.vector(k);
                let hv = h.apply_real(v);
                hv.iter().zip(v).map(|(a, b)| (a - self.energies[k] * b).abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// `psi(t) = V exp(-i E t) V^T psi0`.
pub fn evolve(spec: &Spectrum, psi0: &DistilledState, t: f64) -> DistilledState {
    spec.evolve_coefficients(&spec.decompose(psi0), t)
}
