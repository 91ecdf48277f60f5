//! Reduction of the exact Hamiltonian by spin-flip parity and mirror symmetry.

use super::exact::{mirror, spin_flip, ExactHamiltonian};
use crate::error::{IrdError, Result};
use crate::linalg::sym_eigen;

/// One `(parity, mirror)` block with its orthonormal symmetrized basis and spectrum.
#[derive(Debug, Clone)]
pub struct SymmetrySector {
    pub parity: i8,
    pub mirror: i8,
    /// Sparse basis vectors as `(computational index, coefficient)` lists.
    pub basis: Vec<Vec<(usize, f64)>>,
    /// Reduced Hamiltonian, row-major.
    pub block: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    /// Column-major eigenvectors in the sector basis.
    pub eigenvectors: Vec<f64>,
    full_dim: usize,
}

impl SymmetrySector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        let d = self.dim();
        &self.eigenvectors[k * d..(k + 1) * d]
    }

    /// Eigenvector `k` as a full `2^N` vector.
    pub fn full_eigenvector(&self, k: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.full_dim];
        for (c, b) in self.eigenvector(k).iter().zip(&self.basis) {
            for &(x, v) in b {
                out[x] += c * v;
            }
        }
        out
    }
}

/// All four sectors, diagonalized. Dense eigensolves, `N <= 14`.
pub fn symmetry_sectors(h: &ExactHamiltonian) -> Result<Vec<SymmetrySector>> {
    let n = h.n();
    if n > 14 {
        return Err(IrdError::ResourceLimit(format!("sector diagonalization limited to N <= 14, got {n}")));
    }
    let dim = h.dim();
    let mut out = Vec::with_capacity(4);
    for (parity, mir) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        // Orbit representatives are the smallest element of {x, Fx, Rx, FRx}.
        let mut basis: Vec<Vec<(usize, f64)>> = Vec::new();
        let mut slot = vec![usize::MAX; dim];
        for x in 0..dim {
            let f = spin_flip(n, x);
            let r = mirror(n, x);
            let fr = spin_flip(n, r);
            if x > f.min(r).min(fr) {
                continue;
            }
            let mut v: Vec<(usize, f64)> = Vec::with_capacity(4);
            for (y, chi) in [(x, 1.0), (f, parity as f64), (r, mir as f64), (fr, (parity * mir) as f64)] {
                match v.iter_mut().find(|e| e.0 == y) {
                    Some(e) => e.1 += chi,
                    None => v.push((y, chi)),
                }
            }
            v.retain(|e| e.1 != 0.0);
            if v.is_empty() {
                continue;
            }
            let nrm = v.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt();
            v.iter_mut().for_each(|e| e.1 /= nrm);
            for e in &v {
                slot[e.0] = basis.len();
            }
            basis.push(v);
        }
        let d = basis.len();
        let coef_at = |c: usize, y: usize| basis[c].iter().find(|e| e.0 == y).map_or(0.0, |e| e.1);
        let mut block = vec![0.0; d * d];
        let field = h.field();
        for (a, b) in basis.iter().enumerate() {
            for &(x, v) in b {
                // Diagonal part.
                let c = slot[x];
                block[c * d + a] += coef_at(c, x) * h.diagonal()[x] * v;
                for j in 0..n {
                    let y = x ^ (1usize << (n - 1 - j));
                    let c = slot[y];
                    if c != usize::MAX {
                        block[c * d + a] += coef_at(c, y) * field * v;
                    }
                }
            }
        }
        let (eigenvalues, eigenvectors) = sym_eigen(&block, d)?;
        out.push(SymmetrySector { parity, mirror: mir, basis, block, eigenvalues, eigenvectors, full_dim: dim });
    }
    Ok(out)
}
