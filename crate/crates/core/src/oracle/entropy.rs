//! Irrep populations and entanglement entropies of exact states.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::exact::{apply_j2, site_bit, ExactState};
use crate::error::{invalid, IrdError, Result};
use crate::linalg::hermitian_entropy;

/// `<Pi_J>` for every total spin `J`, keyed by `2J`, from Lagrange projectors in `J^2`.
pub fn irrep_populations(state: &ExactState) -> Result<BTreeMap<i64, f64>> {
    let n = state.n();
    if n > 14 {
        return Err(IrdError::ResourceLimit(format!("irrep populations limited to N <= 14, got {n}")));
    }
    let spins: Vec<i64> = (0..=n as i64).rev().step_by(2).collect();
    let eig = |tj: i64| {
        let j = tj as f64 / 2.0;
        j * (j + 1.0)
    };
    let psi = state.amplitudes();
    let mut out = BTreeMap::new();
    for &tj in &spins {
        let mut v = psi.to_vec();
        for &other in spins.iter().filter(|&&o| o != tj) {
            let j2v = apply_j2(n, &v);
            let (lo, den) = (eig(other), eig(tj) - eig(other));
            v = j2v.iter().zip(&v).map(|(a, b)| (a - b * lo) / den).collect();
        }
        let pop: f64 = psi.iter().zip(&v).map(|(a, b)| (a.conj() * b).re).sum();
        out.insert(tj, pop);
    }
    Ok(out)
}

/// Bipartition for [`entropies`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    /// Sites `1..=N/2` against the rest.
    HalfChain,
    /// Two sites (0-based) against the rest.
    Pair(usize, usize),
}

pub fn entropies(state: &ExactState, cut: Cut) -> Result<f64> {
    let n = state.n();
    if n > 14 {
        return Err(IrdError::ResourceLimit(format!("entropies limited to N <= 14, got {n}")));
    }
    match cut {
        Cut::HalfChain => half_chain_entropy(state),
        Cut::Pair(j, k) => pair_entropy(state, j, k),
    }
}

fn half_chain_entropy(state: &ExactState) -> Result<f64> {
    let n = state.n();
    let a = 1usize << (n / 2);
    let b = 1usize << (n - n / 2);
    let psi = state.amplitudes();
    let (mut re, mut im) = (vec![0.0; a * a], vec![0.0; a * a]);
    for i in 0..a {
        for i2 in 0..=i {
            let mut s = Complex64::new(0.0, 0.0);
            for r in 0..b {
                s += psi[i * b + r] * psi[i2 * b + r].conj();
            }
            re[i * a + i2] = s.re;
            re[i2 * a + i] = s.re;
            im[i * a + i2] = s.im;
            im[i2 * a + i] = -s.im;
        }
    }
    hermitian_entropy(&re, &im, a)
}

/// Two-site reduced density matrix, row-major `4 x 4`, index `2 b_j + b_k`.
pub fn pair_density(state: &ExactState, j: usize, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = state.n();
    if j >= n || k >= n || j == k {
        return Err(invalid(format!("pair ({j}, {k}) must be distinct sites below N = {n}")));
    }
    let (bj, bk) = (site_bit(n, j), site_bit(n, k));
    let psi = state.amplitudes();
    let (mut re, mut im) = (vec![0.0; 16], vec![0.0; 16]);
    for x in 0..psi.len() {
        if x & (bj | bk) != 0 {
            continue;
        }
        let slots = [x, x | bk, x | bj, x | bj | bk];
        for (a, &xa) in slots.iter().enumerate() {
            for (b, &xb) in slots.iter().enumerate() {
                let v = psi[xa] * psi[xb].conj();
                re[a * 4 + b] += v.re;
                im[a * 4 + b] += v.im;
            }
        }
    }
    Ok((re, im))
}

fn pair_entropy(state: &ExactState, j: usize, k: usize) -> Result<f64> {
    let (re, im) = pair_density(state, j, k)?;
    hermitian_entropy(&re, &im, 4)
}

/// Same two-site reduction computed by moving sites `j, k` to the top bits and
/// tracing out the remaining `N-2` sites as one block.
pub fn pair_density_permuted(state: &ExactState, j: usize, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = state.n();
    if j >= n || k >= n || j == k {
        return Err(invalid(format!("pair ({j}, {k}) must be distinct sites below N = {n}")));
    }
    let rest: Vec<usize> = (0..n).filter(|&s| s != j && s != k).collect();
    let d = 1usize << (n - 2);
    let mut mat = vec![Complex64::new(0.0, 0.0); 4 * d];
    for (x, a) in state.amplitudes().iter().enumerate() {
        let bit = |s: usize| (x >> (n - 1 - s)) & 1;
        let row = 2 * bit(j) + bit(k);
        let col = rest.iter().fold(0usize, |acc, &s| (acc << 1) | bit(s));
        mat[row * d + col] = *a;
    }
    let (mut re, mut im) = (vec![0.0; 16], vec![0.0; 16]);
    for a in 0..4 {
        for b in 0..4 {
            let s: Complex64 = (0..d).map(|c| mat[a * d + c] * mat[b * d + c].conj()).sum();
            re[a * 4 + b] = s.re;
            im[a * 4 + b] = s.im;
        }
    }
    Ok((re, im))
}

/// Smallest pair entropy over all site pairs.
pub fn min_pair_entropy(state: &ExactState) -> Result<f64> {
    let n = state.n();
    let mut best = f64::INFINITY;
    for j in 0..n {
        for k in j + 1..n {
            best = best.min(pair_entropy(state, j, k)?);
        }
    }
    Ok(best)
}
