//! Thin wrappers over the dense symmetric eigensolver.

use faer::{Mat, Side};

use crate::error::{IrdError, Result};

/// Eigenvalues (ascending) and column-major orthonormal eigenvectors of a
/// real-symmetric matrix given row-major.
pub(crate) fn sym_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(IrdError::Numerical("non-finite matrix entry".into()));
    }
    let m = Mat::<f64>::from_fn(n, n, |i, j| a[i * n + j]);
    let evd =
        m.self_adjoint_eigen(Side::Lower).map_err(|e| IrdError::Numerical(format!("eigensolver failed: {e:?}")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let vals: Vec<f64> = (0..n).map(|i| s[i]).collect();
    let mut vecs = vec![0.0; n * n];
    for k in 0..n {
        for i in 0..n {
            vecs[k * n + i] = u[(i, k)];
        }
    }
    Ok((vals, vecs))
}

pub(crate) fn sym_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(IrdError::Numerical("non-finite matrix entry".into()));
    }
    let m = Mat::<f64>::from_fn(n, n, |i, j| a[i * n + j]);
    m.self_adjoint_eigenvalues(Side::Lower).map_err(|e| IrdError::Numerical(format!("eigensolver failed: {e:?}")))
}

/// `-sum p ln p` over eigenvalues of a density matrix, ignoring round-off negatives.
pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > 1e-300).map(|&p| -p * p.ln()).sum::<f64>().max(0.0)
}

/// Eigenvalues of a complex Hermitian matrix (row-major) via its real
/// `2n x 2n` embedding, which doubles every eigenvalue.
pub(crate) fn hermitian_eigenvalues(re: &[f64], im: &[f64], n: usize) -> Result<Vec<f64>> {
    let m = 2 * n;
    let mut big = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (re[i * n + j], im[i * n + j]);
            big[i * m + j] = a;
            big[(i + n) * m + j + n] = a;
            big[i * m + j + n] = -b;
            big[(i + n) * m + j] = b;
        }
    }
    let vals = sym_eigenvalues(&big, m)?;
    Ok(vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Von Neumann entropy of a complex Hermitian density matrix.
pub(crate) fn hermitian_entropy(re: &[f64], im: &[f64], n: usize) -> Result<f64> {
    if im.iter().all(|&x| x == 0.0) {
        return Ok(entropy_of(&sym_eigenvalues(re, n)?));
    }
    Ok(entropy_of(&hermitian_eigenvalues(re, im, n)?))
}
