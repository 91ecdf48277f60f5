//! Exact `2^N`-dimensional Hamiltonian and collective operators.
//!
//! Basis state `x` has site 1 on the most significant bit; a set bit is a down spin.

use num_complex::Complex64;

use crate::error::{invalid, IrdError, Result};
use crate::model::{CouplingKernel, ModelParams};

pub const MAX_EXACT_N: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactState {
    n: usize,
    amps: Vec<Complex64>,
}

impl ExactState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(invalid(format!("expected {} amplitudes, got {}", 1usize << n, amps.len())));
        }
        Ok(Self { n, amps })
    }
    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::new(n, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }
    /// Computational basis state with the given down sites (0-based).
    pub fn product(n: usize, down_sites: &[usize]) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let x = down_sites.iter().fold(0usize, |acc, &j| acc | site_bit(n, j));
        amps[x] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
    pub fn is_real(&self) -> bool {
        self.amps.iter().all(|a| a.im == 0.0)
    }
    pub fn real_parts(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.re).collect()
    }
}

/// Bit mask of 0-based site `j`.
#[inline]
pub fn site_bit(n: usize, j: usize) -> usize {
    1usize << (n - 1 - j)
}

/// `+1` for up, `-1` for down at site `j`.
#[inline]
pub fn sz(n: usize, x: usize, j: usize) -> f64 {
    if x & site_bit(n, j) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn spin_flip(n: usize, x: usize) -> usize {
    x ^ ((1usize << n) - 1)
}

pub fn mirror(n: usize, x: usize) -> usize {
    x.reverse_bits() >> (usize::BITS as usize - n)
}

/// `H = (s-1)/2 sum_j sx_j - s/(4 K) sum_{j!=k} w_jk sz_j sz_k`, diagonal stored explicitly.
#[derive(Debug, Clone)]
pub struct ExactHamiltonian {
    params: ModelParams,
    diag: Vec<f64>,
    field: f64,
}

pub fn build_exact(params: &ModelParams) -> Result<ExactHamiltonian> {
    let n = params.n();
    if n > MAX_EXACT_N {
        return Err(IrdError::ResourceLimit(format!("exact Hamiltonian limited to N <= {MAX_EXACT_N}, got {n}")));
    }
    let kernel = CouplingKernel::from_params(params);
    let coef = -params.s() / (4.0 * params.kac());
    let diag = (0..1usize << n)
        .map(|x| {
            let mut acc = 0.0;
            for j in 0..n {
                for k in j + 1..n {
                    acc += 2.0 * kernel.weight(j, k) * sz(n, x, j) * sz(n, x, k);
                }
            }
            coef * acc
        })
        .collect();
    Ok(ExactHamiltonian { params: *params, diag, field: 0.5 * (params.s() - 1.0) })
}

impl ExactHamiltonian {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }
    pub fn n(&self) -> usize {
        self.params.n()
    }
    pub fn dim(&self) -> usize {
        self.diag.len()
    }
    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }
    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn apply_real(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..self.dim())
            .map(|x| {
                let flips: f64 = (0..n).map(|j| v[x ^ site_bit(n, j)]).sum();
                self.diag[x] * v[x] + self.field * flips
            })
            .collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        (0..self.dim())
            .map(|x| {
                let flips: Complex64 = (0..n).map(|j| v[x ^ site_bit(n, j)]).sum();
                v[x] * self.diag[x] + flips * self.field
            })
            .collect()
    }

    /// Row-major dense matrix, `N <= 12`.
    pub fn to_dense(&self) -> Result<Vec<f64>> {
        let n = self.n();
        if n > 12 {
            return Err(IrdError::ResourceLimit(format!("dense exact matrix limited to N <= 12, got {n}")));
        }
        let d = self.dim();
        let mut m = vec![0.0; d * d];
        for x in 0..d {
            m[x * d + x] = self.diag[x];
            for j in 0..n {
                m[x * d + (x ^ site_bit(n, j))] += self.field;
            }
        }
        Ok(m)
    }

    /// Full spectrum by dense diagonalization, `N <= 12`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        crate::linalg::sym_eigenvalues(&self.to_dense()?, self.dim())
    }
}

/// `J- v` on real vectors.
pub fn apply_jminus(n: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (x, &a) in v.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for j in 0..n {
            let b = site_bit(n, j);
            if x & b == 0 {
                out[x | b] += a;
            }
        }
    }
    out
}

/// `J+ v` on real vectors.
pub fn apply_jplus(n: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (x, &a) in v.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for j in 0..n {
            let b = site_bit(n, j);
            if x & b != 0 {
                out[x & !b] += a;
            }
        }
    }
    out
}

/// `Jz` eigenvalue of basis state `x`.
pub fn jz_value(n: usize, x: usize) -> f64 {
    0.5 * n as f64 - x.count_ones() as f64
}

/// `J^2 v = (Jz^2 + (J+J- + J-J+)/2) v` on complex vectors.
pub fn apply_j2(n: usize, v: &[Complex64]) -> Vec<Complex64> {
    let d = v.len();
    let mut out: Vec<Complex64> = (0..d).map(|x| v[x] * jz_value(n, x).powi(2)).collect();
    // (J+J- + J-J+)/2 = sum_j (s+_j s-_j + s-_j s+_j)/2 + sum_{j!=k} s+_j s-_k
    //                 = N/2 + sum_{j!=k} s+_j s-_k
    for x in 0..d {
        if v[x] == Complex64::new(0.0, 0.0) {
            continue;
        }
        out[x] += v[x] * (0.5 * n as f64);
        for j in 0..n {
            let bj = site_bit(n, j);
            if x & bj != 0 {
                continue;
            }
            for k in 0..n {
                let bk = site_bit(n, k);
                if k != j && x & bk != 0 {
                    // s+_k s-_j: flip j down, k up.
                    out[(x | bj) & !bk] += v[x];
                }
            }
        }
    }
    out
}
