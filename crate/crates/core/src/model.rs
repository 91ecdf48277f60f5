//! Chain parameters, the power-law coupling kernel and its Kac normalization.

use crate::error::{invalid, Result};

/// Validated parameters `(N, s, alpha)` of the chain
/// `H = (s-1)/2 sum_j sx_j - s/(4 K) sum_{j!=k} sz_j sz_k / |j-k|^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    s: f64,
    alpha: f64,
    kac: f64,
}

impl ModelParams {
    pub fn new(n: usize, s: f64, alpha: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(invalid(format!("N must be even and >= 4, got {n}")));
        }
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(invalid(format!("s must lie in [0, 1], got {s}")));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(invalid(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        let kac = kac_norm(n, alpha)?;
        Ok(Self { n, s, alpha, kac })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    /// Kac constant `(1/(N-1)) sum_{j!=k} |j-k|^-alpha`.
    pub fn kac(&self) -> f64 {
        self.kac
    }
    /// Total spin of the symmetric irrep, `N/2`.
    pub fn half(&self) -> i64 {
        (self.n / 2) as i64
    }

    pub fn with_s(&self, s: f64) -> Result<Self> {
        Self::new(self.n, s, self.alpha)
    }
}

/// `|d|^-alpha` evaluated as `exp(-alpha ln d)`, so `alpha = 0` gives exactly 1.
#[inline]
pub fn pair_weight(d: usize, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        (-alpha * (d as f64).ln()).exp()
    }
}

/// Kac normalization `(1/(N-1)) sum_{j!=k} |j-k|^-alpha`.
pub fn kac_norm(n: usize, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("N must be >= 2, got {n}")));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(invalid(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    // Smallest terms first.
    let mut acc = 0.0;
    for d in (1..n).rev() {
        acc += (n - d) as f64 * pair_weight(d, alpha);
    }
    Ok(2.0 * acc / (n - 1) as f64)
}

/// Dense coupling matrix `w_jk = |j-k|^-alpha` (zero diagonal) with its marginals.
#[derive(Debug, Clone)]
pub struct CouplingKernel {
    n: usize,
    alpha: f64,
    weights: Vec<f64>,
    lambda1: Vec<f64>,
    lambda0: f64,
}

impl CouplingKernel {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("N must be >= 2, got {n}")));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(invalid(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        let by_distance: Vec<f64> = (0..n).map(|d| if d == 0 { 0.0 } else { pair_weight(d, alpha) }).collect();
        let mut weights = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..n {
                weights[j * n + k] = by_distance[j.abs_diff(k)];
            }
        }
        let lambda1: Vec<f64> = (0..n).map(|j| neumaier(weights[j * n..(j + 1) * n].iter().copied())).collect();
        let lambda0 = 0.5 * neumaier(lambda1.iter().copied());
        Ok(Self { n, alpha, weights, lambda1, lambda0 })
    }

    pub fn from_params(params: &ModelParams) -> Self {
        Self::new(params.n(), params.alpha()).expect("validated parameters")
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    #[inline]
    pub fn weight(&self, j: usize, k: usize) -> f64 {
        self.weights[j * self.n + k]
    }
    /// Row-major `N x N` weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    /// Row sums `sum_k w_jk`.
    pub fn lambda1(&self) -> &[f64] {
        &self.lambda1
    }
    /// `sum_{j>k} w_jk`.
    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }
    pub fn kac(&self) -> f64 {
        2.0 * self.lambda0 / (self.n - 1) as f64
    }
    /// True when every site has the same marginal, so the bright-state
    /// amplitudes are not fixed by the kernel.
    pub fn degenerate_marginals(&self) -> bool {
        let first = self.lambda1[0];
        self.lambda1.iter().all(|&l| (l - first).abs() <= 1e-14 * first.abs().max(1.0))
    }
}

/// Compensated summation.
pub(crate) fn neumaier(it: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in it {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Mean-field energy per spin `(2/N) <theta,phi| H(s, alpha=0) |theta,phi>` at large N.
pub fn classical_energy(s: f64, theta: f64, phi: f64) -> f64 {
    (s - 1.0) * theta.sin() * phi.cos() - 0.5 * s * theta.cos().powi(2)
}
