//! Closed-form spherical-tensor weights of the pair interaction between the
//! three distilled irreps, all at bright multiplicity index 1.

use faer::Mat;

use crate::error::{invalid, Result};
use crate::irreps::DistilledAmplitudes;
use crate::model::{neumaier, CouplingKernel, ModelParams};

/// Rank-0, rank-1 and rank-2 weights indexed by `delta`. `f2[a][b]` is stored
/// symmetric; its value is the one with the higher-spin irrep on the bra side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorWeights {
    pub n: usize,
    pub f0: [f64; 3],
    pub f1: [f64; 3],
    pub f2: [[f64; 3]; 3],
    pub degenerate: bool,
}

/// `sqrt(J(J+1)(2J+1)/6)`.
pub fn weight_f1(j: f64) -> f64 {
    (j * (j + 1.0) * (2.0 * j + 1.0) / 6.0).sqrt()
}

/// Rank-2 weight within the symmetric irrep, valid for every even `N`.
pub fn symmetric_f2(n: usize) -> f64 {
    let n = n as f64;
    -((n + 3.0) * (n + 2.0) * (n + 1.0) * (n - 1.0) / (5.0 * n)).sqrt() / 6.0
}

/// Rank-0 weight within the symmetric irrep.
pub fn symmetric_f0(n: usize) -> f64 {
    let n = n as f64;
    (n + 1.0).sqrt() * (1.0 - n) / 12.0
}

pub fn weight_table(params: &ModelParams, amps: &DistilledAmplitudes) -> Result<TensorWeights> {
    let kernel = CouplingKernel::from_params(params);
    weights_for_kernel(&kernel, amps)
}

/// Weights of a kernel-independent reference: cross-irrep weights zero and
/// diagonal blocks evaluated on the constant kernel.
pub fn reference_weights(n: usize, amps: &DistilledAmplitudes) -> Result<TensorWeights> {
    let mut w = weights_for_kernel(&CouplingKernel::new(n, 0.0)?, amps)?;
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                w.f2[a][b] = 0.0;
            }
        }
    }
    w.degenerate = true;
    Ok(w)
}

pub fn weights_for_kernel(kernel: &CouplingKernel, amps: &DistilledAmplitudes) -> Result<TensorWeights> {
    let n = kernel.n();
    if n < 6 {
        return Err(invalid(format!("tensor weights need N >= 6, got {n}")));
    }
    if amps.n() != n {
        return Err(invalid(format!("amplitudes built for N = {}, kernel for N = {n}", amps.n())));
    }
    let nf = n as f64;
    let kac = kernel.kac();
    let c1 = amps.c1();
    let c2 = amps.c2();
    let w = kernel.weights();

    // Row norms r_j = sum_m c2_jm^2, y = c2 . c1 and Gram matrix G = c2 . c2.
    let c2m = Mat::<f64>::from_fn(n, n, |j, k| c2[j * n + k]);
    let gram = &c2m * &c2m;
    let r: Vec<f64> = (0..n).map(|j| gram[(j, j)]).collect();
    let y: Vec<f64> = (0..n).map(|j| neumaier((0..n).map(|m| c2[j * n + m] * c1[m]))).collect();

    let mut s_f0_1 = Vec::with_capacity(n * n);
    let mut s_f0_2 = Vec::with_capacity(n * n);
    let mut s_01 = Vec::with_capacity(n * n);
    let mut s_02 = Vec::with_capacity(n * n);
    let mut s_11 = Vec::with_capacity(n * n);
    let mut s_12 = Vec::with_capacity(n * n);
    let mut s_22 = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let wjk = w[j * n + k];
            let (a, b) = (c1[j], c1[k]);
            let cjk = c2[j * n + k];
            let g = gram[(j, k)];
            s_f0_1.push(wjk * (a - b) * (a - b));
            s_f0_2.push(wjk * (2.0 * g + 2.0 * cjk * cjk - r[j] - r[k]));
            s_01.push(wjk * (a + b));
            s_02.push(wjk * cjk);
            s_11.push(wjk * (2.0 * (a * a + b * b) + 2.0 * a * b));
            s_12.push(wjk * (2.0 * (a + b) * cjk - (y[j] + y[k])));
            s_22.push(wjk * (4.0 * cjk * cjk - 2.0 * (r[j] + r[k] + g)));
        }
    }
    let sum = |v: Vec<f64>| neumaier(v);

    let f0 = [
        symmetric_f0(n),
        (nf - 1.0).sqrt() / 12.0 * ((1.0 - nf) + 2.0 / kac * sum(s_f0_1)),
        (nf - 3.0).sqrt() / 12.0 * ((1.0 - nf) - 2.0 / kac * sum(s_f0_2)),
    ];
    let f1 = [0, 1, 2].map(|d| weight_f1(nf / 2.0 - d as f64));

    let mut f2 = [[0.0; 3]; 3];
    f2[0][0] = symmetric_f2(n);
    f2[1][1] =
        ((nf + 1.0) * nf * (nf - 1.0) / (5.0 * (nf - 2.0) * (nf - 3.0))).sqrt() / 6.0 * ((1.0 - nf) + sum(s_11) / kac);
    f2[2][2] = ((nf - 1.0) * (nf - 2.0) * (nf - 3.0) / (5.0 * (nf - 4.0) * (nf - 5.0))).sqrt() / 6.0
        * ((1.0 - nf) - sum(s_22) / kac);
    if !amps.degenerate() {
        f2[0][1] = ((nf + 2.0) * (nf + 1.0) / (30.0 * (nf - 2.0))).sqrt() / (2.0 * kac) * sum(s_01);
        f2[0][2] = -((nf + 1.0) / 30.0).sqrt() / kac * sum(s_02);
        f2[1][2] = -(nf * (nf - 1.0) / (30.0 * (nf - 4.0))).sqrt() / (2.0 * kac) * sum(s_12);
    }
    f2[1][0] = f2[0][1];
    f2[2][0] = f2[0][2];
    f2[2][1] = f2[1][2];

    Ok(TensorWeights { n, f0, f1, f2, degenerate: amps.degenerate() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::distill;

    #[test]
    fn f1_values() {
        assert!((weight_f1(0.5) - 0.5).abs() < 1e-15);
        assert!((weight_f1(1.0) - 1.0).abs() < 1e-15);
        assert!((weight_f1(2.0) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn symmetric_weights() {
        assert!((symmetric_f2(4) + 31.5f64.sqrt() / 6.0).abs() < 1e-14);
        assert!((symmetric_f0(8) + 1.75).abs() < 1e-15);
    }

    #[test]
    fn brute_force_trace_values_at_n8() {
        // Frozen from an independent projection of the 256-dim operator (s = 1/2, alpha = 1).
        let p = ModelParams::new(8, 0.5, 1.0).unwrap();
        let a = distill(&CouplingKernel::from_params(&p)).unwrap();
        let t = weight_table(&p, &a).unwrap();
        let f0 = [-1.75, -0.8631544137801, -0.3865418133017];
        let f2 = [
            [-2.19374109684803, 0.26254873384356, -0.43238659089430],
            [0.0, -1.20158676306837, 0.05853599254904],
            [0.0, 0.0, -0.43692801224989],
        ];
        for d in 0..3 {
            assert!((t.f0[d] - f0[d]).abs() < 1e-11, "f0[{d}] = {}", t.f0[d]);
            for e in d..3 {
                assert!((t.f2[d][e] - f2[d][e]).abs() < 1e-11, "f2[{d}][{e}] = {}", t.f2[d][e]);
            }
        }
    }

    #[test]
    fn cross_weights_vanish_on_constant_kernel() {
        let p = ModelParams::new(10, 0.5, 0.0).unwrap();
        let a = distill(&CouplingKernel::from_params(&p)).unwrap();
        let t = weight_table(&p, &a).unwrap();
        assert_eq!(t.f2[0][1], 0.0);
        assert_eq!(t.f2[0][2], 0.0);
        assert_eq!(t.f2[1][2], 0.0);
        // The sums vanish analytically too: evaluate them with the flag ignored.
        let b = distill(&CouplingKernel::new(10, 1.0).unwrap()).unwrap();
        let k0 = CouplingKernel::new(10, 0.0).unwrap();
        let s: f64 = (0..10)
            .flat_map(|j| (0..10).map(move |k| (j, k)))
            .filter(|(j, k)| j != k)
            .map(|(j, k)| k0.weight(j, k) * (b.c1()[j] + b.c1()[k]))
            .sum();
        assert!(s.abs() < 1e-12);
    }

    #[test]
    fn small_n_rejected() {
        let p = ModelParams::new(4, 0.5, 1.0).unwrap();
        let a = distill(&CouplingKernel::from_params(&p)).unwrap();
        assert!(weight_table(&p, &a).is_err());
    }
}
