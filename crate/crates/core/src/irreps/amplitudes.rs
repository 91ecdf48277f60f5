//! Bright-irrep amplitudes: the unique `delta = 1, 2` stretch states that couple
//! to the symmetric subspace through the pair kernel.

use crate::error::{invalid, Result};
use crate::model::{neumaier, CouplingKernel};

#[derive(Debug, Clone)]
pub struct DistilledAmplitudes {
    n: usize,
    c1: Vec<f64>,
    c2: Vec<f64>,
    degenerate: bool,
}

impl DistilledAmplitudes {
    pub fn n(&self) -> usize {
        self.n
    }
    /// `<J = N/2-1, M = J | down_j>`.
    pub fn c1(&self) -> &[f64] {
        &self.c1
    }
    /// Row-major `N x N`, `<J = N/2-2, M = J | down_j down_k>`.
    pub fn c2(&self) -> &[f64] {
        &self.c2
    }
    #[inline]
    pub fn c2_at(&self, j: usize, k: usize) -> f64 {
        self.c2[j * self.n + k]
    }
    /// True when the kernel marginals are constant and every cross-irrep coupling vanishes.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }
}

/// Below this the `c2` normalization is treated as zero.
const RADICAND_FLOOR: f64 = 1e-20;

pub fn distill(kernel: &CouplingKernel) -> Result<DistilledAmplitudes> {
    let n = kernel.n();
    if n < 4 {
        return Err(invalid(format!("distillation needs N >= 4, got {n}")));
    }
    if !kernel.degenerate_marginals() {
        if let Some(amps) = bright_amplitudes(kernel) {
            return Ok(amps);
        }
    }
    // Any orthonormal pair works here; take the one a unit power law produces.
    let mut amps = bright_amplitudes(&CouplingKernel::new(n, 1.0)?).expect("unit power law is non-degenerate");
    amps.degenerate = true;
    Ok(amps)
}

fn bright_amplitudes(kernel: &CouplingKernel) -> Option<DistilledAmplitudes> {
    let n = kernel.n();
    let nf = n as f64;
    let lam1 = kernel.lambda1();
    let lam0 = kernel.lambda0();

    let mean = 2.0 * lam0 / nf;
    let mut c1: Vec<f64> = lam1.iter().map(|&l| l - mean).collect();
    let norm1 = neumaier(c1.iter().map(|x| x * x)).sqrt();
    if !(norm1 * norm1 >= RADICAND_FLOOR * lam0.max(1.0).powi(2)) {
        return None;
    }
    c1.iter_mut().for_each(|x| *x /= norm1);

    let shift = 2.0 * lam0 / (nf - 1.0);
    let mut c2 = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if j != k {
                c2[j * n + k] = (nf - 2.0) * kernel.weight(j, k) - lam1[j] - lam1[k] + shift;
            }
        }
    }
    // The closed-form radicand equals (1/2) sum of squared numerators / (N-2);
    // summing the squares avoids the cancellation near constant marginals.
    let sq = 0.5 * neumaier(c2.iter().map(|x| x * x));
    if !(sq / (nf - 2.0) >= RADICAND_FLOOR * lam0.max(1.0).powi(2)) {
        return None;
    }
    let norm2 = sq.sqrt();
    c2.iter_mut().for_each(|x| *x /= norm2);
    Some(DistilledAmplitudes { n, c1, c2, degenerate: false })
}

/// Radicand of the closed-form `c2` normalization,
/// `(N-2) lambda0(2 alpha) + 2 lambda0^2 / (N-1) - sum_j lambda1_j^2`.
pub fn c2_radicand(kernel: &CouplingKernel) -> Result<f64> {
    let n = kernel.n() as f64;
    let doubled = CouplingKernel::new(kernel.n(), 2.0 * kernel.alpha())?;
    let lam0 = kernel.lambda0();
    Ok(neumaier([
        (n - 2.0) * doubled.lambda0(),
        2.0 * lam0 * lam0 / (n - 1.0),
        -neumaier(kernel.lambda1().iter().map(|l| l * l)),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_site_example() {
        let k = CouplingKernel::new(3, 1.0).unwrap();
        let l = k.lambda1().to_vec();
        assert_eq!(l, vec![1.5, 2.0, 1.5]);
        // N = 3 is below the distillation range; check the c1 formula directly.
        let mean = 2.0 * k.lambda0() / 3.0;
        let v: Vec<f64> = l.iter().map(|x| x - mean).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let c: Vec<f64> = v.iter().map(|x| x / nrm).collect();
        let s6 = 6f64.sqrt();
        for (a, b) in c.iter().zip([-1.0 / s6, 2.0 / s6, -1.0 / s6]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_radicand_matches_sum_of_squares() {
        for (n, alpha) in [(6, 1.0), (12, 0.5), (40, 2.0), (64, 1.5)] {
            let k = CouplingKernel::new(n, alpha).unwrap();
            let nf = n as f64;
            let lam1 = k.lambda1();
            let shift = 2.0 * k.lambda0() / (nf - 1.0);
            let mut sq = 0.0;
            for j in 0..n {
                for kk in 0..j {
                    let v = (nf - 2.0) * k.weight(j, kk) - lam1[j] - lam1[kk] + shift;
                    sq += v * v;
                }
            }
            let direct = sq / (nf - 2.0);
            let closed = c2_radicand(&k).unwrap();
            assert!((direct - closed).abs() < 1e-9 * direct, "N={n}: {direct} vs {closed}");
        }
    }

    #[test]
    fn degenerate_flag_at_zero_alpha() {
        let a = distill(&CouplingKernel::new(8, 0.0).unwrap()).unwrap();
        assert!(a.degenerate());
        let b = distill(&CouplingKernel::new(8, 0.3).unwrap()).unwrap();
        assert!(!b.degenerate());
    }
}
