//! Spin-1 (minor) times spin-(N/2 - 1) (major) factorization of the distilled space.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::irreps::{cg_coefficient, BasisLayout, DistilledState, HalfInt};
use crate::linalg::hermitian_entropy;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyState {
    n: usize,
    amps: Vec<Complex64>,
}

impl TwoBodyState {
    pub fn n(&self) -> usize {
        self.n
    }
    /// Major spin `N/2 - 1`.
    pub fn major_spin(&self) -> i64 {
        self.n as i64 / 2 - 1
    }
    fn major_len(&self) -> usize {
        self.n - 1
    }
    fn slot(&self, m: i64, major: i64) -> usize {
        (m + 1) as usize * self.major_len() + (major + self.major_spin()) as usize
    }
    pub fn amplitude(&self, m: i64, major: i64) -> Complex64 {
        if m.abs() > 1 || major.abs() > self.major_spin() {
            return Complex64::new(0.0, 0.0);
        }
        self.amps[self.slot(m, major)]
    }
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// 3x3 reduced density matrix of the spin-1 factor, row-major `(re, im)`.
    pub fn minor_density(&self) -> (Vec<f64>, Vec<f64>) {
        let (mut re, mut im) = (vec![0.0; 9], vec![0.0; 9]);
        let l = self.major_len();
        for a in 0..3 {
            for b in 0..3 {
                let s: Complex64 = (0..l).map(|k| self.amps[a * l + k] * self.amps[b * l + k].conj()).sum();
                re[a * 3 + b] = s.re;
                im[a * 3 + b] = s.im;
            }
        }
        (re, im)
    }

    /// Reduced density matrix of the major spin, `(N-1) x (N-1)`.
    pub fn major_density(&self) -> (Vec<f64>, Vec<f64>) {
        let l = self.major_len();
        let (mut re, mut im) = (vec![0.0; l * l], vec![0.0; l * l]);
        for p in 0..l {
            for q in 0..l {
                let s: Complex64 = (0..3).map(|a| self.amps[a * l + p] * self.amps[a * l + q].conj()).sum();
                re[p * l + q] = s.re;
                im[p * l + q] = s.im;
            }
        }
        (re, im)
    }
}

/// Phase of each distilled irrep in the series. The distilled `delta = 1` stretch state is
/// positive on strongly coupled sites, while the minor particle sits on the weakly coupled ones.
const SERIES_PHASE: [f64; 3] = [1.0, -1.0, 1.0];

fn coupling(n: usize, delta: usize, m: i64, major: i64) -> Result<f64> {
    let j = n as i64 / 2 - delta as i64;
    let big = HalfInt::from_twice(2 * (n as i64 / 2 - 1));
    let c = cg_coefficient(
        big,
        HalfInt::from_twice(2 * major),
        HalfInt::ONE,
        HalfInt::from_twice(2 * m),
        HalfInt::from_twice(2 * j),
        HalfInt::from_twice(2 * (major + m)),
    )?;
    Ok(SERIES_PHASE[delta] * c)
}

pub fn two_body_map(psi: &DistilledState) -> Result<TwoBodyState> {
    let n = psi.n();
    if n < 6 {
        return Err(invalid("two-body map needs N >= 6"));
    }
    let layout = psi.layout();
    let jmaj = n as i64 / 2 - 1;
    let mut out = TwoBodyState { n, amps: vec![Complex64::new(0.0, 0.0); 3 * (n - 1)] };
    for m in -1..=1 {
        for major in -jmaj..=jmaj {
            let total = major + m;
            let mut acc = Complex64::new(0.0, 0.0);
            for delta in 0..3 {
                if let Some(f) = layout.flat(delta, total) {
                    acc += psi.amplitudes()[f] * coupling(n, delta, m, major)?;
                }
            }
            let s = out.slot(m, major);
            out.amps[s] = acc;
        }
    }
    Ok(out)
}

pub fn two_body_inverse(tb: &TwoBodyState) -> Result<DistilledState> {
    let layout = BasisLayout::new(tb.n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for ix in layout.iter() {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in -1..=1 {
            let major = ix.m - m;
            if major.abs() <= tb.major_spin() {
                acc += tb.amplitude(m, major) * coupling(tb.n, ix.delta, m, major)?;
            }
        }
        amps[ix.flat] = acc;
    }
    DistilledState::from_amplitudes(layout, amps)
}

/// Von Neumann entropy (natural log) of the spin-1 factor.
pub fn two_body_entropy(psi: &DistilledState) -> Result<f64> {
    let tb = two_body_map(psi)?;
    let (re, im) = tb.minor_density();
    hermitian_entropy(&re, &im, 3)
}

/// Same entropy computed from the major side.
pub fn two_body_entropy_major(psi: &DistilledState) -> Result<f64> {
    let tb = two_body_map(psi)?;
    let (re, im) = tb.major_density();
    hermitian_entropy(&re, &im, tb.n - 1)
}
