//! States on the distilled space and collective-spin observables.

use num_complex::Complex64;
use std::str::FromStr;

use super::layout::BasisLayout;
use crate::error::{invalid, IrdError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DistilledState {
    layout: BasisLayout,
    amps: Vec<Complex64>,
}

impl DistilledState {
    pub fn zeros(layout: BasisLayout) -> Self {
        Self { amps: vec![Complex64::new(0.0, 0.0); layout.dim()], layout }
    }

    pub fn from_amplitudes(layout: BasisLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(invalid(format!("expected {} amplitudes, got {}", layout.dim(), amps.len())));
        }
        Ok(Self { layout, amps })
    }

    pub fn from_real(layout: BasisLayout, amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(layout, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn basis(layout: BasisLayout, flat: usize) -> Self {
        let mut s = Self::zeros(layout);
        s.amps[flat] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn layout(&self) -> BasisLayout {
        self.layout
    }
    pub fn n(&self) -> usize {
        self.layout.n()
    }
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }
    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }
    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }
    pub fn amplitude(&self, delta: usize, m: i64) -> Complex64 {
        self.layout.flat(delta, m).map_or(Complex64::new(0.0, 0.0), |f| self.amps[f])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(IrdError::Numerical("cannot normalize a zero or non-finite state".into()));
        }
        self.amps.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &DistilledState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Weight in block `delta`.
    pub fn block_population(&self, delta: usize) -> f64 {
        self.amps[self.layout.block(delta)].iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<J> = sum_delta (N/2 - delta) <P_delta>` for a normalized state.
    pub fn spin_number(&self) -> f64 {
        (0..3).map(|d| self.layout.spin(d) as f64 * self.block_population(d)).sum()
    }

    pub fn jz(&self) -> f64 {
        self.layout.iter().map(|i| i.m as f64 * self.amps[i.flat].norm_sqr()).sum()
    }

    pub fn jz2(&self) -> f64 {
        self.layout.iter().map(|i| (i.m * i.m) as f64 * self.amps[i.flat].norm_sqr()).sum()
    }

    /// `<J+>`, whose real and imaginary parts are `<Jx>` and `<Jy>`.
    pub fn jplus(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 0..3 {
            let j = self.layout.spin(d);
            let r = self.layout.block(d);
            let b = &self.amps[r];
            for (i, m) in (-j..j).enumerate() {
                acc += b[i + 1].conj() * b[i] * ladder(j, m);
            }
        }
        acc
    }
}

/// `sqrt(J(J+1) - M(M+1))`, the `J+` matrix element from `M` to `M+1`.
#[inline]
pub fn ladder(j: i64, m: i64) -> f64 {
    (((j - m) * (j + m + 1)) as f64).sqrt()
}

/// Spin-coherent state `|theta, phi> = exp(-i phi Jz) exp(-i theta Jy) |all up>`.
pub fn scs_amplitudes(n: usize, theta: f64, phi: f64) -> Result<DistilledState> {
    let layout = BasisLayout::new(n)?;
    let mut st = DistilledState::zeros(layout);
    let j = layout.spin(0);
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let (lc, ls) = (c.abs().ln(), s.abs().ln());
    let lb = ln_binomials(n);
    for m in -j..=j {
        let up = (j + m) as usize;
        let down = (j - m) as usize;
        if (up > 0 && c == 0.0) || (down > 0 && s == 0.0) {
            continue;
        }
        let mut ln = 0.5 * lb[down];
        if up > 0 {
            ln += up as f64 * lc;
        }
        if down > 0 {
            ln += down as f64 * ls;
        }
        let sign = if (c < 0.0 && up % 2 == 1) != (s < 0.0 && down % 2 == 1) { -1.0 } else { 1.0 };
        let phase = Complex64::from_polar(1.0, -(m as f64) * phi);
        st.amps[layout.flat(0, m).unwrap()] = phase * (sign * ln.exp());
    }
    Ok(st)
}

/// `ln C(n, k)` for `k = 0..=n`, accumulated with compensation.
pub(crate) fn ln_binomials(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in 0..n {
        let inc = ((n - k) as f64 / (k + 1) as f64).ln();
        let t = sum + inc;
        if sum.abs() >= inc.abs() {
            comp += (sum - t) + inc;
        } else {
            comp += (inc - t) + sum;
        }
        sum = t;
        out[k + 1] = sum + comp;
    }
    // Symmetrize so both tails carry the same rounding.
    for k in 0..=n / 2 {
        let v = 0.5 * (out[k] + out[n - k]);
        out[k] = v;
        out[n - k] = v;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialState {
    ZPolarized,
    Ghz,
    XPolarized,
}

impl FromStr for SpecialState {
    type Err = IrdError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "z_polarized" | "z" => Ok(SpecialState::ZPolarized),
            "ghz" => Ok(SpecialState::Ghz),
            "x_polarized" | "x" => Ok(SpecialState::XPolarized),
            other => Err(invalid(format!("unknown initial state '{other}'"))),
        }
    }
}

pub fn special_states(n: usize, kind: SpecialState) -> Result<DistilledState> {
    let layout = BasisLayout::new(n)?;
    let j = layout.spin(0);
    Ok(match kind {
        SpecialState::ZPolarized => DistilledState::basis(layout, layout.flat(0, j).unwrap()),
        SpecialState::Ghz => {
            let mut s = DistilledState::zeros(layout);
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            s.amps[layout.flat(0, j).unwrap()] = h;
            s.amps[layout.flat(0, -j).unwrap()] = h;
            s
        }
        SpecialState::XPolarized => scs_amplitudes(n, std::f64::consts::FRAC_PI_2, 0.0)?,
    })
}
