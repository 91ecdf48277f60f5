//! Clebsch-Gordan coefficients `<j1 m1; j2 m2 | J M>` for small `j2`, Condon-Shortley phases.
//!
//! The Racah sum has at most `2 j2 + 1` terms. Its polynomial part is summed
//! exactly in `i128`; the square-root factor is a product of factorial ratios
//! whose arguments pair up to within a few units, so every logarithm stays
//! short and nothing overflows at large `j1`.

use super::spin::HalfInt;
use crate::error::{invalid, Result};

/// Largest supported `2 j2`.
pub const MAX_TWICE_J2: i64 = 4;

pub fn cg_coefficient(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<f64> {
    for (name, spin) in [("j1", j1), ("j2", j2), ("J", j)] {
        if spin.twice() < 0 {
            return Err(invalid(format!("{name} = {spin} is negative")));
        }
    }
    if j2.twice() > MAX_TWICE_J2 {
        return Err(invalid(format!("j2 = {j2} exceeds the supported rank 2")));
    }
    for (name, spin, proj) in [("m1", j1, m1), ("m2", j2, m2), ("M", j, m)] {
        if (spin.twice() - proj.twice()).rem_euclid(2) != 0 {
            return Err(invalid(format!("{name} = {proj} inconsistent with spin {spin}")));
        }
    }
    if (j1.twice() + j2.twice() + j.twice()) % 2 != 0 {
        return Err(invalid(format!("j1 + j2 + J = {} + {} + {} is not an integer", j1, j2, j)));
    }
    if m1.twice() + m2.twice() != m.twice()
        || m1.abs() > j1
        || m2.abs() > j2
        || m.abs() > j
        || j < (j1 - j2).abs()
        || j > j1 + j2
    {
        return Ok(0.0);
    }
    Ok(racah_small(j1, m1, j2, m2, j, m))
}

/// Convenience wrapper for integer and half-integer arguments given as `f64`.
pub fn cg(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<f64> {
    let h = |x: f64| -> Result<HalfInt> {
        let t = 2.0 * x;
        if !t.is_finite() || (t - t.round()).abs() > 1e-9 {
            return Err(invalid(format!("{x} is not a half-integer")));
        }
        Ok(HalfInt::from_twice(t.round() as i64))
    };
    cg_coefficient(h(j1)?, h(m1)?, h(j2)?, h(m2)?, h(j)?, h(m)?)
}

fn racah_small(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    // All combinations below are integers once the selection rules hold.
    let i = |x: HalfInt| x.twice() / 2;
    let a = i(j1 + j2 - j);
    let b = i(j1 - m1);
    let c = i(j2 + m2);
    let d = i(j - j2 + m1);
    let e = i(j - j1 - m2);
    let k0 = 0.max(-d).max(-e);
    let k1 = a.min(b).min(c);
    if k0 > k1 {
        return 0.0;
    }

    // sum_k (-1)^k / (k! (a-k)! (b-k)! (c-k)! (d+k)! (e+k)!)
    //   = s_int / (a! (b-k0)! (c-k0)! (d+k1)! (e+k1)!)
    let mut s_int: i128 = 0;
    for k in k0..=k1 {
        let mut term = binom(a, k);
        term *= rising(b - k + 1, b - k0);
        term *= rising(c - k + 1, c - k0);
        term *= rising(d + k + 1, d + k1);
        term *= rising(e + k + 1, e + k1);
        if k % 2 == 0 {
            s_int += term;
        } else {
            s_int -= term;
        }
    }
    if s_int == 0 {
        return 0.0;
    }

    let plus = [i(j + j1 - j2), i(j - j1 + j2), a, i(j + m), i(j - m), i(j1 - m1), i(j1 + m1), i(j2 - m2), i(j2 + m2)];
    let minus = [i(j1 + j2 + j) + 1, a, a, b - k0, b - k0, c - k0, c - k0, d + k1, d + k1, e + k1, e + k1];
    let ln_sq = ((j.twice() + 1) as f64).ln() + ln_factorial_quotient(&plus, &minus);
    let ln_mag = 0.5 * ln_sq + (s_int.unsigned_abs() as f64).ln();
    s_int.signum() as f64 * ln_mag.exp()
}

fn binom(n: i64, k: i64) -> i128 {
    let mut r: i128 = 1;
    for t in 0..k {
        r = r * (n - t) as i128 / (t + 1) as i128;
    }
    r
}

/// `lo * (lo+1) * ... * hi`, empty product when `hi < lo`.
fn rising(lo: i64, hi: i64) -> i128 {
    (lo..=hi).fold(1i128, |acc, x| acc * x as i128)
}

/// `ln(prod p_i! / prod q_j!)`, pairing sorted arguments so each ratio is short.
pub(crate) fn ln_factorial_quotient(plus: &[i64], minus: &[i64]) -> f64 {
    let mut p: Vec<i64> = plus.to_vec();
    let mut q: Vec<i64> = minus.to_vec();
    p.sort_unstable_by(|x, y| y.cmp(x));
    q.sort_unstable_by(|x, y| y.cmp(x));
    let len = p.len().max(q.len());
    p.resize(len, 0);
    q.resize(len, 0);
    p.iter().zip(&q).map(|(&x, &y)| ln_factorial_ratio(x, y)).sum()
}

/// `ln(p! / q!)`.
fn ln_factorial_ratio(p: i64, q: i64) -> f64 {
    if p >= q {
        (q + 1..=p).map(|t| (t as f64).ln()).sum()
    } else {
        -(p + 1..=q).map(|t| (t as f64).ln()).sum::<f64>()
    }
}
