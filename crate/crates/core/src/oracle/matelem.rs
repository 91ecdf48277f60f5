//! `<J,M| sz_j sz_k |J',M>` from stretch-state amplitudes through the
//! normal-ordered ladder identity, and the trace definitions of the tensor weights.

use std::collections::BTreeMap;

use super::dicke::DickeBasis;
use super::exact::site_bit;
use crate::error::{invalid, Result};
use crate::irreps::{cg_coefficient, DistilledAmplitudes, HalfInt};
use crate::model::{CouplingKernel, ModelParams};

type Sparse = BTreeMap<usize, f64>;

fn stretch_sparse(n: usize, delta: usize, amps: &DistilledAmplitudes) -> Sparse {
    let mut s = Sparse::new();
    match delta {
        0 => {
            s.insert(0, 1.0);
        }
        1 => {
            for j in 0..n {
                s.insert(site_bit(n, j), amps.c1()[j]);
            }
        }
        _ => {
            for j in 0..n {
                for k in 0..j {
                    s.insert(site_bit(n, j) | site_bit(n, k), amps.c2_at(j, k));
                }
            }
        }
    }
    s
}

fn lower(n: usize, v: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (&x, &a) in v {
        for j in 0..n {
            let b = site_bit(n, j);
            if x & b == 0 {
                *out.entry(x | b).or_insert(0.0) += a;
            }
        }
    }
    out
}

/// Sparse `|J = N/2 - delta, M>`.
fn dicke_sparse(n: usize, delta: usize, m: i64, amps: &DistilledAmplitudes) -> Sparse {
    let j = (n / 2) as i64 - delta as i64;
    let mut v = stretch_sparse(n, delta, amps);
    for mm in (m..j).rev() {
        let f = (((j + mm + 1) * (j - mm)) as f64).sqrt();
        v = lower(n, &v);
        v.values_mut().for_each(|a| *a /= f);
    }
    v
}

/// `<J = N/2 - delta, M | down sites>` from the stretch amplitudes.
pub fn dicke_amplitude(n: usize, amps: &DistilledAmplitudes, delta: usize, m: i64, down: &[usize]) -> f64 {
    let x = down.iter().fold(0, |acc, &j| acc | site_bit(n, j));
    dicke_sparse(n, delta, m, amps).get(&x).copied().unwrap_or(0.0)
}

fn sz_bit(x: usize, b: usize) -> f64 {
    if x & b == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `<J,M| sz_j sz_k |J',M>` for `N/2-2 <= J' <= J <= N/2`, sites 0-based.
pub fn matelem_sigzsigz(
    n: usize,
    amps: &DistilledAmplitudes,
    j_bra: i64,
    j_ket: i64,
    m: i64,
    site_j: usize,
    site_k: usize,
) -> Result<f64> {
    let half = (n / 2) as i64;
    if !(half - 2 <= j_ket && j_ket <= j_bra && j_bra <= half) || m.abs() > j_ket {
        return Err(invalid(format!("quantum numbers J = {j_bra}, J' = {j_ket}, M = {m} out of range")));
    }
    if site_j >= n || site_k >= n || site_j == site_k {
        return Err(invalid(format!("sites ({site_j}, {site_k}) must be distinct and below N = {n}")));
    }
    let (bj, bk) = (site_bit(n, site_j), site_bit(n, site_k));
    let ket = stretch_sparse(n, (half - j_ket) as usize, amps);
    let lowerings = j_ket - m;
    let jb = j_bra as f64;

    // || J-^n |J', J'> ||
    let norm_ket: f64 = (0..lowerings).map(|i| ((2 * j_ket - i) as f64 * (i + 1) as f64).sqrt()).product();

    let mut total = 0.0;
    for p in 0..=lowerings.min(2) {
        let nl = lowerings as f64;
        let coef = [1.0, -2.0 * nl, 4.0 * nl * (nl - 1.0)][p as usize];
        // J+^(n-p) |J, J'-n> = raise |J, J'-p>
        let raise: f64 =
            (j_ket - lowerings..j_ket - p).map(|mm| ((jb - mm as f64) * (jb + mm as f64 + 1.0)).sqrt()).product();
        let bra = dicke_sparse(n, (half - j_bra) as usize, j_ket - p, amps);
        // X_p |ket>: sz sz, then the two single-lowering terms, then the double lowering.
        let mut elem = 0.0;
        for (&x, &a) in &ket {
            match p {
                0 => elem += bra.get(&x).copied().unwrap_or(0.0) * sz_bit(x, bj) * sz_bit(x, bk) * a,
                1 => {
                    if x & bk == 0 {
                        elem += bra.get(&(x | bk)).copied().unwrap_or(0.0) * sz_bit(x, bj) * a;
                    }
                    if x & bj == 0 {
                        elem += bra.get(&(x | bj)).copied().unwrap_or(0.0) * sz_bit(x, bk) * a;
                    }
                }
                _ => {
                    if x & bj == 0 && x & bk == 0 {
                        elem += bra.get(&(x | bj | bk)).copied().unwrap_or(0.0) * a;
                    }
                }
            }
        }
        total += coef * raise / norm_ket * elem;
    }
    Ok(total)
}

/// `-(1/(4K)) sum_{j!=k} w_jk Tr(sz_j sz_k T^(0)_0[J;J])` by explicit sandwiches.
pub fn trace_f0(basis: &DickeBasis, params: &ModelParams, delta: usize) -> f64 {
    let layout = basis.layout();
    let j = layout.spin(delta);
    let dim = (2 * j + 1) as f64;
    let acc = pair_sum(basis, params, |jj, kk| {
        (-j..=j)
            .map(|m| {
                let f = layout.flat(delta, m).unwrap();
                basis.sandwich_zz(f, f, jj, kk)
            })
            .sum::<f64>()
    });
    acc / dim.sqrt()
}

/// `-(1/(4K)) sum_{j!=k} w_jk Tr(sz_j sz_k T^(2)_0[J;J'])`, `J = N/2 - delta >= J' = N/2 - delta2`.
pub fn trace_f2(basis: &DickeBasis, params: &ModelParams, delta: usize, delta2: usize) -> Result<f64> {
    let layout = basis.layout();
    let (j, j2) = (layout.spin(delta), layout.spin(delta2));
    if j2 > j {
        return Err(invalid("trace_f2 expects the higher spin first"));
    }
    let mut coeffs = Vec::new();
    for m in -j2..=j2 {
        let c = cg_coefficient(
            HalfInt::int(j2),
            HalfInt::int(m),
            HalfInt::TWO,
            HalfInt::ZERO,
            HalfInt::int(j),
            HalfInt::int(m),
        )?;
        coeffs.push((m, c));
    }
    let acc = pair_sum(basis, params, |jj, kk| {
        coeffs
            .iter()
            .map(|&(m, c)| {
                c * basis.sandwich_zz(layout.flat(delta2, m).unwrap(), layout.flat(delta, m).unwrap(), jj, kk)
            })
            .sum::<f64>()
    });
    Ok(acc * (5.0 / (2 * j + 1) as f64).sqrt())
}

/// `Tr(Jx T^(1)_1[J;J])` on the symmetric irrep of `2J` sites with Condon-Shortley
/// coefficients, using an explicit `J x J` Jx matrix.
pub fn trace_f1(two_j: i64) -> Result<f64> {
    let j = HalfInt::from_twice(two_j);
    let jf = j.value();
    let dim = (two_j + 1) as f64;
    let mut acc = 0.0;
    let mut m = -j;
    while m < j {
        let mp = m + HalfInt::ONE;
        let c = cg_coefficient(j, m, HalfInt::ONE, HalfInt::ONE, j, mp)?;
        let jx = 0.5 * (jf * (jf + 1.0) - m.value() * mp.value()).sqrt();
        acc += c * jx;
        m = mp;
    }
    Ok(acc * (3.0 / dim).sqrt())
}

fn pair_sum(basis: &DickeBasis, params: &ModelParams, f: impl Fn(usize, usize) -> f64) -> f64 {
    let n = basis.n();
    let kernel = CouplingKernel::from_params(params);
    let mut acc = 0.0;
    for jj in 0..n {
        for kk in 0..n {
            if jj != kk {
                acc += kernel.weight(jj, kk) * f(jj, kk);
            }
        }
    }
    -acc / (4.0 * params.kac())
}
