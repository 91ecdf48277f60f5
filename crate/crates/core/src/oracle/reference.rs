//! Independent textbook constructions used to cross-check production code.

use crate::error::Result;
use crate::linalg::sym_eigenvalues;

fn fact(n: i64) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// Racah's factorial formula for `<j1 m1; j2 m2 | J M>` with all arguments as
/// twice their values. Plain `f64` factorials, so only for small spins.
pub fn cg_racah(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> f64 {
    if tm1 + tm2 != tm
        || tj < (tj1 - tj2).abs()
        || tj > tj1 + tj2
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm.abs() > tj
    {
        return 0.0;
    }
    let h = |x: i64| x / 2;
    let pre = ((tj + 1) as f64 * fact(h(tj + tj1 - tj2)) * fact(h(tj - tj1 + tj2)) * fact(h(tj1 + tj2 - tj))
        / fact(h(tj1 + tj2 + tj) + 1))
    .sqrt();
    let pre2 = (fact(h(tj + tm))
        * fact(h(tj - tm))
        * fact(h(tj1 - tm1))
        * fact(h(tj1 + tm1))
        * fact(h(tj2 - tm2))
        * fact(h(tj2 + tm2)))
    .sqrt();
    let mut sum = 0.0;
    for k in 0..=h(tj1 + tj2 - tj) {
        let args =
            [h(tj1 + tj2 - tj) - k, h(tj1 - tm1) - k, h(tj2 + tm2) - k, h(tj - tj2 + tm1) + k, h(tj - tj1 - tm2) + k];
        if args.iter().any(|&a| a < 0) {
            continue;
        }
        let den: f64 = fact(k) * args.iter().map(|&a| fact(a)).product::<f64>();
        sum += if k % 2 == 0 { 1.0 } else { -1.0 } / den;
    }
    pre * pre2 * sum
}

/// Collective matrix `(s-1) Jx - (s/N) Jz^2` on the spin-`N/2` irrep, `M` ascending, row-major.
pub fn lmg_matrix(n: usize, s: f64) -> Vec<f64> {
    let j = (n / 2) as i64;
    let d = n + 1;
    let mut h = vec![0.0; d * d];
    for (i, m) in (-j..=j).enumerate() {
        h[i * d + i] = -(s / n as f64) * (m * m) as f64;
        if m < j {
            let v = 0.5 * (s - 1.0) * (((j - m) * (j + m + 1)) as f64).sqrt();
            h[i * d + i + 1] = v;
            h[(i + 1) * d + i] = v;
        }
    }
    h
}

pub fn lmg_spectrum(n: usize, s: f64) -> Result<Vec<f64>> {
    sym_eigenvalues(&lmg_matrix(n, s), n + 1)
}
