//! Reproduction suite: thirteen end-to-end checks with fixed tolerances.
//!
//! Every check runs at its stated tolerance and reports pass or fail. Checks listed in
//! [`KNOWN_GAPS`] are still evaluated and reported; callers decide whether to gate on them.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    crossover, detect_scars, exact_scar_candidates, grid_search, local_minima, minima_curve, qpt_sweep,
    range_inclusive, scar_fidelity, two_body_entropy, two_body_inverse, two_body_map, variance_sweep, AngleGrid,
    CollapseParams, Curve, GridSpec,
};
use crate::dynamics::{diagonalize, evolve, perturbed_scars_from, time_average, uniform_times, Loschmidt};
use crate::error::Result;
use crate::hbuild::{apply_parity, assemble, assemble_reference, weight_f1, weight_table};
use crate::irreps::{cg_coefficient, distill, BasisLayout, DistilledAmplitudes, DistilledState, HalfInt};
use crate::model::{classical_energy, CouplingKernel, ModelParams};
use crate::oracle::{
    build_exact, cg_racah, dicke_vectors, lmg_spectrum, matelem_sigzsigz, max_abs_diff, min_pair_entropy,
    symmetry_sectors, trace_f0, trace_f1, trace_f2, ExactState,
};
use crate::Complex64;

/// Checks that do not reach their threshold with this implementation, with the reason.
pub const KNOWN_GAPS: &[(u8, &str)] = &[
    (9, "grid-minimum echo at s=2/3 sits at the bright-irrep resonance band, about 0.4 rad from the separatrix"),
    (11, "best collapse lands at s_c = 0.39, just below the [0.40, 0.45] bracket"),
];

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "oracle equality"),
    (2, "weight verification"),
    (3, "distillation constraints"),
    (4, "collective limit"),
    (5, "scar reproduction"),
    (6, "variance regime boundary"),
    (7, "dynamical transition"),
    (8, "ground-state transition"),
    (9, "loschmidt regime contrast"),
    (10, "two-body entropy bound"),
    (11, "finite-size scaling"),
    (12, "short-time echo law"),
    (13, "property suite"),
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn known_gap(&self) -> Option<&'static str> {
        KNOWN_GAPS.iter().find(|g| g.0 == self.id).map(|g| g.1)
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let gap = match (self.passed, self.known_gap()) {
            (false, Some(why)) => format!(" [known gap: {why}]"),
            _ => String::new(),
        };
        format!("{tag} {:>2} {}: {} ({:.1} s){gap}", self.id, self.name, self.detail, self.seconds)
    }
}

/// Extra determinism probe supplied by a caller (e.g. the CLI running itself twice).
pub type DeterminismProbe = Box<dyn Fn() -> Result<(bool, String)>>;

#[derive(Default)]
pub struct SuiteOptions {
    pub only: Option<Vec<u8>>,
    pub determinism: Option<DeterminismProbe>,
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter(|(id, _)| opts.only.as_ref().map_or(true, |o| o.contains(id)))
        .map(|&(id, name)| {
            let start = Instant::now();
            let res = match id {
                1 => oracle_equality(),
                2 => weight_verification(),
                3 => distillation_constraints(),
                4 => collective_limit(),
                5 => scar_reproduction(),
                6 => variance_boundary(),
                7 => dynamical_transition(),
                8 => ground_transition(),
                9 => loschmidt_contrast(),
                10 => two_body_bound(),
                11 => scaling_collapse(),
                12 => echo_law(),
                _ => property_suite(opts.determinism.as_ref()),
            };
            let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
            Outcome { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}

type Check = Result<(bool, String)>;

fn amps_for(params: &ModelParams) -> Result<DistilledAmplitudes> {
    distill(&CouplingKernel::from_params(params))
}

fn oracle_equality() -> Check {
    let mut worst: f64 = 0.0;
    for n in [6, 8, 10, 12] {
        for alpha in [0.5, 1.0, 2.0] {
            let a = distill(&CouplingKernel::new(n, alpha)?)?;
            let basis = dicke_vectors(n, &a)?;
            for s in [0.2, 0.5, 0.8] {
                let p = ModelParams::new(n, s, alpha)?;
                let h = assemble(&p, &a)?;
                worst = worst.max(max_abs_diff(&h.to_dense(), &basis.project_hamiltonian(&p)?));
            }
        }
    }
    Ok((worst <= 1e-9, format!("max |H_D - PHP| = {worst:.2e} over 36 points")))
}

fn weight_verification() -> Check {
    let mut worst: f64 = 0.0;
    for n in [6, 8] {
        for alpha in [0.5, 1.0, 2.0] {
            let p = ModelParams::new(n, 0.5, alpha)?;
            let a = amps_for(&p)?;
            let w = weight_table(&p, &a)?;
            let basis = dicke_vectors(n, &a)?;
            for d in 0..3 {
                worst = worst.max((trace_f0(&basis, &p, d) - w.f0[d]).abs());
                worst = worst.max((trace_f1(n as i64 - 2 * d as i64)? + w.f1[d]).abs());
                for d2 in d..3 {
                    worst = worst.max((trace_f2(&basis, &p, d, d2)? - w.f2[d][d2]).abs());
                }
            }
        }
    }
    for tj in 1..16 {
        worst = worst.max((trace_f1(tj)? + weight_f1(tj as f64 / 2.0)).abs());
    }
    let n = 6;
    let a = distill(&CouplingKernel::new(n, 1.0)?)?;
    let basis = dicke_vectors(n, &a)?;
    let layout = basis.layout();
    let mut elem: f64 = 0.0;
    let half = n as i64 / 2;
    for jb in half - 2..=half {
        for jk in half - 2..=jb {
            for m in -jk..=jk {
                for sj in 0..n {
                    for sk in (0..n).filter(|&k| k != sj) {
                        let v = matelem_sigzsigz(n, &a, jb, jk, m, sj, sk)?;
                        let fb = layout.flat((half - jb) as usize, m).expect("in range");
                        let fk = layout.flat((half - jk) as usize, m).expect("in range");
                        elem = elem.max((v - basis.sandwich_zz(fb, fk, sj, sk)).abs());
                    }
                }
            }
        }
    }
    Ok((
        worst <= 1e-9 && elem <= 1e-9,
        format!("weights vs traces {worst:.2e}, matrix elements vs sandwiches {elem:.2e}"),
    ))
}

fn distillation_constraints() -> Check {
    let mut worst: f64 = 0.0;
    for n in [4, 6, 8, 12, 16, 32, 64, 128, 256, 512, 1024] {
        for alpha in [0.25, 0.5, 1.0, 1.5, 2.0] {
            let a = distill(&CouplingKernel::new(n, alpha)?)?;
            let c1 = a.c1();
            worst = worst.max(c1.iter().sum::<f64>().abs());
            worst = worst.max((c1.iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
            let mut sq = 0.0;
            for j in 0..n {
                worst = worst.max(a.c2_at(j, j).abs());
                let mut row = 0.0;
                for k in 0..n {
                    worst = worst.max((a.c2_at(j, k) - a.c2_at(k, j)).abs());
                    row += a.c2_at(j, k);
                    sq += a.c2_at(j, k).powi(2);
                }
                worst = worst.max(row.abs());
            }
            worst = worst.max((0.5 * sq - 1.0).abs());
        }
    }
    let (dark1, dark2) = dark_couplings(64, 1.0, 100)?;
    Ok((
        worst <= 1e-12 && dark1 <= 1e-10 && dark2 <= 1e-10,
        format!("constraint residual {worst:.2e}; dark couplings {dark1:.2e} (delta=1), {dark2:.2e} (delta=2)"),
    ))
}

/// Largest coupling between symmetric states and random dark highest-weight states.
///
/// Evaluated in the one- and two-flip sectors by summing `sigma_z sigma_z` pairs directly.
fn dark_couplings(n: usize, alpha: f64, samples: usize) -> Result<(f64, f64)> {
    let p = ModelParams::new(n, 0.5, alpha)?;
    let kernel = CouplingKernel::from_params(&p);
    let a = distill(&kernel)?;
    let w = |j: usize, k: usize| kernel.weight(j, k);
    let scale = -p.s() / (4.0 * p.kac());
    // Diagonal zz energy of a configuration with the given flipped sites.
    let zz = |down: &[usize]| -> f64 {
        let mut e = 0.0;
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    let sj = if down.contains(&j) { -1.0 } else { 1.0 };
                    let sk = if down.contains(&k) { -1.0 } else { 1.0 };
                    e += w(j, k) * sj * sk;
                }
            }
        }
        scale * e
    };
    let e1: Vec<f64> = (0..n).map(|b| zz(&[b])).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let e2: Vec<f64> = pairs.iter().map(|&(j, k)| zz(&[j, k])).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0x1d5eed);
    let (mut worst1, mut worst2): (f64, f64) = (0.0, 0.0);
    for _ in 0..samples {
        let mut u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = u.iter().sum::<f64>() / n as f64;
        u.iter_mut().for_each(|x| *x -= mean);
        let proj: f64 = u.iter().zip(a.c1()).map(|(x, c)| x * c).sum();
        u.iter_mut().zip(a.c1()).for_each(|(x, c)| *x -= proj * c);
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let c: f64 = u.iter().zip(&e1).map(|(x, e)| x * e).sum::<f64>() / (norm * (n as f64).sqrt());
        worst1 = worst1.max(c.abs());

        let mut v = vec![0.0; n * n];
        for &(j, k) in &pairs {
            let x = rng.gen_range(-1.0..1.0);
            v[j * n + k] = x;
            v[k * n + j] = x;
        }
        let rows: Vec<f64> = (0..n).map(|j| (0..n).map(|k| v[j * n + k]).sum()).collect();
        let total = rows.iter().sum::<f64>() / (2.0 * n as f64 - 2.0);
        for &(j, k) in &pairs {
            let x = v[j * n + k] - (rows[j] - total) / (n as f64 - 2.0) - (rows[k] - total) / (n as f64 - 2.0);
            v[j * n + k] = x;
            v[k * n + j] = x;
        }
        let proj: f64 = pairs.iter().map(|&(j, k)| v[j * n + k] * a.c2_at(j, k)).sum();
        let mut norm2 = 0.0;
        let mut c = 0.0;
        for (idx, &(j, k)) in pairs.iter().enumerate() {
            let x = v[j * n + k] - proj * a.c2_at(j, k);
            norm2 += x * x;
            c += x * e2[idx];
        }
        worst2 = worst2.max((c / (norm2.sqrt() * (pairs.len() as f64).sqrt())).abs());
    }
    Ok((worst1, worst2))
}

fn collective_limit() -> Check {
    let mut worst: f64 = 0.0;
    for n in [8, 64, 256] {
        for s in [0.2, 0.5, 0.8] {
            let p = ModelParams::new(n, s, 0.0)?;
            let h = assemble(&p, &amps_for(&p)?)?;
            let d = h.dim();
            let dense = h.to_dense();
            let ns = n + 1;
            let block: Vec<f64> = (0..ns * ns).map(|ij| dense[(ij / ns) * d + ij % ns]).collect();
            let got = crate::linalg::sym_eigenvalues(&block, ns)?;
            let want: Vec<f64> = lmg_spectrum(n, s)?.into_iter().map(|e| e + s / 4.0).collect();
            worst = worst.max(max_abs_diff(&got, &want));
        }
    }
    Ok((worst <= 1e-10, format!("max |spec - LMG spec| = {worst:.2e}")))
}

fn scar_reproduction() -> Check {
    let n = 12;
    let p = ModelParams::new(n, 0.4, 1.0)?;
    let a = amps_for(&p)?;
    let spec = diagonalize(&assemble(&p, &a)?)?;
    let distilled = detect_scars(&spec)?.len();
    let sectors = symmetry_sectors(&build_exact(&p)?)?;
    let exact = exact_scar_candidates(n, &sectors);
    let report = scar_fidelity(&exact, &dicke_vectors(n, &a)?, &spec)?;
    Ok((
        distilled == n + 1 && exact.len() == n + 1 && report.mean >= 0.99,
        format!("{} distilled / {} exact scars, mean fidelity {:.5}", distilled, exact.len(), report.mean),
    ))
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let k = v.len();
    Some(if k % 2 == 1 { v[k / 2] } else { 0.5 * (v[k / 2 - 1] + v[k / 2]) })
}

/// Local minima of `y` inside `[lo, hi]`; a window without interior minima is monotone and
/// contributes all of its points.
fn window_minima(s: &[f64], y: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let (ms, my) = local_minima(s, y);
    let inside: Vec<f64> = ms.iter().zip(&my).filter(|(x, _)| (lo..=hi).contains(*x)).map(|(_, v)| *v).collect();
    if !inside.is_empty() {
        return inside;
    }
    s.iter().zip(y).filter(|(x, _)| (lo..=hi).contains(*x)).map(|(_, v)| *v).collect()
}

fn variance_boundary() -> Check {
    let s = range_inclusive(0.28, 0.67, 0.002)?;
    let sweep = variance_sweep(100, 0.5, &s)?;
    let de = sweep.column("de_max").expect("column");
    let low = median(window_minima(&sweep.axis, de, 0.30, 0.40));
    let high = median(window_minima(&sweep.axis, de, 0.55, 0.65));
    match (low, high) {
        (Some(l), Some(h)) => Ok((h >= 10.0 * l, format!("median minima {l:.4e} vs {h:.4e}, ratio {:.2}", h / l))),
        _ => Ok((false, "empty window".into())),
    }
}

/// `(N, dqpt crossover, gqpt steepness, sweep)` for each size, shared by the two transition checks.
fn transition_sweeps(sizes: &[usize]) -> Result<Vec<(usize, f64, f64, crate::analysis::SweepResult)>> {
    let s = range_inclusive(0.40, 0.90, 0.01)?;
    sizes
        .iter()
        .map(|&n| {
            let r = qpt_sweep(n, 1.0, &s, crate::analysis::DEFAULT_AVERAGING_TIME)?;
            let c = crossover(&r, "z_bar").map_or(f64::NAN, |c| c.0);
            let g = crossover(&r, "z_g").map_or(f64::NAN, |c| c.1);
            Ok((n, c, g, r))
        })
        .collect()
}

thread_local! {
    static TRANSITIONS: std::cell::RefCell<Option<Vec<(usize, f64, f64, crate::analysis::SweepResult)>>> =
        const { std::cell::RefCell::new(None) };
}

fn with_transitions<T>(f: impl FnOnce(&[(usize, f64, f64, crate::analysis::SweepResult)]) -> T) -> Result<T> {
    TRANSITIONS.with(|cell| {
        if cell.borrow().is_none() {
            *cell.borrow_mut() = Some(transition_sweeps(&[16, 64, 256, 1024])?);
        }
        Ok(f(cell.borrow().as_ref().expect("filled")))
    })
}

fn dynamical_transition() -> Check {
    with_transitions(|runs| {
        let big = &runs[runs.len() - 1].3;
        let z55 = big.value_at("z_bar", 0.55).unwrap_or(f64::NAN);
        let z85 = big.value_at("z_bar", 0.85).unwrap_or(f64::NAN);
        let target = 2.0 / 3.0;
        let dist: Vec<f64> = runs.iter().map(|r| (r.1 - target).abs()).collect();
        let monotone = dist.windows(2).all(|w| w[1] <= w[0] + 0.01);
        let locs: Vec<String> = runs.iter().map(|r| format!("N={}:{:.3}", r.0, r.1)).collect();
        (
            z55 <= 0.1 && z85 >= 0.5 && monotone,
            format!("Zbar(0.55)={z55:.3}, Zbar(0.85)={z85:.3}; crossovers {}", locs.join(" ")),
        )
    })
}

fn ground_transition() -> Check {
    with_transitions(|runs| {
        let big = &runs[runs.len() - 1].3;
        let z45 = big.value_at("z_g", 0.45).unwrap_or(f64::NAN);
        let z75 = big.value_at("z_g", 0.75).unwrap_or(f64::NAN);
        let steep: Vec<(usize, f64)> = runs.iter().filter(|r| r.0 >= 64).map(|r| (r.0, r.2)).collect();
        let rising = steep.windows(2).all(|w| w[1].1 > w[0].1);
        let txt: Vec<String> = steep.iter().map(|(n, g)| format!("N={n}:{g:.2}")).collect();
        (z45 < 0.1 && z75 > 0.6 && rising, format!("Zg(0.45)={z45:.3}, Zg(0.75)={z75:.3}; steepness {}", txt.join(" ")))
    })
}

/// Great-circle distance from `(theta, phi)` to the level set `E(s; .) = E(s; 0, 0)`.
pub fn separatrix_distance(s: f64, theta: f64, phi: f64) -> f64 {
    let level = classical_energy(s, 0.0, 0.0);
    let (nt, np) = (720usize, 1440usize);
    let unit = |t: f64, p: f64| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
    let x = unit(theta, phi);
    let dist = |t: f64, p: f64| {
        let y = unit(t, p);
        (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]).clamp(-1.0, 1.0).acos()
    };
    let mut best = f64::INFINITY;
    let grid = |i: usize, j: usize| (PI * i as f64 / nt as f64, 2.0 * PI * j as f64 / np as f64);
    for i in 0..=nt {
        for j in 0..np {
            let (t0, p0) = grid(i, j);
            let f0 = classical_energy(s, t0, p0) - level;
            if f0 == 0.0 {
                best = best.min(dist(t0, p0));
                continue;
            }
            for (t1, p1) in [grid((i + 1).min(nt), j), grid(i, (j + 1) % np)] {
                let f1 = classical_energy(s, t1, p1) - level;
                if f0 * f1 < 0.0 {
                    let w = f0 / (f0 - f1);
                    best = best.min(dist(t0 + w * (t1 - t0), p0 + w * (p1 - p0)));
                }
            }
        }
    }
    best
}

fn echo_grid_minimum(s: f64) -> Result<(f64, f64, f64)> {
    let p = ModelParams::new(100, s, 0.4)?;
    let a = amps_for(&p)?;
    let h = assemble(&p, &a)?;
    let spec = diagonalize(&h)?;
    let scars = perturbed_scars_from(&h, &assemble_reference(&p, &a)?)?;
    let engine = Loschmidt::new(&spec, &scars)?;
    let times = uniform_times(20.0, 400);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (theta, phi) in AngleGrid::default().points() {
        let m = time_average(&times, &engine.echo_scs(theta, phi, &times)?)?;
        if m < best.0 {
            best = (m, theta, phi);
        }
    }
    Ok(best)
}

fn loschmidt_contrast() -> Check {
    let (low, _, _) = echo_grid_minimum(0.4)?;
    let s = 2.0 / 3.0;
    let (crit, theta, phi) = echo_grid_minimum(s)?;
    let d = separatrix_distance(s, theta, phi);
    Ok((
        low > 0.5 && crit < 0.2 && d <= 0.3,
        format!(
            "min Mbar {low:.4} at s=0.4; {crit:.4} at s=2/3 at (theta, phi)=({theta:.3}, {phi:.3}), {d:.3} rad from separatrix"
        ),
    ))
}

fn two_body_bound() -> Check {
    let n = 12;
    let p = ModelParams::new(n, 0.4, 1.0)?;
    let a = amps_for(&p)?;
    let spec = diagonalize(&assemble(&p, &a)?)?;
    let exact = exact_scar_candidates(n, &symmetry_sectors(&build_exact(&p)?)?);
    let report = scar_fidelity(&exact, &dicke_vectors(n, &a)?, &spec)?;
    let mut margin = f64::INFINITY;
    for &(i, k, _) in &report.pairs {
        let stb = two_body_entropy(&spec.state(k))?;
        let smin = min_pair_entropy(&ExactState::from_real(n, &exact[i].vector)?)?;
        margin = margin.min(smin + 1e-3 - stb);
    }
    Ok((
        margin >= 0.0 && !report.pairs.is_empty(),
        format!("{} pairs, min (S_min + 1e-3 - S_TB) = {margin:.4}", report.pairs.len()),
    ))
}

fn scaling_collapse() -> Check {
    let s = range_inclusive(0.30, 0.60, 0.002)?;
    let curves: Vec<Curve> = [32usize, 64, 128]
        .iter()
        .map(|&n| {
            let r = variance_sweep(n, 0.5, &s)?;
            Ok(minima_curve(n, &r.axis, r.column("de_max").expect("column")))
        })
        .collect::<Result<_>>()?;
    let (best, q) = grid_search(&curves, GridSpec::default())?;
    let reference = crate::analysis::collapse_quality(&curves, CollapseParams { s_c: 0.42, zeta: 0.2, nu: 2.0 })?;
    let off = crate::analysis::collapse_quality(&curves, CollapseParams { s_c: 0.50, zeta: 0.2, nu: 2.0 })?;
    let ok = (0.40..=0.45).contains(&best.s_c)
        && (1.5..=2.5).contains(&best.nu)
        && (0.1..=0.3).contains(&best.zeta)
        && reference < off;
    Ok((
        ok,
        format!(
            "best s_c={:.3} zeta={:.2} nu={:.1} (q={q:.3e}); q(0.42)={reference:.3e} < q(0.50)={off:.3e}",
            best.s_c, best.zeta, best.nu
        ),
    ))
}

/// Least-squares coefficient of `u^2` in an even polynomial of degree `2 (k - 1)`.
fn even_fit_quadratic(u: &[f64], y: &[f64], k: usize) -> f64 {
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![0.0; k];
    for (&x, &v) in u.iter().zip(y) {
        let f: Vec<f64> = (0..k).map(|r| x.powi(2 * r as i32)).collect();
        for r in 0..k {
            b[r] += f[r] * v;
            for c in 0..k {
                a[r][c] += f[r] * f[c];
            }
        }
    }
    for c in 0..k {
        for r in c + 1..k {
            let f = a[r][c] / a[c][c];
            for cc in c..k {
                a[r][cc] -= f * a[c][cc];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let acc = b[r] - (r + 1..k).map(|c| a[r][c] * x[c]).sum::<f64>();
        x[r] = acc / a[r][r];
    }
    x[1]
}

fn echo_law() -> Check {
    let n = 64;
    let p = ModelParams::new(n, 0.4, 1.0)?;
    let a = amps_for(&p)?;
    let h = assemble(&p, &a)?;
    let spec = diagonalize(&h)?;
    let scars = perturbed_scars_from(&h, &assemble_reference(&p, &a)?)?;
    let engine = Loschmidt::new(&spec, &scars)?;
    let mut worst: f64 = 0.0;
    for idx in [0, n / 4, n / 2, 3 * n / 4, n] {
        let de = engine.scar_variance(idx);
        let t_max = 0.01 / de;
        let times = uniform_times(t_max, 41);
        let m = engine.echo(&engine.scar_state(idx), &times);
        let u: Vec<f64> = times.iter().map(|t| t / t_max).collect();
        let decay: Vec<f64> = m.iter().map(|x| 1.0 - x).collect();
        let c2 = even_fit_quadratic(&u, &decay, 5) / (t_max * t_max);
        worst = worst.max((c2 / (de * de) - 1.0).abs());
    }
    Ok((worst <= 0.05, format!("max |fit / dE^2 - 1| = {worst:.2e} over 5 scars")))
}

fn random_state(layout: BasisLayout, rng: &mut ChaCha8Rng) -> Result<DistilledState> {
    let amps: Vec<Complex64> =
        (0..layout.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    DistilledState::from_amplitudes(layout, amps)?.normalized()
}

fn property_suite(probe: Option<&DeterminismProbe>) -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(13);

    let mut herm: f64 = 0.0;
    let mut par: f64 = 0.0;
    for (n, s, alpha) in [(8, 0.3, 0.5), (32, 0.6, 1.5), (128, 0.9, 3.0)] {
        let p = ModelParams::new(n, s, alpha)?;
        let h = assemble(&p, &amps_for(&p)?)?;
        let d = h.dim();
        let dense = h.to_dense();
        for i in 0..d {
            for j in 0..i {
                herm = herm.max((dense[i * d + j] - dense[j * d + i]).abs());
            }
        }
        for _ in 0..5 {
            let psi = random_state(h.layout(), &mut rng)?;
            let lhs = apply_parity(&h.apply_state(&psi));
            let rhs = h.apply_state(&apply_parity(&psi));
            let diff = lhs.amplitudes().iter().zip(rhs.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            par = par.max(diff);
        }
    }
    ok &= herm <= 1e-12 && par <= 1e-10;
    notes.push(format!("hermiticity {herm:.1e}, parity {par:.1e}"));

    let p = ModelParams::new(256, 0.5, 1.0)?;
    let h = assemble(&p, &amps_for(&p)?)?;
    let spec = diagonalize(&h)?;
    let psi = random_state(h.layout(), &mut rng)?;
    let e0 = h.expectation(&psi);
    let (mut dn, mut de): (f64, f64) = (0.0, 0.0);
    for t in [0.5, 37.0, 1e5] {
        let out = evolve(&spec, &psi, t);
        dn = dn.max((out.norm() - 1.0).abs());
        de = de.max((h.expectation(&out) - e0).abs() / spec.radius());
    }
    ok &= dn <= 1e-9 && de <= 1e-9;
    notes.push(format!("unitarity {dn:.1e}, energy drift {de:.1e}"));

    let (mut unit, mut oracle, mut finite): (f64, f64, bool) = (0.0, 0.0, true);
    for tj1 in 0..=20i64 {
        for tj2 in 1..=4i64 {
            let (u, o) = cg_checks(tj1, tj2)?;
            unit = unit.max(u);
            oracle = oracle.max(o);
        }
    }
    for tj2 in [2i64, 4] {
        let (u, _) = cg_checks(2048, tj2)?;
        unit = unit.max(u);
        for tm1 in (-2048..=2048).step_by(2) {
            for tm2 in (-tj2..=tj2).step_by(2) {
                for tj in (2048 - tj2..=2048 + tj2).step_by(2) {
                    if (tm1 + tm2).abs() <= tj {
                        let c = cg_coefficient(
                            HalfInt::from_twice(2048),
                            HalfInt::from_twice(tm1),
                            HalfInt::from_twice(tj2),
                            HalfInt::from_twice(tm2),
                            HalfInt::from_twice(tj),
                            HalfInt::from_twice(tm1 + tm2),
                        )?;
                        finite &= c.is_finite() && c.abs() <= 1.0 + 1e-12;
                    }
                }
            }
        }
    }
    ok &= unit <= 1e-12 && oracle <= 1e-12 && finite;
    notes.push(format!("CG unitarity {unit:.1e}, vs factorial oracle {oracle:.1e}, j1=1024 finite {finite}"));

    let layout = BasisLayout::new(10)?;
    let mut trip: f64 = 0.0;
    for _ in 0..100 {
        let psi = random_state(layout, &mut rng)?;
        let back = two_body_inverse(&two_body_map(&psi)?)?;
        trip =
            trip.max(psi.amplitudes().iter().zip(back.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    ok &= trip <= 1e-10;
    notes.push(format!("two-body round trip {trip:.1e}"));

    let (same, what) = match probe {
        Some(f) => f()?,
        None => library_determinism()?,
    };
    ok &= same;
    notes.push(what);
    Ok((ok, notes.join("; ")))
}

/// Orthogonality defect of the CG blocks and deviation from the factorial oracle.
fn cg_checks(tj1: i64, tj2: i64) -> Result<(f64, f64)> {
    let h = HalfInt::from_twice;
    let totals: Vec<i64> = ((tj1 - tj2).abs()..=tj1 + tj2).step_by(2).collect();
    let (mut unit, mut oracle): (f64, f64) = (0.0, 0.0);
    let mut tm = -(tj1 + tj2);
    while tm <= tj1 + tj2 {
        let rows: Vec<(i64, i64)> = (-tj1..=tj1)
            .step_by(2)
            .filter_map(|m1| {
                let m2 = tm - m1;
                (m2.abs() <= tj2).then_some((m1, m2))
            })
            .collect();
        let cols: Vec<i64> = totals.iter().copied().filter(|&j| tm.abs() <= j).collect();
        let mut mat = vec![vec![0.0; cols.len()]; rows.len()];
        for (r, &(m1, m2)) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                let v = cg_coefficient(h(tj1), h(m1), h(tj2), h(m2), h(j), h(tm))?;
                mat[r][c] = v;
                if tj1 <= 20 {
                    oracle = oracle.max((v - cg_racah(tj1, m1, tj2, m2, j, tm)).abs());
                }
            }
        }
        for a in 0..cols.len() {
            for b in 0..cols.len() {
                let dot: f64 = rows.iter().enumerate().map(|(r, _)| mat[r][a] * mat[r][b]).sum();
                unit = unit.max((dot - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        tm += 2;
    }
    Ok((unit, oracle))
}

fn library_determinism() -> Result<(bool, String)> {
    let s = range_inclusive(0.3, 0.7, 0.1)?;
    let a = qpt_sweep(64, 1.0, &s, 1e5)?;
    let b = qpt_sweep(64, 1.0, &s, 1e5)?;
    let same = a
        .columns
        .iter()
        .zip(&b.columns)
        .all(|(x, y)| x.0 == y.0 && x.1.iter().zip(&y.1).all(|(p, q)| p.to_bits() == q.to_bits()));
    Ok((same, format!("repeat sweep bit-identical {same}")))
}
