use ird_core::analysis::*;
use ird_core::dynamics::diagonalize;
use ird_core::hbuild::{apply_parity, assemble};
use ird_core::irreps::{distill, BasisLayout, DistilledAmplitudes, DistilledState};
use ird_core::oracle::{build_exact, dicke_vectors, irrep_populations, symmetry_sectors, ExactState};
use ird_core::{Complex64, CouplingKernel, IrdError, ModelParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(n: usize, s: f64, alpha: f64) -> (ModelParams, DistilledAmplitudes) {
    let p = ModelParams::new(n, s, alpha).unwrap();
    let a = distill(&CouplingKernel::from_params(&p)).unwrap();
    (p, a)
}

fn scar_count(n: usize, s: f64, alpha: f64) -> usize {
    let (p, a) = setup(n, s, alpha);
    detect_scars(&diagonalize(&assemble(&p, &a).unwrap()).unwrap()).unwrap().len()
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> DistilledState {
    let layout = BasisLayout::new(n).unwrap();
    let amps = (0..layout.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    DistilledState::from_amplitudes(layout, amps).unwrap().normalized().unwrap()
}

#[test]
fn degenerate_kernel_has_full_scar_tower() {
    let (p, a) = setup(12, 0.6, 0.0);
    let spec = diagonalize(&assemble(&p, &a).unwrap()).unwrap();
    let scars = detect_scars(&spec).unwrap();
    assert_eq!(scars.len(), 13);
    assert!(scars.iter().all(|r| (r.sym_population - 1.0).abs() < 1e-12 && (r.spin_number - 6.0).abs() < 1e-12));
    let exact = exact_scar_candidates(12, &symmetry_sectors(&build_exact(&p).unwrap()).unwrap());
    // Bright irreps are undefined on a flat kernel; only the symmetric Dicke states matter here.
    let (_, bright) = setup(12, 0.6, 1.0);
    let report = scar_fidelity(&exact, &dicke_vectors(12, &bright).unwrap(), &spec).unwrap();
    assert!((report.mean - 1.0).abs() < 1e-9);
    assert!(report.unpaired_exact.is_empty() && report.unpaired_distilled.is_empty());
}

#[test]
fn scar_records_in_scarred_regime() {
    let (p, a) = setup(12, 0.4, 1.0);
    let spec = diagonalize(&assemble(&p, &a).unwrap()).unwrap();
    let scars = detect_scars(&spec).unwrap();
    assert_eq!(scars.len(), 13);
    for r in &scars {
        assert!(r.spin_number >= 5.5 && r.spin_number <= 6.0 + 1e-12);
        assert!(r.scs_overlap_max > 0.0 && r.scs_overlap_max <= 1.0 + 1e-12);
    }
    for k in 0..spec.len() {
        let j = spec.spin_number(k);
        assert!((4.0 - 1e-12..=6.0 + 1e-12).contains(&j));
    }
}

#[test]
fn scar_count_falls_with_range() {
    let counts: Vec<usize> = [0.5, 1.0, 2.0, 3.0].iter().map(|&a| scar_count(12, 0.4, a)).collect();
    assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
    assert!(scar_count(12, 0.9, 1.0) < 13);
}

#[test]
fn scar_pairing_breaks_down_outside_scarred_region() {
    let report = |s: f64, alpha: f64| {
        let (p, a) = setup(12, s, alpha);
        let spec = diagonalize(&assemble(&p, &a).unwrap()).unwrap();
        let exact = exact_scar_candidates(12, &symmetry_sectors(&build_exact(&p).unwrap()).unwrap());
        (exact.len(), scar_fidelity(&exact, &dicke_vectors(12, &a).unwrap(), &spec).unwrap())
    };
    // Short range, strong coupling: most exact candidates are gone, the few survivors still pair well.
    let (count, r) = report(0.75, 2.5);
    assert_eq!(count, 2);
    assert_eq!(r.unpaired_distilled.len(), 7);
    assert!((r.mean - 0.9953).abs() < 1e-3);
    // Closer to the boundary the tower survives but the pairs degrade.
    let (count, r) = report(0.6, 2.5);
    assert_eq!(count, 11);
    assert!(r.mean < 0.9, "{}", r.mean);
}

#[test]
fn fidelity_needs_candidates() {
    let (p, a) = setup(8, 0.4, 1.0);
    let spec = diagonalize(&assemble(&p, &a).unwrap()).unwrap();
    let err = scar_fidelity(&[], &dicke_vectors(8, &a).unwrap(), &spec).unwrap_err();
    assert!(matches!(err, IrdError::UndefinedMetric(_)));
}

#[test]
fn symmetric_weight_matches_projector() {
    let (p, _) = setup(8, 0.5, 1.0);
    let sectors = symmetry_sectors(&build_exact(&p).unwrap()).unwrap();
    for sec in sectors.iter().take(2) {
        for k in (0..sec.dim()).step_by(9) {
            let v = sec.full_eigenvector(k);
            let pops = irrep_populations(&ExactState::from_real(8, &v).unwrap()).unwrap();
            let want = pops.get(&8).copied().unwrap_or(0.0);
            assert!((symmetric_weight(8, &v) - want).abs() < 1e-10);
        }
    }
}

#[test]
fn order_parameters_at_the_endpoints() {
    let n = 64;
    let r = qpt_sweep(n, 1.0, &[0.0, 1.0], DEFAULT_AVERAGING_TIME).unwrap();
    let zg = r.column("z_g").unwrap();
    let zbar = r.column("z_bar").unwrap();
    assert!((zg[0] - 1.0 / (n as f64).sqrt()).abs() < 1e-10);
    assert!((zg[1] - 1.0).abs() < 1e-10);
    assert!(zbar[0].abs() < 1e-10 && (zbar[1] - 1.0).abs() < 1e-10);
    let g = gqpt(n, 1.0, &[0.2]).unwrap();
    assert!(g.column("z_bar").is_none() && g.column("z_broken").is_some());
    let d = dqpt(n, 1.0, &[0.2], 1e5).unwrap();
    assert_eq!(d.columns.len(), 1);
}

#[test]
fn diagonal_ensemble_matches_finite_time_average() {
    for s in [0.5, 0.8] {
        let (p, a) = setup(64, s, 1.0);
        let spec = diagonalize(&assemble(&p, &a).unwrap()).unwrap();
        let de = diagonal_ensemble_z(&spec, 1e5).unwrap();
        let tr = trapezoid_z(&spec, 1e5, 1_000_000).unwrap();
        assert!((de - tr).abs() < 0.01, "s={s}: {de} vs {tr}");
    }
}

#[test]
fn stretch_state_is_a_two_body_product() {
    let layout = BasisLayout::new(10).unwrap();
    let top = DistilledState::basis(layout, layout.flat(0, 5).unwrap());
    let tb = two_body_map(&top).unwrap();
    assert!((tb.amplitude(1, 4) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!((tb.norm() - 1.0).abs() < 1e-12);
    assert!(two_body_entropy(&top).unwrap().abs() < 1e-12);
}

#[test]
fn two_body_round_trip_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let psi = random_state(10, &mut rng);
        let tb = two_body_map(&psi).unwrap();
        assert!((tb.norm() - 1.0).abs() < 1e-10);
        let back = two_body_inverse(&tb).unwrap();
        let dev = psi.amplitudes().iter().zip(back.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(dev < 1e-10);
        let s = two_body_entropy(&psi).unwrap();
        assert!(s >= -1e-12 && s <= 3f64.ln() + 1e-12);
        assert!((s - two_body_entropy_major(&psi).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn two_body_entropy_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let psi = random_state(12, &mut rng);
        let s = two_body_entropy(&psi).unwrap();
        let mut phased = psi.clone();
        let ph = Complex64::from_polar(1.0, 0.83);
        phased.amplitudes_mut().iter_mut().for_each(|x| *x *= ph);
        assert!((two_body_entropy(&phased).unwrap() - s).abs() < 1e-10);
        assert!((two_body_entropy(&apply_parity(&psi)).unwrap() - s).abs() < 1e-10);
    }
    assert!(two_body_map(&random_state(4, &mut rng)).is_err());
}

#[test]
fn sweep_result_contract() {
    assert!(SweepResult::new("s", vec![0.1, 0.1]).is_err());
    assert!(SweepResult::new("s", vec![]).is_err());
    let mut r = SweepResult::new("s", vec![0.0, 0.5, 1.0]).unwrap();
    assert!(r.push_column("y", vec![1.0]).is_err());
    r.push_column("y", vec![0.0, 1.0, 3.0]).unwrap();
    assert_eq!(r.value_at("y", 0.5), Some(1.0));
    assert_eq!(crossover(&r, "y"), Some((0.75, 4.0)));
    r.push_column("bad", vec![0.0, f64::NAN, 1.0]).unwrap();
    assert!(r.check_finite().is_err());
    assert_eq!(range_inclusive(0.3, 0.4, 0.05).unwrap(), vec![0.3, 0.35, 0.4]);
    assert_eq!(range_inclusive(0.28, 0.67, 0.002).unwrap().len(), 196);
}

#[test]
fn strict_local_minima() {
    let s = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
    let y = [3.0, 1.0, 2.0, 2.0, 2.0, 5.0];
    assert_eq!(local_minima(&s, &y), (vec![1.0], vec![1.0]));
}

fn synthetic(truth: CollapseParams) -> Vec<Curve> {
    let f = |x: f64| (0.5 * x).exp() + 0.2 * x * x;
    [32usize, 64, 128]
        .iter()
        .map(|&n| {
            let nn = n as f64;
            let s: Vec<f64> = (0..=60).map(|i| 0.3 + 0.005 * i as f64).collect();
            let y = s
                .iter()
                .map(|&x| nn.powf(truth.zeta / truth.nu) * f(nn.powf(1.0 / truth.nu) * (x - truth.s_c)))
                .collect();
            Curve { n, s, y }
        })
        .collect()
}

#[test]
fn grid_search_recovers_synthetic_collapse() {
    let truth = CollapseParams { s_c: 0.42, zeta: 0.2, nu: 2.0 };
    let curves = synthetic(truth);
    let off = CollapseParams { s_c: 0.50, ..truth };
    assert!(collapse_quality(&curves, truth).unwrap() < 1e-3 * collapse_quality(&curves, off).unwrap());
    let grid = GridSpec::default();
    let (best, _) = grid_search(&curves, grid).unwrap();
    assert!((best.s_c - truth.s_c).abs() <= grid.s_c.2 + 1e-9, "{best:?}");
    assert!((best.zeta - truth.zeta).abs() <= grid.zeta.2 + 1e-9, "{best:?}");
    assert!((best.nu - truth.nu).abs() <= grid.nu.2 + 1e-9, "{best:?}");
    let scaled = scale_curve(&curves[0], truth);
    assert!((scaled.s[0] - 32f64.powf(0.5) * (0.3 - 0.42)).abs() < 1e-12);
}

#[test]
fn collapse_quality_needs_overlap() {
    let a = Curve { n: 8, s: vec![0.0, 0.1], y: vec![1.0, 1.0] };
    let b = Curve { n: 16, s: vec![5.0, 5.1], y: vec![1.0, 1.0] };
    let p = CollapseParams { s_c: 0.0, zeta: 0.0, nu: 1e6 };
    assert!(matches!(collapse_quality(&[a, b], p), Err(IrdError::UndefinedMetric(_))));
}
