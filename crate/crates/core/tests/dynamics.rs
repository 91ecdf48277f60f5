use ird_core::analysis::{exact_scar_candidates, symmetric_weight};
use ird_core::dynamics::*;
use ird_core::hbuild::{apply_parity, assemble, assemble_reference, parity_expectation};
use ird_core::irreps::{distill, scs_amplitudes, special_states, DistilledAmplitudes, DistilledState, SpecialState};
use ird_core::oracle::{build_exact, dicke_vectors, symmetry_sectors, ExactState};
use ird_core::{CouplingKernel, ModelParams};

fn setup(n: usize, s: f64, alpha: f64) -> (ModelParams, DistilledAmplitudes) {
    let p = ModelParams::new(n, s, alpha).unwrap();
    let a = distill(&CouplingKernel::from_params(&p)).unwrap();
    (p, a)
}

fn spectrum_of(n: usize, s: f64, alpha: f64) -> Spectrum {
    let (p, a) = setup(n, s, alpha);
    diagonalize(&assemble(&p, &a).unwrap()).unwrap()
}

#[test]
fn free_precession_ladders() {
    // At s = 0 every block is -Jx with spin N/2 - delta.
    let spec = spectrum_of(8, 0.0, 0.0);
    let mut want: Vec<f64> = [4i64, 3, 2].iter().flat_map(|&j| (-j..=j).map(|m| m as f64)).collect();
    want.sort_by(f64::total_cmp);
    for (e, w) in spec.energies().iter().zip(&want) {
        assert!((e - w).abs() < 1e-12, "{e} vs {w}");
    }
}

#[test]
fn spectrum_contract_at_256() {
    let (p, a) = setup(256, 0.6, 1.0);
    let h = assemble(&p, &a).unwrap();
    let spec = diagonalize(&h).unwrap();
    let sum: f64 = spec.energies().iter().sum();
    assert!((sum - h.trace()).abs() <= 1e-8 * h.trace().abs().max(1.0));
    assert!(spec.max_residual(&h) <= 1e-9 * spec.radius());
    assert!(spec.energies().windows(2).all(|w| w[1] >= w[0]));
    let d = spec.dim();
    let mut worst: f64 = 0.0;
    for i in (0..d).step_by(7) {
        for j in 0..d {
            let dot: f64 = spec.vector(i).iter().zip(spec.vector(j)).map(|(x, y)| x * y).sum();
            worst = worst.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    assert!(worst < 1e-10, "orthonormality {worst}");
}

#[test]
fn evolution_identities() {
    let spec = spectrum_of(64, 0.5, 1.0);
    let psi = scs_amplitudes(64, 0.7, 0.2).unwrap();
    let same = evolve(&spec, &psi, 0.0);
    assert!((same.inner(&psi).norm() - 1.0).abs() < 1e-12);
    let eig = spec.state(10);
    let moved = evolve(&spec, &eig, 3.7);
    assert!((moved.inner(&eig).norm() - 1.0).abs() < 1e-12);
    let (p, a) = setup(256, 0.5, 1.0);
    let h = assemble(&p, &a).unwrap();
    let spec = diagonalize(&h).unwrap();
    let psi = scs_amplitudes(256, 1.1, 0.4).unwrap();
    let far = evolve(&spec, &psi, 1e5);
    assert!((far.norm() - 1.0).abs() < 1e-9);
    assert!((h.expectation(&far) - h.expectation(&psi)).abs() <= 1e-9 * spec.radius());
}

#[test]
fn degenerate_kernel_leaves_scars_unperturbed() {
    let (p, a) = setup(16, 0.5, 0.0);
    let set = perturbed_scars(&p, &a).unwrap();
    assert_eq!(set.len(), 17);
    assert!(set.max_variance() < 1e-12);
    assert!(set.scars.iter().all(|s| (s.raw_norm - 1.0).abs() < 1e-12 && s.valid));
    let h = assemble(&p, &a).unwrap();
    let spec = diagonalize(&h).unwrap();
    let engine = Loschmidt::new(&spec, &set).unwrap();
    let times = uniform_times(15.0, 31);
    for m in engine.echo_scs(0.9, 2.0, &times).unwrap() {
        assert!((m - 1.0).abs() < 1e-10);
    }
}

#[test]
fn interaction_difference_has_no_symmetric_block() {
    let (p, a) = setup(40, 0.4, 1.5);
    let v = assemble(&p, &a).unwrap().difference(&assemble_reference(&p, &a).unwrap()).unwrap();
    let sym = v.layout().block(0);
    for i in sym.clone() {
        for j in sym.clone() {
            assert!(v.element(i, j).abs() < 1e-10);
        }
    }
    assert!(perturbed_scars(&p, &a).unwrap().max_first_order_shift < 1e-10);
}

#[test]
fn scarred_regime_statistics_at_12() {
    let (p, a) = setup(12, 0.4, 1.0);
    let set = perturbed_scars(&p, &a).unwrap();
    assert_eq!(set.len(), 13);
    assert!(set.max_variance() / set.min_gap() < 0.2);
    assert!(set.max_overlap() <= 0.05);

    let exact = exact_scar_candidates(12, &symmetry_sectors(&build_exact(&p).unwrap()).unwrap());
    let basis = dicke_vectors(12, &a).unwrap();
    let mut total = 0.0;
    for e in &exact {
        let (proj, _) = basis.project(&ExactState::from_real(12, &e.vector).unwrap());
        total += set.scars.iter().map(|s| s.state.inner(&proj).norm_sqr()).fold(0.0, f64::max);
    }
    assert!(total / exact.len() as f64 >= 0.98);
    assert!(exact.iter().all(|e| symmetric_weight(12, &e.vector) >= 0.5));
}

#[test]
fn variance_is_shift_invariant() {
    let (p, a) = setup(32, 0.45, 1.0);
    let h = assemble(&p, &a).unwrap();
    let r = assemble_reference(&p, &a).unwrap();
    let base = perturbed_scars_from(&h, &r).unwrap();
    let moved = perturbed_scars_from(&h.shifted(10.0), &r.shifted(10.0)).unwrap();
    for (x, y) in base.scars.iter().zip(&moved.scars) {
        assert!((x.variance - y.variance).abs() < 1e-9);
        assert!((y.energy - x.energy - 10.0).abs() < 1e-9);
    }
}

#[test]
fn echo_starts_at_projector_weight() {
    let (p, a) = setup(24, 0.6, 1.0);
    let h = assemble(&p, &a).unwrap();
    let spec = diagonalize(&h).unwrap();
    let set = perturbed_scars_from(&h, &assemble_reference(&p, &a).unwrap()).unwrap();
    let engine = Loschmidt::new(&spec, &set).unwrap();
    for (theta, phi) in [(0.0, 0.0), (1.2, 0.4), (2.5, 3.0)] {
        let m0 = engine.echo_scs(theta, phi, &[0.0]).unwrap()[0];
        let psi = scs_amplitudes(24, theta, phi).unwrap();
        let w: f64 = (0..engine.len()).map(|k| engine.scar_state(k).inner(&psi).norm_sqr()).sum();
        assert!((m0 - w * w).abs() < 1e-10 && m0 <= 1.0 + 1e-9);
    }
    // A scar eigen-initialization starts at exactly one.
    assert!((engine.echo(&engine.scar_state(3), &[0.0])[0] - 1.0).abs() < 1e-12);
    let trace = loschmidt(&p, &a, 1.0, 0.5, &uniform_times(5.0, 11)).unwrap();
    assert_eq!(trace.echo.len(), 11);
    assert!(trace.mean > 0.0 && trace.mean <= 1.0);
}

#[test]
fn quench_initial_moments() {
    let (p, a) = setup(10, 0.3, 1.0);
    let times = [0.0];
    let z = quench(&p, &a, &special_states(10, SpecialState::ZPolarized).unwrap(), &times).unwrap()[0];
    assert!((z.z - 1.0).abs() < 1e-12 && z.x.abs() < 1e-12 && z.y.abs() < 1e-12 && z.dz2.abs() < 1e-12);
    let g = quench(&p, &a, &special_states(10, SpecialState::Ghz).unwrap(), &times).unwrap()[0];
    assert!(g.z.abs() < 1e-12 && (g.dz2 - 1.0).abs() < 1e-12);
}

#[test]
fn larmor_precession_without_coupling() {
    let (p, a) = setup(12, 0.0, 1.0);
    let psi = special_states(12, SpecialState::ZPolarized).unwrap();
    let times = uniform_times(12.0, 97);
    for q in quench(&p, &a, &psi, &times).unwrap() {
        assert!((q.z - q.t.cos()).abs() < 1e-8, "t={} z={}", q.t, q.z);
    }
}

#[test]
fn quench_conserves_energy_and_parity() {
    let (p, a) = setup(48, 0.7, 0.8);
    let h = assemble(&p, &a).unwrap();
    let spec = diagonalize(&h).unwrap();
    let ghz = special_states(48, SpecialState::Ghz).unwrap();
    assert!((parity_expectation(&ghz) - 1.0).abs() < 1e-12);
    let c = spec.decompose(&ghz);
    let e0 = h.expectation(&ghz);
    for t in [0.3, 4.0, 250.0] {
        let psi: DistilledState = spec.evolve_coefficients(&c, t);
        assert!((h.expectation(&psi) - e0).abs() <= 1e-9 * e0.abs().max(1.0));
        assert!((parity_expectation(&psi) - 1.0).abs() < 1e-9);
        assert!((apply_parity(&psi).inner(&psi).re - 1.0).abs() < 1e-9);
    }
}
