use ird_core::analysis::{range_inclusive, two_body_entropy, two_body_inverse, two_body_map};
use ird_core::hbuild::{apply_parity, assemble, read_dump, DistilledHamiltonian};
use ird_core::irreps::{cg_coefficient, distill, scs_amplitudes, BasisLayout, DistilledState, HalfInt};
use ird_core::{Complex64, CouplingKernel, ModelParams};
use proptest::prelude::*;

fn hamiltonian(n: usize, s: f64, alpha: f64) -> DistilledHamiltonian {
    let p = ModelParams::new(n, s, alpha).unwrap();
    assemble(&p, &distill(&CouplingKernel::from_params(&p)).unwrap()).unwrap()
}

fn state(n: usize, raw: &[(f64, f64)]) -> DistilledState {
    let layout = BasisLayout::new(n).unwrap();
    let amps = (0..layout.dim()).map(|i| Complex64::new(raw[i % raw.len()].0, raw[i % raw.len()].1 + i as f64 * 1e-3));
    DistilledState::from_amplitudes(layout, amps.collect()).unwrap().normalized().unwrap()
}

fn even_n(max_half: usize) -> impl Strategy<Value = usize> {
    (3..=max_half).prop_map(|h| 2 * h)
}

fn amplitudes() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7..20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hamiltonian_is_symmetric(n in even_n(30), s in 0.0..=1.0f64, alpha in 0.0..3.0f64) {
        let h = hamiltonian(n, s, alpha);
        for i in 0..h.dim() {
            for &(j, v) in h.row(i) {
                prop_assert!((v - h.element(j, i)).abs() <= 1e-12 * v.abs().max(1.0));
            }
        }
    }

    #[test]
    fn transverse_field_and_zz_selection_rule(n in even_n(20), s in 0.05..0.95f64, alpha in 0.0..3.0f64) {
        let h = hamiltonian(n, s, alpha);
        let layout = h.layout();
        for i in 0..h.dim() {
            let a = layout.index(i);
            for &(j, v) in h.row(i) {
                let b = layout.index(j);
                let allowed = a.m == b.m || (a.delta == b.delta && (a.m - b.m).abs() == 1);
                prop_assert!(allowed || v.abs() < 1e-14, "({},{}) -> ({},{}) = {v}", a.delta, a.m, b.delta, b.m);
            }
        }
    }

    #[test]
    fn parity_commutes_with_hamiltonian(n in even_n(24), s in 0.0..=1.0f64, alpha in 0.0..3.0f64, raw in amplitudes()) {
        let h = hamiltonian(n, s, alpha);
        let psi = state(n, &raw);
        let lhs = h.apply_state(&apply_parity(&psi));
        let rhs = apply_parity(&h.apply_state(&psi));
        let dev = lhs.amplitudes().iter().zip(rhs.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(dev < 1e-10);
        let twice = apply_parity(&apply_parity(&psi));
        prop_assert!((twice.inner(&psi).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_within_spectral_bound(n in even_n(40), s in 0.0..=1.0f64, alpha in 0.0..3.0f64, raw in amplitudes()) {
        let h = hamiltonian(n, s, alpha);
        let psi = state(n, &raw);
        prop_assert!(h.expectation(&psi).abs() <= h.radius_bound() * (1.0 + 1e-12));
        let j = psi.spin_number();
        let half = (n / 2) as f64;
        prop_assert!(j >= half - 2.0 - 1e-9 && j <= half + 1e-9);
    }

    #[test]
    fn coherent_states_are_normalized(n in even_n(200), theta in 0.0..std::f64::consts::PI, phi in 0.0..std::f64::consts::TAU) {
        let psi = scs_amplitudes(n, theta, phi).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
        prop_assert!(psi.block_population(1) < 1e-24 && psi.block_population(2) < 1e-24);
        prop_assert!((psi.jz() / (n as f64 / 2.0) - theta.cos()).abs() < 1e-9);
    }

    #[test]
    fn clebsch_gordan_orthonormal(tj1 in 0i64..60, tj2 in 1i64..=4) {
        let (j1, j2) = (HalfInt::from_twice(tj1), HalfInt::from_twice(tj2));
        let projections = |tj: i64| (-tj..=tj).step_by(2).map(HalfInt::from_twice).collect::<Vec<_>>();
        let lo = (tj1 - tj2).abs();
        let totals: Vec<HalfInt> = (lo..=tj1 + tj2).step_by(2).map(HalfInt::from_twice).collect();
        for &m1 in &projections(tj1) {
            for &m2 in &projections(tj2) {
                // Completeness over J for fixed (m1, m2).
                let sum: f64 = totals.iter().map(|&j| cg_coefficient(j1, m1, j2, m2, j, m1 + m2).unwrap().powi(2)).sum();
                prop_assert!((sum - 1.0).abs() < 1e-10);
            }
        }
        for &j in &totals {
            for &jp in &totals {
                let m = HalfInt::from_twice(j.twice().min(jp.twice()) % 2);
                let dot: f64 = projections(tj2)
                    .iter()
                    .map(|&m2| {
                        let m1 = m - m2;
                        cg_coefficient(j1, m1, j2, m2, j, m).unwrap() * cg_coefficient(j1, m1, j2, m2, jp, m).unwrap()
                    })
                    .sum();
                let want = if j == jp { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-10, "J={j} J'={jp}: {dot}");
            }
        }
    }

    #[test]
    fn two_body_map_round_trips(n in even_n(10), raw in amplitudes()) {
        let psi = state(n, &raw);
        let tb = two_body_map(&psi).unwrap();
        prop_assert!((tb.norm() - 1.0).abs() < 1e-10);
        let back = two_body_inverse(&tb).unwrap();
        let dev = psi.amplitudes().iter().zip(back.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(dev < 1e-10);
        let s = two_body_entropy(&psi).unwrap();
        prop_assert!(s >= -1e-12 && s <= 3f64.ln() + 1e-12);
    }

    #[test]
    fn dump_round_trips(n in even_n(12), s in 0.0..=1.0f64, alpha in 0.0..3.0f64) {
        let h = hamiltonian(n, s, alpha);
        let mut bytes = Vec::new();
        h.write_dump(&mut bytes).unwrap();
        let (m, dense) = read_dump(bytes.as_slice()).unwrap();
        prop_assert_eq!(m, n);
        prop_assert_eq!(dense, h.to_dense());
    }

    #[test]
    fn inclusive_ranges(start in -2.0..2.0f64, len in 0.0..3.0f64, step in 0.001..0.5f64) {
        let stop = start + len;
        let r = range_inclusive(start, stop, step).unwrap();
        prop_assert!((r[0] - start).abs() < 1e-11);
        prop_assert!(r.windows(2).all(|w| (w[1] - w[0] - step).abs() < 1e-9));
        prop_assert!(*r.last().unwrap() <= stop + 1e-9);
        prop_assert!(*r.last().unwrap() + step > stop - 1e-9);
    }
}
