use ird_core::hbuild::{assemble, parity_image, weight_f1, weight_table};
use ird_core::irreps::{distill, BasisLayout, DistilledAmplitudes};
use ird_core::oracle::*;
use ird_core::{CouplingKernel, ModelParams};

fn amps(n: usize, alpha: f64) -> DistilledAmplitudes {
    distill(&CouplingKernel::new(n, alpha).unwrap()).unwrap()
}

#[test]
fn distilled_matches_projection_n8() {
    let p = ModelParams::new(8, 0.4, 1.0).unwrap();
    let a = amps(8, 1.0);
    let h = assemble(&p, &a).unwrap();
    let basis = dicke_vectors(8, &a).unwrap();
    let php = basis.project_hamiltonian(&p).unwrap();
    let diff = max_abs_diff(&h.to_dense(), &php);
    assert!(diff < 1e-9, "max |H_D - PHP| = {diff:e}");
}

#[test]
fn dicke_vectors_orthonormal_and_highest_weight() {
    for (n, alpha) in [(6, 0.5), (8, 1.0), (10, 2.0)] {
        let a = amps(n, alpha);
        let b = dicke_vectors(n, &a).unwrap();
        let d = b.layout().dim();
        for i in 0..d {
            for j in 0..=i {
                let g: f64 = b.vector(i).iter().zip(b.vector(j)).map(|(x, y)| x * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-10, "N={n} gram[{i}][{j}] = {g}");
            }
        }
        for delta in 0..3 {
            let top = b.layout().flat(delta, b.layout().spin(delta)).unwrap();
            let up = apply_jplus(n, b.vector(top));
            assert!(up.iter().all(|x| x.abs() < 1e-12));
        }
    }
}

#[test]
fn symmetric_dicke_table_entry() {
    let n = 8;
    let a = amps(n, 1.0);
    for j in 0..n {
        let v = dicke_amplitude(n, &a, 0, 3, &[j]);
        assert!((v - 1.0 / (n as f64).sqrt()).abs() < 1e-14);
        assert!((dicke_amplitude(n, &a, 1, 3, &[j]) - a.c1()[j]).abs() < 1e-14);
    }
}

#[test]
fn matelem_exhaustive_n6() {
    let n = 6;
    let a = amps(n, 1.0);
    let basis = dicke_vectors(n, &a).unwrap();
    let layout = BasisLayout::new(n).unwrap();
    let mut worst: f64 = 0.0;
    for jb in 1..=3i64 {
        for jk in 1..=jb {
            for m in -jk..=jk {
                for sj in 0..n {
                    for sk in 0..n {
                        if sj == sk {
                            continue;
                        }
                        let v = matelem_sigzsigz(n, &a, jb, jk, m, sj, sk).unwrap();
                        let fb = layout.flat((3 - jb) as usize, m).unwrap();
                        let fk = layout.flat((3 - jk) as usize, m).unwrap();
                        let brute = basis.sandwich_zz(fb, fk, sj, sk);
                        worst = worst.max((v - brute).abs());
                    }
                }
            }
        }
    }
    assert!(worst < 1e-9, "worst deviation {worst:e}");
}

#[test]
fn weights_match_traces() {
    for n in [6, 8] {
        let p = ModelParams::new(n, 0.5, 1.0).unwrap();
        let a = amps(n, 1.0);
        let w = weight_table(&p, &a).unwrap();
        let basis = dicke_vectors(n, &a).unwrap();
        for d in 0..3 {
            let t0 = trace_f0(&basis, &p, d);
            assert!((t0 - w.f0[d]).abs() < 1e-9, "N={n} F0[{d}]: {t0} vs {}", w.f0[d]);
            for d2 in d..3 {
                let t2 = trace_f2(&basis, &p, d, d2).unwrap();
                assert!((t2 - w.f2[d][d2]).abs() < 1e-9, "N={n} F2[{d}][{d2}]: {t2} vs {}", w.f2[d][d2]);
            }
        }
    }
    for tj in 1..12 {
        let t = trace_f1(tj).unwrap();
        assert!((t + weight_f1(tj as f64 / 2.0)).abs() < 1e-12);
    }
}

#[test]
fn parity_is_restricted_spin_flip() {
    let n = 8;
    let a = amps(n, 1.0);
    let b = dicke_vectors(n, &a).unwrap();
    let layout = b.layout();
    for f in 0..layout.dim() {
        let v = b.vector(f);
        let flipped: Vec<f64> = (0..v.len()).map(|x| v[spin_flip(n, x)]).collect();
        let (t, sgn) = parity_image(&layout, f);
        let target = b.vector(t);
        let d = flipped.iter().zip(target).map(|(x, y)| (x - sgn * y).abs()).fold(0.0, f64::max);
        assert!(d < 1e-12, "flat {f}");
    }
}

#[test]
fn sector_completeness_n10() {
    let p = ModelParams::new(10, 0.55, 1.2).unwrap();
    let h = build_exact(&p).unwrap();
    let full = h.eigenvalues().unwrap();
    let mut merged: Vec<f64> = symmetry_sectors(&h).unwrap().iter().flat_map(|s| s.eigenvalues.clone()).collect();
    merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(merged.len(), full.len());
    assert!(max_abs_diff(&merged, &full) < 1e-9);
}

#[test]
fn populations_examples() {
    let n = 4;
    let pops = irrep_populations(&ExactState::product(n, &[])).unwrap();
    assert!((pops[&4] - 1.0).abs() < 1e-10);
    let pops = irrep_populations(&ExactState::product(n, &[0])).unwrap();
    assert!((pops[&4] - 0.25).abs() < 1e-10);
    assert!((pops[&2] - 0.75).abs() < 1e-10);
    let mut v = vec![0.0; 16];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    v[site_bit(n, 0)] = s;
    v[site_bit(n, 1)] = -s;
    let pops = irrep_populations(&ExactState::from_real(n, &v).unwrap()).unwrap();
    assert!((pops[&2] - 1.0).abs() < 1e-10);
    assert!((pops.values().sum::<f64>() - 1.0).abs() < 1e-10);
}

#[test]
fn entropy_examples() {
    let n = 8;
    let prod = ExactState::product(n, &[1, 4]);
    assert!(entropies(&prod, Cut::HalfChain).unwrap().abs() < 1e-12);
    assert!(entropies(&prod, Cut::Pair(0, 3)).unwrap().abs() < 1e-12);
    let mut v = vec![0.0; 256];
    v[0] = std::f64::consts::FRAC_1_SQRT_2;
    v[255] = std::f64::consts::FRAC_1_SQRT_2;
    let ghz = ExactState::from_real(n, &v).unwrap();
    assert!((entropies(&ghz, Cut::HalfChain).unwrap() - 2f64.ln()).abs() < 1e-12);
    // Dicke |2,0> at N=4 from two lowerings of all-up.
    let mut d = vec![0.0; 16];
    for x in 0..16usize {
        if x.count_ones() == 2 {
            d[x] = 1.0 / 6f64.sqrt();
        }
    }
    let st = ExactState::from_real(4, &d).unwrap();
    let (r1, i1) = pair_density(&st, 0, 1).unwrap();
    let (r2, i2) = pair_density_permuted(&st, 0, 1).unwrap();
    assert!(max_abs_diff(&r1, &r2) < 1e-12 && max_abs_diff(&i1, &i2) < 1e-12);
    let s = entropies(&st, Cut::Pair(0, 1)).unwrap();
    // Eigenvalues of the pair state: 1/6 (both up), 1/6 (both down), 2/3 (triplet 0).
    let expect = -(2.0 * (1.0 / 6.0) * (1.0f64 / 6.0).ln() + (2.0 / 3.0) * (2.0f64 / 3.0).ln());
    assert!((s - expect).abs() < 1e-12);
}

#[test]
fn lmg_symmetric_block_with_offset() {
    let n = 8;
    let s = 0.6;
    let p = ModelParams::new(n, s, 0.0).unwrap();
    let a = distill(&CouplingKernel::from_params(&p)).unwrap();
    let h = assemble(&p, &a).unwrap();
    let d = h.dim();
    let dense = h.to_dense();
    let lmg = lmg_matrix(n, s);
    for i in 0..=n {
        for j in 0..=n {
            let shift = if i == j { s / 4.0 } else { 0.0 };
            assert!((dense[i * d + j] - lmg[i * (n + 1) + j] - shift).abs() < 1e-12);
        }
    }
}
