use ird_wasm::{loschmidt_rows, quench_rows, spectrum_rows, MAX_N};

#[test]
fn spectrum_has_one_row_per_level() {
    let rows = spectrum_rows(12, 0.4, 1.0).unwrap();
    assert_eq!(rows.len(), 4 * 33);
    let energies: Vec<f64> = rows.chunks(4).map(|r| r[0]).collect();
    assert!(energies.windows(2).all(|w| w[1] >= w[0]));
    assert!(rows.chunks(4).all(|r| (0.0..=1.0 + 1e-12).contains(&r[1]) && r[3].abs() == 1.0));
}

#[test]
fn loschmidt_map_is_a_fidelity() {
    let rows = loschmidt_rows(10, 0.4, 0.4, 4, 6, 5.0, 50).unwrap();
    assert_eq!(rows.len(), 4 * 24);
    assert!(rows.chunks(4).all(|r| r[2] > 0.0 && r[2] <= 1.0 + 1e-9));
}

#[test]
fn quench_from_pole_precesses_at_zero_coupling() {
    let rows = quench_rows(8, 0.0, 1.0, "z", 0.0, 0.0, 3.0, 7).unwrap();
    for r in rows.chunks(5) {
        assert!((r[3] - r[0].cos()).abs() < 1e-8);
    }
    let scs = quench_rows(8, 0.5, 1.0, "scs", 1.0, 0.3, 1.0, 3).unwrap();
    assert!((scs[3] - 1f64.cos()).abs() < 1e-12);
}

#[test]
fn rejects_bad_input() {
    assert!(spectrum_rows(MAX_N + 2, 0.4, 1.0).is_err());
    assert!(spectrum_rows(7, 0.4, 1.0).is_err());
    assert!(quench_rows(8, 0.4, 1.0, "nope", 0.0, 0.0, 1.0, 3).is_err());
}
