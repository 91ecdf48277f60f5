//! Browser bindings: spectrum, Loschmidt echo map and quench traces of the distilled chain.
//!
//! Every export returns a flat `Float64Array` in row-major order; the row width is listed on
//! each function. The plain `*_rows` functions are the same computations for native callers.

use wasm_bindgen::prelude::*;

use ird_core::analysis::AngleGrid;
use ird_core::dynamics::{diagonalize, perturbed_scars_from, quench_with, time_average, uniform_times, Loschmidt};
use ird_core::hbuild::{assemble, assemble_reference};
use ird_core::irreps::{distill, scs_amplitudes, special_states, DistilledAmplitudes, SpecialState};
use ird_core::{classical_energy, CouplingKernel, IrdError, ModelParams};

/// Largest chain the page accepts; keeps a map under a few seconds in the browser.
pub const MAX_N: usize = 200;

fn setup(n: usize, s: f64, alpha: f64) -> Result<(ModelParams, DistilledAmplitudes), IrdError> {
    if n > MAX_N {
        return Err(IrdError::ResourceLimit(format!("N = {n} above the demo limit {MAX_N}")));
    }
    let p = ModelParams::new(n, s, alpha)?;
    let a = distill(&CouplingKernel::from_params(&p))?;
    Ok((p, a))
}

/// Rows of `(energy, sym_population, spin_number, parity)`.
pub fn spectrum_rows(n: usize, s: f64, alpha: f64) -> Result<Vec<f64>, IrdError> {
    let (p, a) = setup(n, s, alpha)?;
    let spec = diagonalize(&assemble(&p, &a)?)?;
    Ok((0..spec.len())
        .flat_map(|k| [spec.energy(k), spec.sym_population(k), spec.spin_number(k), spec.parity(k) as f64])
        .collect())
}

/// Rows of `(theta, phi, mean_echo, classical_energy)` over the inclusive-pole angle grid.
pub fn loschmidt_rows(
    n: usize,
    s: f64,
    alpha: f64,
    theta_points: usize,
    phi_points: usize,
    t_max: f64,
    t_points: usize,
) -> Result<Vec<f64>, IrdError> {
    let (p, a) = setup(n, s, alpha)?;
    let h = assemble(&p, &a)?;
    let spec = diagonalize(&h)?;
    let scars = perturbed_scars_from(&h, &assemble_reference(&p, &a)?)?;
    let engine = Loschmidt::new(&spec, &scars)?;
    let times = uniform_times(t_max, t_points);
    let mut out = Vec::with_capacity(4 * theta_points * phi_points);
    for (theta, phi) in (AngleGrid { theta_points, phi_points }).points() {
        let m = time_average(&times, &engine.echo_scs(theta, phi, &times)?)?;
        out.extend([theta, phi, m, classical_energy(s, theta, phi)]);
    }
    Ok(out)
}

/// Rows of `(t, x, y, z, energy)`. `state` is `z`, `x`, `ghz` or `scs` (uses `theta`, `phi`).
#[allow(clippy::too_many_arguments)]
pub fn quench_rows(
    n: usize,
    s: f64,
    alpha: f64,
    state: &str,
    theta: f64,
    phi: f64,
    t_max: f64,
    t_points: usize,
) -> Result<Vec<f64>, IrdError> {
    let (p, a) = setup(n, s, alpha)?;
    let psi0 = if state.eq_ignore_ascii_case("scs") {
        scs_amplitudes(n, theta, phi)?
    } else {
        special_states(n, state.parse::<SpecialState>()?)?
    };
    let h = assemble(&p, &a)?;
    let spec = diagonalize(&h)?;
    Ok(quench_with(&h, &spec, &psi0, &uniform_times(t_max, t_points))
        .into_iter()
        .flat_map(|q| [q.t, q.x, q.y, q.z, q.energy])
        .collect())
}

fn js(e: IrdError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn spectrum(n: usize, s: f64, alpha: f64) -> Result<Vec<f64>, JsError> {
    spectrum_rows(n, s, alpha).map_err(js)
}

#[wasm_bindgen(js_name = loschmidtMap)]
pub fn loschmidt_map(
    n: usize,
    s: f64,
    alpha: f64,
    theta_points: usize,
    phi_points: usize,
    t_max: f64,
    t_points: usize,
) -> Result<Vec<f64>, JsError> {
    loschmidt_rows(n, s, alpha, theta_points, phi_points, t_max, t_points).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn quench(
    n: usize,
    s: f64,
    alpha: f64,
    state: &str,
    theta: f64,
    phi: f64,
    t_max: f64,
    t_points: usize,
) -> Result<Vec<f64>, JsError> {
    quench_rows(n, s, alpha, state, theta, phi, t_max, t_points).map_err(js)
}

#[wasm_bindgen(js_name = maxN)]
pub fn max_n() -> usize {
    MAX_N
}
