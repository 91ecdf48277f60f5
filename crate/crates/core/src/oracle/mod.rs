//! Brute-force `2^N` machinery for validating the distilled construction at small `N`.

mod dicke;
mod entropy;
mod exact;
mod matelem;
mod reference;
mod sectors;

pub use dicke::{dicke_vectors, project_distilled, stretch_vector, DickeBasis};
pub use entropy::{entropies, irrep_populations, min_pair_entropy, pair_density, pair_density_permuted, Cut};
pub use exact::{
    apply_j2, apply_jminus, apply_jplus, build_exact, jz_value, mirror, site_bit, spin_flip, sz, ExactHamiltonian,
    ExactState, MAX_EXACT_N,
};
pub use matelem::{dicke_amplitude, matelem_sigzsigz, trace_f0, trace_f1, trace_f2};
pub use reference::{cg_racah, lmg_matrix, lmg_spectrum};
pub use sectors::{symmetry_sectors, SymmetrySector};

/// Largest `|a - b|` over two equally sized slices.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
