//! Irrep-distilled Hamiltonians for the long-range transverse-field Ising chain.
//!
//! The chain of `N` spin-1/2 sites is truncated to the symmetric irrep plus the
//! two "bright" irreps that couple to it, a space of dimension `3(N-1)`.
//! Clebsch-Gordan coefficients follow the Condon-Shortley phase convention.

pub mod acceptance;
pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod hbuild;
pub mod irreps;
mod linalg;
pub mod model;
pub mod oracle;

pub use error::{IrdError, Result};
pub use model::{classical_energy, kac_norm, CouplingKernel, ModelParams};

pub use num_complex::Complex64;

/// Map over independent work items, in parallel when the `parallel` feature is on.
/// Output order follows input order.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}
