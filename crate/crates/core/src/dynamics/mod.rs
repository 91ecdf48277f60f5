//! Spectra, exact evolution, perturbed scars, Loschmidt echoes and quenches.

mod echo;
mod perturb;
mod quench;
mod spectrum;

pub use echo::{loschmidt, survival, time_average, uniform_times, Loschmidt, LoschmidtTrace};
pub use perturb::{perturbed_scars, perturbed_scars_from, PerturbedScar, PerturbedScarSet};
pub use quench::{collective_point, quench, quench_with, QuenchPoint};
pub use spectrum::{diagonalize, evolve, Spectrum};
