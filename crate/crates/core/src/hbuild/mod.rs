//! Tensor weights and assembly of the distilled Hamiltonian.

mod assemble;
mod parity;
mod weights;

pub use assemble::{assemble, assemble_reference, read_dump, DistilledHamiltonian, DUMP_MAGIC, DUMP_VERSION};
pub use parity::{apply_parity, parity_expectation, parity_image, parity_sign};
pub use weights::{
    reference_weights, symmetric_f0, symmetric_f2, weight_f1, weight_table, weights_for_kernel, TensorWeights,
};
