//! Irrep bookkeeping, Clebsch-Gordan coefficients, bright amplitudes and distilled states.

mod amplitudes;
mod cg;
mod layout;
mod spin;
mod states;

pub use amplitudes::{c2_radicand, distill, DistilledAmplitudes};
pub use cg::{cg, cg_coefficient, MAX_TWICE_J2};
pub use layout::{BasisLayout, DickeIndex, IrrepLabel};
pub use spin::HalfInt;
pub use states::{ladder, scs_amplitudes, special_states, DistilledState, SpecialState};

pub(crate) use states::ln_binomials;

use crate::error::{invalid, Result};

/// Number of copies `d_N(J) = (2J+1)/(N/2+J+1) C(N, N/2-J)` of spin `J` in `N` spin-1/2s.
pub fn irrep_degeneracy(n: usize, j: HalfInt) -> Result<f64> {
    let tn = n as i64;
    let tj = j.twice();
    if n == 0 || tj < 0 || tj > tn || (tn - tj) % 2 != 0 {
        return Err(invalid(format!("J = {j} is not a total spin of {n} spin-1/2 sites")));
    }
    let k = ((tn - tj) / 2) as usize;
    let lb = ln_binomials(n)[k];
    let ln = ((tj + 1) as f64).ln() - (((tn + tj) / 2 + 1) as f64).ln() + lb;
    Ok(ln.exp().round())
}
