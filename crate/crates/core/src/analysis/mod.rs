//! Scar statistics, phase-transition sweeps, two-body entropies and scaling collapse.

mod fssa;
mod qpt;
mod scars;
mod sweep;
mod twobody;

pub use fssa::{
    collapse_quality, grid_search, local_minima, minima_curve, scale_curve, CollapseParams, Curve, GridSpec,
};
pub use qpt::{
    crossover, diagonal_ensemble_z, dqpt, gqpt, ground_order, qpt_sweep, trapezoid_z, variance_sweep, QptPoint,
    DEFAULT_AVERAGING_TIME,
};
pub use scars::{
    detect_scars, detect_scars_with, exact_scar_candidates, scar_fidelity, symmetric_weight, AngleGrid, ExactScar,
    FidelityReport, ScarRecord,
};
pub use sweep::{range_inclusive, steepest_rise, SweepResult};
pub use twobody::{two_body_entropy, two_body_entropy_major, two_body_inverse, two_body_map, TwoBodyState};
