//! The Bochner integral: exact on simple functions, and for general
//! integrable functions the limit of the integrals of an approximating
//! sequence, carried by a [`BifWitness`] together with its convergence
//! evidence.

mod func;
mod nearest;
mod simple;
mod strong;
mod theorems;
mod witness;

pub use func::{LipschitzVecFn, VecFn};
pub use nearest::MAX_RESOLUTION;
pub use simple::{
    bint_sf, bint_sf_ext, bint_sf_formula, bint_sf_lin, norm_bint_sf_le, LinearityReport,
};
pub use strong::{compose_limits, strong_meas_witness, StrongMeasWitness, StrongProbe};
pub use theorems::{
    bint_ext_check, bint_vs_lintp, dominated_convergence_run, zero_ae_check, DominatedParams,
    DominatedReport, DominatedRow, ExtReport, LintComparison, ZeroAeReport,
};
pub use witness::{
    bif_from_separable, bif_minus, bif_neg, bif_norm, bif_plus, bif_real, bif_scal, bint,
    checkpoint_schedule, ApproxParams, BIntEstimate, BifWitness, Checkpoint, ProbeReport,
};
