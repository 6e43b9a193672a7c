use thiserror::Error;

use crate::vectors::VSpace;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or integrating functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid extended real {0}: must be a non-NaN value >= 0")]
    InvalidXReal(f64),

    #[error("invalid coordinate {0}: coordinates must be finite")]
    NonFiniteCoordinate(f64),

    #[error("carrier mismatch: {left:?} vs {right:?}")]
    CarrierMismatch { left: VSpace, right: VSpace },

    #[error("dimension mismatch: carrier {space:?} expects {expected} coordinates, got {got}")]
    DimensionMismatch {
        space: VSpace,
        expected: usize,
        got: usize,
    },

    #[error("a finite measure space needs at least one point")]
    EmptySpace,

    #[error("set or function does not belong to this measure space: {0}")]
    SpaceMismatch(String),

    #[error("point {0} is outside the measure space")]
    PointOutsideSpace(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid index function: {0}")]
    InvalidIndexFn(String),

    #[error("last value not zero: val[{max_which}] must be the zero vector")]
    LastValueNotZero { max_which: usize },

    #[error("index out of range: which takes value {index} > max_which = {max_which}")]
    IndexOutOfRange { index: usize, max_which: usize },

    #[error("length mismatch: val has {got} entries, expected max_which + 1 = {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infinite measure on nonzero part {index}")]
    InfiniteMeasureOnNonzeroPart { index: usize },

    #[error(
        "no convergence detected within {max_n} terms (last oscillation diameter {diameter:e})"
    )]
    NoConvergence { max_n: usize, diameter: f64 },

    #[error("norm not integrable: the integral of |f| is infinite")]
    NormNotIntegrable,

    #[error("integrability violated at n = {n}: a nonzero value sits on an infinite-measure cell")]
    IntegrabilityViolated { n: usize },

    #[error("l1 evidence is infinite at n = {n}")]
    InfiniteL1 { n: usize },

    #[error("not convergent at probe {probe}: distance {distance:e} >= {eps:e}")]
    NotConvergentAtProbe {
        probe: String,
        distance: f64,
        eps: f64,
    },

    #[error("functions differ at probe {0}")]
    FunctionsDiffer(String),

    #[error("domination violated at (n = {n}, x = {x}): |f_n(x)| = {norm} > g(x) = {bound}")]
    DominationViolated {
        n: usize,
        x: String,
        norm: f64,
        bound: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
