// negated float comparisons are used on purpose: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bochner;
pub mod cli;
pub mod error;
pub mod extreal;
pub mod lebesgue;
pub mod separability;
pub mod simple_fn;
pub mod spaces;
pub mod vectors;

pub use error::{Error, Result};
