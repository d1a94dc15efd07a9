//! Zeros and zero-power sum rules for ξ and related zeta-type functions.

pub mod error;
pub mod numeric;
pub mod special_functions;

pub use error::{Error, Result};
pub use special_functions::{ComplexPoint, EvalOptions, FunctionId};
pub mod zero_finder;
pub mod sum_rules;
pub mod bell_expansion;
pub mod translations;
pub mod rh_scan;
pub mod datasets;
