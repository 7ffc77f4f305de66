//! Composition operators on weighted Hardy spaces H²(β): weight sequences, symbols,
//! Taylor coefficients of powers, finite sections and oscillatory-integral asymptotics.

// negated comparisons also reject NaN parameters
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod coeffs;
pub mod config;
pub mod constants;
pub mod counterexample;
pub mod error;
pub mod operator;
pub mod quad;
pub mod symbols;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
