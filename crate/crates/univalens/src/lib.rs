//! Numerical tooling for univalence checks of an integral operator on the
//! unit disk: jet-based expression evaluation, criterion supremum searches,
//! Loewner-chain diagnostics, and quasiconformal extension measurement.

pub mod criteria;
pub mod error;
pub mod expr;
pub mod loewner;
pub mod qcext;
pub mod quad;
pub mod report;
pub mod svg;

pub mod cli;

pub use error::{Error, Result};
