//! Enumeration of finite Weyl groups level by level, with every element
//! paired with its inverse during the same pass, plus element orders,
//! conjugacy classes and signed cycle-types.

pub mod classify;
pub mod cli;
pub mod cycletype;
pub mod error;
pub mod matrix;
pub mod orbit;
pub mod reference;
pub mod rootdata;
pub mod store;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, MatrixKey, Rational, RationalMatrix};
pub use orbit::{GroupElement, Level, Weight, Word};
pub use rootdata::{RootSystemData, RootSystemId};
