//! Exact construction and verification of a family of exceptional rational
//! functions over finite fields.

pub mod cli;
pub mod error;
pub mod family;
pub mod ffield;
pub mod monodromy;
pub mod polyrat;
pub mod ramify;

pub use error::{Error, Result};
