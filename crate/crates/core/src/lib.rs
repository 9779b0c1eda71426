pub mod arith;
pub mod eisenstein;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod modsym;
pub mod quadfield;
pub mod selmer;

pub use error::{Error, Result};
