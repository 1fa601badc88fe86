pub mod algebra;
pub mod asympt;
pub mod cli;
pub mod error;
pub mod hypergeom;
pub mod quantum;
pub mod recursion;
pub mod toric;

pub use error::{Error, Result};
