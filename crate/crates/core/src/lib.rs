pub mod error;
pub mod field;
pub mod fracops;
pub mod green;
pub mod quad;
pub mod scenario;
pub mod signal;
pub mod solver;
pub mod specfun;
pub mod sum;

pub use error::{Error, Result};
pub use field::{Provenance, SolutionField};
pub use green::{FracOrder, Regime};
pub use signal::Signal;
