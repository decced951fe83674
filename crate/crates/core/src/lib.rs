//! Arithmetical functions under the Dirichlet and binomial convolutions.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod inversion;
pub mod multiplicativity;
pub mod numeric;
pub mod semimult;
pub mod series;

pub use algebra::ArithFn;
pub use error::{Error, Result};
pub use numeric::Rational;
