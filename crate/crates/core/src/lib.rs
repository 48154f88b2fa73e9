pub mod bundle;
pub mod cli;
pub mod counts;
pub mod error;
pub mod graded;
pub mod residual;
pub mod varieties;

pub use bundle::Bundle;
pub use error::{Error, Result};
pub use graded::{ChowRing, GradedClass, Rational};
