pub mod algebra;
pub mod corpus;
pub mod error;
pub mod fractional;
pub mod grading;
pub mod grvaluation;
pub mod kronecker;
pub mod semistar;
pub mod session;
pub mod topology;
pub mod verdict;

pub use error::{Error, Result};
