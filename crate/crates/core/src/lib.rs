//! Numerical kernels for MIMO antenna selection.
//!
//! The crate is organized in four layers:
//!
//! * [`matrix`] / [`eigen`] / [`poly`] / [`subset`]: dense complex matrices,
//!   Hermitian forms with a cached spectrum, a cyclic Jacobi eigensolver,
//!   real polynomials, and 1-based index subsets.
//! * [`channel`] / [`io`]: MIMO channel matrices, Gaussian-capacity
//!   computation, deterministic channel generators, and JSON/CSV persistence.
//! * [`selection`]: exhaustive and greedy transmit/receive antenna subset
//!   selection plus capacity lower bounds for the selected subchannel.
//! * [`identities`]: numerical verification of characteristic-polynomial
//!   identities satisfied by principal submatrices of Hermitian forms.
//!
//! All capacities and logarithms are base 2 (bits). Every operation that can
//! fail returns [`Error`]; nothing panics on malformed user input.

pub mod channel;
pub mod error;
pub mod identities;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod selection;
pub mod subset;

mod eigen;

pub use channel::{CapacityReport, MimoChannel};
pub use error::Error;
pub use matrix::{ComplexMatrix, HermitianForm};
pub use poly::Polynomial;
pub use subset::SubsetIndex;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
