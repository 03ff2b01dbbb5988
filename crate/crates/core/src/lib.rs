//! Zeta functions of equations over finite fields, computed two independent
//! ways, plus a statevector simulator for the circuit whose eigenvalues are
//! the normalized zeta roots.
//!
//! - [`field`]: exact F_{p^r} arithmetic with precomputed dlog tables.
//! - [`characters`]: multiplicative characters and numerical Gauss sums.
//! - [`zeta`]: brute-force point counting, closed-form roots for diagonal
//!   hypersurfaces, series and rational-form reconstruction, orbit counts.
//! - [`qsim`]: statevector simulation of the root-phase circuit, phase
//!   estimation, and trace-based approximate point counting.

pub mod characters;
pub mod error;
pub mod field;
pub mod qsim;
pub mod zeta;

pub use error::{Error, Result};
