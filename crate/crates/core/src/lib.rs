//! Exact evaluation of iterated power sums `S_m^(a)(n)` through the ψ-basis
//! expansion `n^m = Σ_k c_mk ψ_k(n)`.
//!
//! The crate builds the two coefficient triangles of that expansion — the
//! monomial coefficients `a_ml` of `ψ_m` and the integer coefficients `c_mk`
//! of `n^m` — by independent routes, evaluates hyper-sums by several closed
//! formulas plus a brute-force oracle, verifies the identities tying the
//! routes together over finite grids, and machine-checks the conjectured
//! polynomial structure of the diagonals `c_{m,m−k}`.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals, no
//! floating point anywhere.

pub mod coeffs;
pub mod conjecture;
pub mod error;
pub mod exact;
pub mod hypersum;
pub mod interp;
pub mod matrix;
pub mod psi;
pub mod report;

pub use error::{Error, Result};
pub use exact::{Int, Rat};
