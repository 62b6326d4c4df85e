//! Centralizers of rational matrices in GL(n, ℤ).
//!
//! The crate decides whether the centralizer of `T ∈ GL(n, ℚ)` in GL(n, ℤ) is
//! abelian, contains a free group, or is polycyclic; builds explicit algebraic
//! witnesses for matrices with rational spectrum; and runs a conjugacy and
//! centralizer pipeline inside groups `H_M` of integer matrices preserving a
//! bilinear form, backed by bounded lattice searches that answer
//! yes / no / unknown honestly.
//!
//! Everything is exact: entries are arbitrary-precision rationals.

pub mod backends;
pub mod error;
pub mod hm;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod spectral;
pub mod witnesses;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Rational};
