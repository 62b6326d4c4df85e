//! Exact linear algebra over ℚ and ℤ.

mod charpoly;
mod lattice;
mod matrix;
mod subspace;

use num_bigint::BigInt;

pub use charpoly::{char_poly, min_poly};
pub use lattice::{column_hermite_form, integer_solution_lattice, lll_reduce, IntLattice};
pub use matrix::{clear_denominators, QMatrix};
pub use subspace::{image_basis, intersect, kernel_basis, Subspace};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
