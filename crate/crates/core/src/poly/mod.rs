//! Univariate polynomials over ℤ and ℚ and factorization over ℤ.

mod factor;
pub mod modp;
mod zpoly;

pub use factor::{factor_z, poly_gcd, squarefree_decomposition, Factorization};
pub use zpoly::{QPoly, ZPoly, ZPolyScaled};
