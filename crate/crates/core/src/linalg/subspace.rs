use num_traits::Zero;

use super::{QMatrix, Rational};
use crate::error::{Error, Result};

/// A subspace of ℚⁿ held in canonical form: the basis matrix is in reduced
/// column echelon form, so two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
}

impl Subspace {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = QMatrix::from_rows(ambient_dim, vectors).rref();
        let basis = QMatrix::from_fn(ambient_dim, pivots.len(), |i, j| r[(j, i)].clone());
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: QMatrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: QMatrix::identity(ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        self.basis.solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Subspace::span(self.ambient_dim, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // [U | -V] (a; b) = 0  =>  U a ∈ U ∩ V
        let n = self.ambient_dim;
        let joint = QMatrix::from_fn(n, p + q, |i, j| {
            if j < p {
                self.basis[(i, j)].clone()
            } else {
                -other.basis[(i, j - p)].clone()
            }
        });
        let vectors: Vec<Vec<Rational>> = joint
            .null_space_vectors()
            .into_iter()
            .map(|ab| self.basis.apply(&ab[..p]))
            .collect();
        Ok(Subspace::span(n, &vectors))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, a: &QMatrix) -> Result<Subspace> {
        if a.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: a.cols() });
        }
        let vs: Vec<Vec<Rational>> = self.basis_vectors().iter().map(|v| a.apply(v)).collect();
        Ok(Subspace::span(a.rows(), &vs))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim })
        }
    }
}

/// Canonical basis of `{v : A v = 0}`.
pub fn kernel_basis(a: &QMatrix) -> Subspace {
    Subspace::span(a.cols(), &a.null_space_vectors())
}

/// Canonical basis of the column space of `A`.
pub fn image_basis(a: &QMatrix) -> Subspace {
    Subspace::span(a.rows(), &a.columns())
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| rat((i == j) as i64)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&QMatrix::zeros(2, 2)), Subspace::full(2));
        let j2 = QMatrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(kernel_basis(&j2), Subspace::span(2, &[e(2, 0)]));
        let t = QMatrix::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        assert_eq!(kernel_basis(&(&t * &t)).dim(), 3);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&QMatrix::identity(3)), Subspace::full(3));
        let j2 = QMatrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(image_basis(&j2), Subspace::span(2, &[e(2, 0)]));
        let t = QMatrix::from_ints(&[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        assert_eq!(image_basis(&t), Subspace::span(4, &[e(4, 0), e(4, 1)]));
    }

    #[test]
    fn intersect_examples() {
        let u = Subspace::span(3, &[vec![rat(1), rat(2), rat(3)], e(3, 2)]);
        assert_eq!(intersect(&u, &u).unwrap(), u);
        let a = Subspace::span(2, &[e(2, 0)]);
        let b = Subspace::span(2, &[e(2, 1)]);
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::zero(2));
        let t = QMatrix::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let k = kernel_basis(&t);
        let im = image_basis(&t);
        assert_eq!(k, Subspace::span(3, &[e(3, 0), e(3, 2)]));
        assert_eq!(intersect(&k, &im).unwrap(), Subspace::span(3, &[e(3, 0)]));
        assert!(matches!(intersect(&a, &Subspace::full(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[vec![rat(2), rat(4), rat(0)], vec![rat(0), rat(1), rat(1)]]);
        let b = Subspace::span(3, &[vec![rat(1), rat(3), rat(1)], vec![rat(1), rat(1), rat(-1)]]);
        assert_eq!(a, b);
    }
}
