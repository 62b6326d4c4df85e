//! Conjugacy and centralizers in the isometry group `H_M` of a bilinear form.
//!
//! `H_M = {A ∈ GL(n, ℤ) : A·M·Aᵗ = M}`. A GL(n, ℤ)-conjugator `P₀` is
//! corrected by a centralizer element found through the action
//! `X ↦ C·X·Cᵗ`, which under column-major `vec` is the matrix `C ⊗ C`.

mod algorithms;
mod orbit;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rational};

pub use algorithms::{centralizer_in_hm, centralizer_in_hm_with, conjugate_in_hm, conjugate_in_hm_with, HmCertificate};
pub use orbit::{orbit_solve, stabilizer_gens, stabilizer_words, OrbitWord, Stabilizer, DEFAULT_DEPTH, MAX_VISITED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
    Neither,
}

/// Non-degenerate bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    m: QMatrix,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(m: QMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let mt = m.transpose();
        let symmetry = if mt == m {
            Symmetry::Symmetric
        } else if mt == -&m {
            Symmetry::Skew
        } else {
            Symmetry::Neither
        };
        Ok(BilinearForm { m, symmetry })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }
}

/// Integer, det ±1 and `A·M·Aᵗ = M`.
pub fn is_in_hm(a: &QMatrix, m: &BilinearForm) -> Result<bool> {
    if a.rows() != m.dim() || a.cols() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: a.rows() });
    }
    Ok(a.is_unimodular() && &(a * m.matrix()) * &a.transpose() == *m.matrix())
}

/// The matrix of `X ↦ C·X·Cᵗ` on column-major `vec(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KronActionMatrix {
    pub c: QMatrix,
    pub mat: QMatrix,
}

impl KronActionMatrix {
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.mat.apply(v)
    }
}

pub fn kron_action_matrix(c: &QMatrix) -> Result<KronActionMatrix> {
    if !c.is_square() {
        return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    Ok(KronActionMatrix { c: c.clone(), mat: c.kron(c) })
}

/// `(vec(M), vec(P₀⁻¹·M·P₀⁻ᵗ))`, after checking that `P₀` is a unimodular
/// conjugator from `T` to `T̂`.
pub fn reduce_to_orbit(
    t: &QMatrix,
    t_hat: &QMatrix,
    m: &BilinearForm,
    p0: &QMatrix,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = m.dim();
    for x in [t, t_hat, p0] {
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.rows() });
        }
    }
    if !p0.is_unimodular() {
        return Err(Error::Precondition("P0 is not in GL(n, Z)".into()));
    }
    let p_inv = p0.inverse()?;
    if &(p0 * t) * &p_inv != *t_hat {
        return Err(Error::Precondition("P0 does not conjugate T to T_hat".into()));
    }
    let w = &(&p_inv * m.matrix()) * &p_inv.transpose();
    Ok((m.matrix().vectorize(), w.vectorize()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn symplectic() -> BilinearForm {
        BilinearForm::new(QMatrix::from_ints(&[[0, 1], [-1, 0]])).unwrap()
    }

    #[test]
    fn membership_examples() {
        let u = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        assert!(is_in_hm(&QMatrix::identity(2), &symplectic()).unwrap());
        assert!(is_in_hm(&u, &symplectic()).unwrap());
        let id = BilinearForm::new(QMatrix::identity(2)).unwrap();
        assert!(!is_in_hm(&u, &id).unwrap());
        assert!(is_in_hm(&QMatrix::identity(3), &id).is_err());
    }

    #[test]
    fn symmetry_detection() {
        assert_eq!(symplectic().symmetry(), Symmetry::Skew);
        assert_eq!(BilinearForm::new(QMatrix::identity(2)).unwrap().symmetry(), Symmetry::Symmetric);
        let m = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        assert_eq!(BilinearForm::new(m).unwrap().symmetry(), Symmetry::Neither);
        assert!(BilinearForm::new(QMatrix::from_ints(&[[1, 1], [1, 1]])).is_err());
    }

    #[test]
    fn action_matrix_examples() {
        assert!(kron_action_matrix(&QMatrix::identity(2)).unwrap().mat.is_identity());
        let c = QMatrix::diagonal(&[rat(2), rat(3)]);
        let k = kron_action_matrix(&c).unwrap();
        assert_eq!(k.mat, QMatrix::diagonal(&[rat(4), rat(6), rat(6), rat(9)]));
        let x = QMatrix::from_ints(&[[1, 2], [3, 4]]);
        let c = QMatrix::from_ints(&[[1, -1], [2, 5]]);
        let k = kron_action_matrix(&c).unwrap();
        assert_eq!(k.apply(&x.vectorize()), (&(&c * &x) * &c.transpose()).vectorize());
    }

    #[test]
    fn orbit_reduction_examples() {
        let t = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let p0 = QMatrix::from_ints(&[[1, 0], [1, 1]]);
        let t_hat = &(&p0 * &t) * &p0.inverse().unwrap();
        let (v, w) = reduce_to_orbit(&t, &t_hat, &symplectic(), &p0).unwrap();
        assert_eq!(v, w);

        let id = BilinearForm::new(QMatrix::identity(2)).unwrap();
        let p0 = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let t_hat = &(&p0 * &t) * &p0.inverse().unwrap();
        let (_, w) = reduce_to_orbit(&t, &t_hat, &id, &p0).unwrap();
        assert_eq!(w, QMatrix::from_ints(&[[2, -1], [-1, 1]]).vectorize());

        let bad = QMatrix::from_ints(&[[2, 0], [0, 1]]);
        assert!(reduce_to_orbit(&t, &t, &id, &bad).is_err());
    }
}
