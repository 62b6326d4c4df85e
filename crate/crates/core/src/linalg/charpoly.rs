use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QMatrix, Rational};
use crate::error::{Error, Result};
use crate::poly::{QPoly, ZPolyScaled};

/// Characteristic polynomial `det(xI − T)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(t: &QMatrix) -> Result<ZPolyScaled> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let n = t.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        m = &m * t;
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let tm = t * &m;
        coeffs[n - k] = -tm.trace() / Rational::from_integer(BigInt::from(k));
    }
    Ok(ZPolyScaled::from_rational(&QPoly::new(coeffs)))
}

/// Minimal polynomial: the first linear dependence among vec(I), vec(T), vec(T²), …
pub fn min_poly(t: &QMatrix) -> Result<ZPolyScaled> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let n = t.rows();
    let mut powers = vec![QMatrix::identity(n).vectorize()];
    let mut cur = QMatrix::identity(n);
    for k in 1..=n {
        cur = &cur * t;
        let target = cur.vectorize();
        let span = QMatrix::from_columns(n * n, &powers);
        if let Some(a) = span.solve(&target) {
            let mut coeffs: Vec<Rational> = a.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            debug_assert_eq!(coeffs.len(), k + 1);
            let mu = ZPolyScaled::from_rational(&QPoly::new(coeffs));
            // μ(T) = 0, checked on the primitive representative
            if !mu.primitive.eval_matrix(t).is_zero() {
                return Err(Error::Precondition("minimal polynomial failed verification".into()));
            }
            return Ok(mu);
        }
        powers.push(target);
    }
    unreachable!("Cayley–Hamilton bounds the degree of the minimal polynomial by n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ZPoly;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&QMatrix::identity(2)).unwrap().primitive, zp(&[1, -2, 1]));
        assert_eq!(char_poly(&QMatrix::from_ints(&[[0, -1], [1, 0]])).unwrap().primitive, zp(&[1, 0, 1]));
        let c = zp(&[-2, 0, 0, 1]).companion();
        let chi = char_poly(&c).unwrap();
        assert_eq!(chi.primitive, zp(&[-2, 0, 0, 1]));
        assert!(chi.is_monic());
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(&QMatrix::identity(2)).unwrap().primitive, zp(&[-1, 1]));
        let t = QMatrix::from_ints(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(min_poly(&t).unwrap().primitive, zp(&[1, -2, 1]));
        let c = zp(&[-2, 0, 0, 1]).companion();
        assert_eq!(min_poly(&c).unwrap().primitive, zp(&[-2, 0, 0, 1]));
    }

    #[test]
    fn rational_entries_keep_monic_scale() {
        let t = QMatrix::diagonal(&[crate::linalg::ratio(1, 2), crate::linalg::ratio(1, 3)]);
        let chi = char_poly(&t).unwrap();
        // (x - 1/2)(x - 1/3) = (1/6)(6x² - 5x + 1)
        assert_eq!(chi.primitive, zp(&[1, -5, 6]));
        assert_eq!(chi.scale, crate::linalg::ratio(1, 6));
        assert!(chi.is_monic());
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(char_poly(&QMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }
}
