use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Certificate, SearchConfig};
use crate::error::{Error, Result};
use crate::linalg::{char_poly, min_poly, QMatrix};
use crate::par;

/// Sound negative certificates for GL(n, ℤ)-conjugacy of `T` and `T̂`.
///
/// Checks, in order: determinant, characteristic polynomial, minimal
/// polynomial, then conjugacy over F_p for each configured prime by
/// exhaustive search. `None` proves nothing.
pub fn nonconjugacy_filters(t: &QMatrix, t_hat: &QMatrix, cfg: &SearchConfig) -> Result<Option<Certificate>> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    if t.rows() != t_hat.rows() || t.cols() != t_hat.cols() {
        return Err(Error::DimensionMismatch { expected: t.rows(), found: t_hat.rows() });
    }
    let (d1, d2) = (t.det()?, t_hat.det()?);
    if d1 != d2 {
        return Ok(Some(Certificate::Determinant { left: d1, right: d2 }));
    }
    let (c1, c2) = (char_poly(t)?, char_poly(t_hat)?);
    if c1 != c2 {
        return Ok(Some(Certificate::CharPoly { left: c1, right: c2 }));
    }
    let (m1, m2) = (min_poly(t)?, min_poly(t_hat)?);
    if m1 != m2 {
        return Ok(Some(Certificate::MinPoly { left: m1, right: m2 }));
    }
    let n = t.rows();
    if n > cfg.max_filter_dim {
        return Ok(None);
    }
    for &p in &cfg.filter_primes {
        if p > cfg.max_filter_prime || p < 2 {
            continue;
        }
        let (Some(a), Some(b)) = (reduce_mod(t, p), reduce_mod(t_hat, p)) else { continue };
        if !conjugate_mod_p(&a, &b, n, p) {
            return Ok(Some(Certificate::Modular { prime: p }));
        }
    }
    Ok(None)
}

/// Row-major entries mod `p`, or `None` if some denominator is divisible by `p`.
pub(crate) fn reduce_mod(m: &QMatrix, p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    m.entries()
        .iter()
        .map(|x| {
            let d = x.denom().mod_floor(&pb);
            if d.is_zero() {
                return None;
            }
            let inv = d.modpow(&(&pb - 2u32), &pb);
            Some((x.numer().mod_floor(&pb) * inv).mod_floor(&pb).to_u64().unwrap())
        })
        .collect()
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % p;
            }
        }
    }
    out
}

pub(crate) fn det_mod(m: &[u64], n: usize, p: u64) -> u64 {
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
        if r != c {
            for j in 0..n {
                a.swap(r * n + j, c * n + j);
            }
            det = (p - det) % p;
        }
        let piv = a[c * n + c];
        det = det * piv % p;
        let inv = crate::poly::modp::inv_mod(piv, p);
        for i in c + 1..n {
            let f = a[i * n + c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..n {
                a[i * n + j] = (a[i * n + j] + p * p - f * a[c * n + j] % p) % p;
            }
        }
    }
    det
}

/// Exhaustive search over all `n×n` matrices over F_p for an invertible `P`
/// with `P·A = B·P`.
pub(crate) fn conjugate_mod_p(a: &[u64], b: &[u64], n: usize, p: u64) -> bool {
    let total = (p as usize).pow((n * n) as u32);
    par::find_map_first_range(total, |idx| {
        let mut m = vec![0u64; n * n];
        let mut x = idx;
        for e in m.iter_mut() {
            *e = (x % p as usize) as u64;
            x /= p as usize;
        }
        (mat_mul_mod(&m, a, n, p) == mat_mul_mod(b, &m, n, p) && det_mod(&m, n, p) != 0).then_some(())
    })
    .is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_examples() {
        let cfg = SearchConfig::default();
        let i2 = QMatrix::identity(2);
        let u = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let cert = nonconjugacy_filters(&i2, &u, &cfg).unwrap().unwrap();
        assert_eq!(cert.name(), "min_poly");
        assert_eq!(nonconjugacy_filters(&u, &u, &cfg).unwrap(), None);
        let a = QMatrix::from_ints(&[[1, 0], [0, -1]]);
        let b = QMatrix::from_ints(&[[-1, 0], [0, 1]]);
        assert_eq!(nonconjugacy_filters(&a, &b, &cfg).unwrap(), None);
    }

    #[test]
    fn determinant_and_char_poly_certificates() {
        let cfg = SearchConfig::default();
        let a = QMatrix::from_ints(&[[2, 0], [0, 1]]);
        let b = QMatrix::from_ints(&[[3, 0], [0, 1]]);
        assert_eq!(nonconjugacy_filters(&a, &b, &cfg).unwrap().unwrap().name(), "determinant");
        let c = QMatrix::from_ints(&[[1, 0], [0, 6]]);
        let d = QMatrix::from_ints(&[[2, 0], [0, 3]]);
        assert_eq!(nonconjugacy_filters(&c, &d, &cfg).unwrap().unwrap().name(), "char_poly");
    }

    #[test]
    fn modular_certificate() {
        // [[1,2],[0,1]] and [[1,1],[0,1]] share χ and μ but are not conjugate
        // mod 2 (one is the identity there).
        let cfg = SearchConfig::default();
        let a = QMatrix::from_ints(&[[1, 2], [0, 1]]);
        let b = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        assert_eq!(nonconjugacy_filters(&a, &b, &cfg).unwrap(), Some(Certificate::Modular { prime: 2 }));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let cfg = SearchConfig::default();
        assert!(nonconjugacy_filters(&QMatrix::identity(2), &QMatrix::identity(3), &cfg).is_err());
    }

    #[test]
    fn det_mod_matches_exact() {
        let m = QMatrix::from_ints(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let d = m.det().unwrap().to_integer();
        for p in [2u64, 3, 5, 7] {
            let expected = d.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            assert_eq!(det_mod(&reduce_mod(&m, p).unwrap(), 3, p), expected);
        }
    }
}
