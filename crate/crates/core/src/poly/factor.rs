//! Irreducible factorization over ℤ: squarefree decomposition, Berlekamp
//! modulo a good prime, quadratic Hensel lifting, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, Fp};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// `unit · content · ∏ πᵢ^{mᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: i8,
    pub content: BigInt,
    pub factors: Vec<(ZPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> ZPoly {
        let mut acc = ZPoly::new(vec![BigInt::from(self.unit) * &self.content]);
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn multiplicity_of(&self, p: &ZPoly) -> u32 {
        self.factors.iter().find(|(f, _)| f == p).map_or(0, |(_, m)| *m)
    }
}

/// Primitive gcd with positive leading coefficient.
pub fn poly_gcd(p: &ZPoly, q: &ZPoly) -> ZPoly {
    p.to_rational().gcd(&q.to_rational()).primitive_integer()
}

/// Yun decomposition of the primitive part: pairwise coprime squarefree parts
/// with their multiplicities, in increasing multiplicity.
pub fn squarefree_decomposition(p: &ZPoly) -> Result<Vec<(ZPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.to_rational();
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let bn = b.div_rem(&a).0;
        let cn = d.div_rem(&a).0;
        d = &cn - &bn.derivative();
        if a.deg() > 0 {
            out.push((a.primitive_integer(), i));
        }
        b = bn;
        i += 1;
    }
    Ok(out)
}

/// Complete factorization into irreducibles over ℤ.
pub fn factor_z(p: &ZPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit: i8 = if p.leading().is_negative() { -1 } else { 1 };
    let content = p.content();
    let mut factors = Vec::new();
    for (part, m) in squarefree_decomposition(p)? {
        for g in factor_squarefree(&part) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let out = Factorization { unit, content, factors };
    debug_assert_eq!(out.expand(), *p);
    Ok(out)
}

fn to_fp(f: &ZPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::normalize(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime not dividing the leading coefficient or the discriminant.
fn good_prime(f: &ZPoly) -> u64 {
    let lc = f.leading();
    (2u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fp = to_fp(f, p);
            let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
            g.len() == 1
        })
        .expect("a good prime exists for a squarefree polynomial")
}

/// Bound on coefficients of `lc(f)·g` for any divisor `g` of `f`.
fn factor_coefficient_bound(f: &ZPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    (BigInt::one() << f.deg()) * norm * f.leading().abs()
}

fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = f.primitive_part();
    if f.deg() <= 1 {
        return vec![f];
    }
    let p = good_prime(&f);
    let fp = to_fp(&f, p);
    let modular = modp::berlekamp(&modp::monic(&fp, p), p);
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = factor_coefficient_bound(&f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(&f, &modular, p, &modulus);
    recombine(f, lifted, &modulus)
}

// ---------- arithmetic in (ℤ/m)[x] with BigInt coefficients ----------

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn add_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn sub_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rem = reduce(a, m);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    (reduce(&q, m), reduce(&rem, m))
}

fn lift_fp(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts a monic factorization `F ≡ G·H (mod p)` to modulus `target`
/// by quadratic Hensel steps.
fn hensel_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, target: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_fp(g), lift_fp(h), lift_fp(&s), lift_fp(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = sub_m(f, &mul_m(&g, &h, &m2), &m2);
        let (q, r) = divrem_monic_m(&mul_m(&s, &e, &m2), &h, &m2);
        let g_new = add_m(&add_m(&g, &mul_m(&t, &e, &m2), &m2), &mul_m(&q, &g, &m2), &m2);
        let h_new = add_m(&h, &r, &m2);
        let b = sub_m(&add_m(&mul_m(&s, &g_new, &m2), &mul_m(&t, &h_new, &m2), &m2), &[BigInt::one()], &m2);
        let (c, d) = divrem_monic_m(&mul_m(&s, &b, &m2), &h_new, &m2);
        s = sub_m(&s, &d, &m2);
        t = sub_m(&sub_m(&t, &mul_m(&t, &b, &m2), &m2), &mul_m(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (reduce(&g, target), reduce(&h, target))
}

fn product_fp(fs: &[Fp], p: u64) -> Fp {
    fs.iter().fold(vec![1u64], |acc, f| modp::mul(&acc, f, p))
}

/// Lifts the monic modular factors of `f / lc(f)` to modulus `target`.
fn hensel_lift(f: &ZPoly, factors: &[Fp], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    // monic F = f / lc mod target
    let lc = f.leading();
    let inv = mod_inverse(&lc, target);
    let monic_f = reduce(&f.coeffs().iter().map(|c| c * &inv).collect::<Vec<_>>(), target);
    lift_tree(&monic_f, factors, p, target)
}

fn lift_tree(f: &[BigInt], factors: &[Fp], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![reduce(f, target)];
    }
    let mid = factors.len() / 2;
    let g = product_fp(&factors[..mid], p);
    let h = product_fp(&factors[mid..], p);
    let (gl, hl) = hensel_pair(f, &g, &h, p, target);
    let mut out = lift_tree(&gl, &factors[..mid], p, target);
    out.extend(lift_tree(&hl, &factors[mid..], p, target));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.mod_floor(m).extended_gcd(m);
    assert!(eg.gcd.is_one(), "leading coefficient not invertible modulo p^k");
    eg.x.mod_floor(m)
}

fn symmetric(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ZPoly::new(
        v.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Subset recombination of lifted factors.
fn recombine(mut f: ZPoly, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut progressed = false;
        for subset in subsets(lifted.len(), size) {
            let lc = f.leading();
            let mut g: Vec<BigInt> = vec![lc.clone()];
            for &i in &subset {
                g = mul_m(&g, &lifted[i], modulus);
            }
            let candidate = symmetric(&g, modulus).primitive_part();
            if candidate.deg() == 0 {
                continue;
            }
            if let Some(q) = f.div_exact(&candidate) {
                found.push(candidate);
                f = q.primitive_part();
                let keep: Vec<Vec<BigInt>> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                lifted = keep;
                progressed = true;
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if f.deg() > 0 {
        found.push(f);
    }
    found
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        let p = zp(&[-2, 4, -2]);
        assert_eq!(poly_gcd(&p, &ZPoly::zero()), zp(&[1, -2, 1]));
        assert_eq!(poly_gcd(&zp(&[-1, 0, 1]), &zp(&[-1, 1])), zp(&[-1, 1]));
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = &(&zp(&[-1, 1]) * &zp(&[-1, 1])) * &zp(&[2, 1]);
        let b = &zp(&[-1, 1]) * &zp(&[3, 1]);
        assert_eq!(poly_gcd(&a, &b), zp(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decomposition(&zp(&[-1, 1])).unwrap(), vec![(zp(&[-1, 1]), 1)]);
        let p = &(&zp(&[-1, 1]) * &zp(&[-1, 1])) * &zp(&[1, 1]);
        assert_eq!(squarefree_decomposition(&p).unwrap(), vec![(zp(&[1, 1]), 1), (zp(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decomposition(&ZPoly::x_pow(4)).unwrap(), vec![(zp(&[0, 1]), 4)]);
        assert_eq!(squarefree_decomposition(&ZPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_examples() {
        let f = factor_z(&zp(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(zp(&[1, 0, 1]), 1)]);
        let f = factor_z(&zp(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(zp(&[-1, 1]), 1), (zp(&[1, 1]), 1)]);
        let p = &zp(&[1, 0, 1]) * &zp(&[4, -4, 1]);
        let f = factor_z(&p).unwrap();
        assert_eq!(f.factors, vec![(zp(&[-2, 1]), 2), (zp(&[1, 0, 1]), 1)]);
        assert_eq!(factor_z(&ZPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_needs_recombination() {
        // x^4 + 1 is irreducible over ℤ but splits modulo every prime
        let f = factor_z(&zp(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(zp(&[1, 0, 0, 0, 1]), 1)]);
        // x^4 - 10x^2 + 1 likewise
        let f = factor_z(&zp(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn factor_non_monic_and_content() {
        // -6 (2x - 1)(3x + 2) (x^2 + x + 1)
        let p = &(&zp(&[-1, 2]) * &zp(&[2, 3])) * &zp(&[1, 1, 1]);
        let p = p.scale(&BigInt::from(-6));
        let f = factor_z(&p).unwrap();
        assert_eq!(f.unit, -1);
        assert_eq!(f.content, BigInt::from(6));
        assert_eq!(f.factors, vec![(zp(&[-1, 2]), 1), (zp(&[2, 3]), 1), (zp(&[1, 1, 1]), 1)]);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn factor_cyclotomic_product() {
        // x^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_z(&zp(&c)).unwrap();
        assert_eq!(f.factors.len(), 6);
        assert!(f.factors.iter().all(|(_, m)| *m == 1));
        assert_eq!(f.expand(), zp(&c));
    }
}
