//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zcent_core::linalg::{rat, ratio};
use zcent_core::poly::ZPoly;
use zcent_core::spectral::{BlockProfile, TitsTag};
use zcent_core::witnesses::jordan_block;
use zcent_core::{QMatrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random product of elementary row operations, swaps and sign changes,
/// with every entry bounded by `max_entry`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, max_entry: i64, steps: usize) -> QMatrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    if n < 2 {
        if rng.gen_bool(0.5) {
            m[0][0] = -1;
        }
        return QMatrix::from_ints(&m);
    }
    let mut done = 0;
    let mut tries = 0;
    while done < steps && tries < 20 * steps {
        tries += 1;
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..6) {
            0 => m.swap(i, j),
            1 => m[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row: Vec<i64> = (0..n).map(|c| m[i][c] + s * m[j][c]).collect();
                if row.iter().any(|x| x.abs() > max_entry) {
                    continue;
                }
                m[i] = row;
            }
        }
        done += 1;
    }
    QMatrix::from_ints(&m)
}

/// Generalized Jordan block over an irreducible monic polynomial:
/// companion blocks on the diagonal, identities above it.
pub fn poly_block(q: &ZPoly, size: usize) -> QMatrix {
    let c = q.companion();
    let d = q.deg();
    let mut out = QMatrix::zeros(d * size, d * size);
    for b in 0..size {
        out.set_block(b * d, b * d, &c);
        if b + 1 < size {
            out.set_block(b * d, (b + 1) * d, &QMatrix::identity(d));
        }
    }
    out
}

/// One planted block: a factor (linear `x − λ` or an irreducible quadratic)
/// and a size.
#[derive(Clone, Debug)]
pub enum Part {
    Linear(Rational, usize),
    Poly(ZPoly, usize),
}

impl Part {
    pub fn factor(&self) -> ZPoly {
        match self {
            Part::Linear(l, _) => ZPoly::new(vec![-l.numer().clone(), l.denom().clone()]).primitive_part(),
            Part::Poly(q, _) => q.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Part::Linear(_, s) | Part::Poly(_, s) => *s,
        }
    }

    pub fn matrix(&self) -> QMatrix {
        match self {
            Part::Linear(l, s) => jordan_block(l, *s),
            Part::Poly(q, s) => poly_block(q, *s),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Part::Linear(_, s) => *s,
            Part::Poly(q, s) => q.deg() * s,
        }
    }
}

pub type Multiset = BTreeMap<String, BTreeMap<usize, usize>>;

pub fn planted_multiset(parts: &[Part]) -> Multiset {
    let mut out = Multiset::new();
    for p in parts {
        *out.entry(p.factor().to_string()).or_default().entry(p.size()).or_insert(0) += 1;
    }
    out
}

pub fn profile_multiset(profile: &BlockProfile) -> Multiset {
    profile.factors.iter().map(|f| (f.factor.to_string(), f.blocks.clone())).collect()
}

/// The class dictated by the block multiset: a repeated size for some factor
/// means a free subgroup, one block per factor means abelian, otherwise
/// polycyclic.
pub fn expected_class(ms: &Multiset) -> TitsTag {
    if ms.values().any(|b| b.values().any(|&c| c >= 2)) {
        TitsTag::ContainsFree
    } else if ms.values().all(|b| b.values().sum::<usize>() == 1) {
        TitsTag::Abelian
    } else {
        TitsTag::Polycyclic
    }
}

pub struct Planted {
    pub t: QMatrix,
    pub parts: Vec<Part>,
    pub conjugator: QMatrix,
}

pub fn plant(rng: &mut ChaCha8Rng, parts: Vec<Part>, max_entry: i64) -> Planted {
    let blocks: Vec<QMatrix> = parts.iter().map(Part::matrix).collect();
    let j = QMatrix::block_diagonal(&blocks);
    let v = random_unimodular(rng, j.rows(), max_entry, 3 * j.rows());
    let t = &(&v * &j) * &v.inverse().unwrap();
    Planted { t, parts, conjugator: v }
}

pub fn eigenvalue_pool() -> Vec<Rational> {
    vec![rat(1), rat(-1), rat(2), rat(-2), ratio(1, 2), rat(3), ratio(-1, 3)]
}

pub fn quadratic_pool() -> Vec<ZPoly> {
    [[1, 0, 1], [1, 1, 1], [-2, 0, 1], [-1, -1, 1], [2, 0, 1], [-3, 0, 1]]
        .iter()
        .map(|c| ZPoly::from_i64(c))
        .collect()
}

/// Random parts filling dimension `n` with rational eigenvalues.
pub fn random_linear_parts(rng: &mut ChaCha8Rng, n: usize) -> Vec<Part> {
    let pool = eigenvalue_pool();
    let k = rng.gen_range(1..=3.min(n));
    let lambdas: Vec<Rational> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left.min(3));
        parts.push(Part::Linear(lambdas[rng.gen_range(0..k)].clone(), s));
        left -= s;
    }
    parts
}

/// Random parts of total dimension `n ≥ 2` containing at least one quadratic block.
pub fn random_quadratic_parts(rng: &mut ChaCha8Rng, n: usize) -> Vec<Part> {
    let qs = quadratic_pool();
    let q = qs[rng.gen_range(0..qs.len())].clone();
    let mut parts = Vec::new();
    let mut left = n;
    let first = rng.gen_range(1..=(n / 2).min(2));
    parts.push(Part::Poly(q.clone(), first));
    left -= 2 * first;
    while left >= 2 && rng.gen_bool(0.6) {
        let s = if left >= 4 && rng.gen_bool(0.3) { 2 } else { 1 };
        parts.push(Part::Poly(q.clone(), s));
        left -= 2 * s;
    }
    parts.extend(random_linear_parts_or_empty(rng, left));
    parts
}

fn random_linear_parts_or_empty(rng: &mut ChaCha8Rng, n: usize) -> Vec<Part> {
    if n == 0 {
        Vec::new()
    } else {
        random_linear_parts(rng, n)
    }
}

/// Determinant by textbook Gaussian elimination with rational pivots.
pub fn oracle_det(m: &QMatrix) -> Rational {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

/// Monic characteristic polynomial `det(xI − T)` (low degree first) by
/// Lagrange interpolation through `n + 1` integer points.
pub fn oracle_char_poly(t: &QMatrix) -> Vec<Rational> {
    let n = t.rows();
    let xs: Vec<Rational> = (0..=n as i64).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let m = &QMatrix::identity(n).scale(x) - t;
            oracle_det(&m)
        })
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &ys[i] / &denom;
        }
    }
    coeffs
}

/// Whether `T` and `T̂` (entries mod `p`) are conjugate in GL(n, F_p), by
/// plain sequential enumeration.
pub fn oracle_conjugate_mod_p(t: &QMatrix, t_hat: &QMatrix, p: i64) -> bool {
    let n = t.rows();
    let red = |m: &QMatrix| -> Vec<i64> {
        m.entries()
            .iter()
            .map(|x| {
                let num = x.numer().to_string().parse::<i64>().unwrap().rem_euclid(p);
                let den = x.denom().to_string().parse::<i64>().unwrap().rem_euclid(p);
                let inv = (1..p).find(|k| k * den % p == 1).unwrap();
                num * inv % p
            })
            .collect()
    };
    let (a, b) = (red(t), red(t_hat));
    let mul = |x: &[i64], y: &[i64]| -> Vec<i64> {
        (0..n * n).map(|ij| (0..n).map(|k| x[ij / n * n + k] * y[k * n + ij % n]).sum::<i64>().rem_euclid(p)).collect()
    };
    let total = (p as usize).pow((n * n) as u32);
    (0..total).any(|idx| {
        let mut x = idx;
        let m: Vec<i64> = (0..n * n)
            .map(|_| {
                let e = (x % p as usize) as i64;
                x /= p as usize;
                e
            })
            .collect();
        let q = QMatrix::from_ints(&m.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>());
        mul(&m, &a) == mul(&b, &m) && oracle_det(&q).numer().to_string().parse::<i64>().unwrap().rem_euclid(p) != 0
    })
}

/// All signed permutation matrices of size `n`: the group O(n, ℤ).
pub fn signed_permutations(n: usize) -> Vec<QMatrix> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..n).filter(|i| !p.contains(i)).map(|i| [p.clone(), vec![i]].concat()).collect::<Vec<_>>())
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1u32 << n) {
            let mut m = vec![vec![0i64; n]; n];
            for (r, &c) in p.iter().enumerate() {
                m[r][c] = if signs >> r & 1 == 1 { -1 } else { 1 };
            }
            out.push(QMatrix::from_ints(&m));
        }
    }
    out
}

/// Closure of a finite set of invertible matrices under multiplication.
pub fn finite_closure(gens: &[QMatrix], limit: usize) -> Option<HashSet<QMatrix>> {
    let n = gens.first()?.rows();
    let mut seen: HashSet<QMatrix> = HashSet::from([QMatrix::identity(n)]);
    let mut frontier = vec![QMatrix::identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen)
}

/// Integer matrices with entries in `[-r, r]`, det ±1, commuting with the
/// integral matrix `t`, by plain i64 enumeration.
pub fn brute_centralizer(t: &QMatrix, r: i64) -> Vec<QMatrix> {
    let n = t.rows();
    let ti: Vec<i64> = t.entries().iter().map(|x| x.to_integer().to_string().parse().unwrap()).collect();
    assert!(t.is_integral());
    let side = (2 * r + 1) as usize;
    let total = side.pow((n * n) as u32);
    let mut out = Vec::new();
    let mut e = vec![0i64; n * n];
    for idx in 0..total {
        let mut x = idx;
        for v in e.iter_mut() {
            *v = (x % side) as i64 - r;
            x /= side;
        }
        let commutes = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs: i64 = (0..n).map(|k| e[i * n + k] * ti[k * n + j]).sum();
                let rhs: i64 = (0..n).map(|k| ti[i * n + k] * e[k * n + j]).sum();
                lhs == rhs
            })
        });
        if !commutes {
            continue;
        }
        let m = QMatrix::from_ints(&e.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>());
        let d = oracle_det(&m);
        if d == rat(1) || d == rat(-1) {
            out.push(m);
        }
    }
    out
}

/// Rank by textbook Gaussian elimination.
pub fn oracle_rank(m: &QMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(r, rank);
        for i in rank + 1..rows {
            let f = &a[i][c] / &a[rank][c];
            for j in c..cols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}
