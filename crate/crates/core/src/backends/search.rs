use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Decision3, Exhausted, GeneratingSet, SearchConfig};
use crate::error::{Error, Result};
use crate::linalg::{integer_solution_lattice, min_poly, IntLattice, QMatrix, Rational};
use crate::par;

use super::filters::nonconjugacy_filters;

const CHUNK: usize = 4096;

/// Visits every coefficient vector of length `rank` with entries in
/// `[-bound, bound]`, ordered by L1 norm and lexicographically within a norm.
/// Stops early when `visit` breaks.
pub fn graded_coefficients(rank: usize, bound: u32, mut visit: impl FnMut(&[i64]) -> ControlFlow<()>) {
    let b = bound as i64;
    let mut cur = vec![0i64; rank];
    for grade in 0..=(rank as i64 * b) {
        if fill(&mut cur, 0, grade, b, &mut visit).is_break() {
            return;
        }
    }
}

fn fill(cur: &mut [i64], i: usize, remaining: i64, b: i64, visit: &mut impl FnMut(&[i64]) -> ControlFlow<()>) -> ControlFlow<()> {
    if i == cur.len() {
        return if remaining == 0 { visit(cur) } else { ControlFlow::Continue(()) };
    }
    let rest = (cur.len() - i - 1) as i64 * b;
    let lo = remaining.min(b);
    for c in -lo..=lo {
        let left = remaining - c.abs();
        if left > rest {
            continue;
        }
        cur[i] = c;
        fill(cur, i + 1, left, b, visit)?;
    }
    ControlFlow::Continue(())
}

/// Lattice of integer `P` with `P·T = T̂·P`, as column-major `vec(P)`.
pub fn conjugator_lattice(t: &QMatrix, t_hat: &QMatrix) -> IntLattice {
    let n = t.rows();
    let id = QMatrix::identity(n);
    let system = &t.transpose().kron(&id) - &id.kron(t_hat);
    integer_solution_lattice(&system)
}

/// Lattice of integer `X` commuting with `T`.
pub fn centralizer_lattice(t: &QMatrix) -> IntLattice {
    conjugator_lattice(t, t)
}

fn int_det(m: &[BigInt], n: usize) -> BigInt {
    // Bareiss on a column-major copy; the determinant of the transpose is the same.
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else { return BigInt::zero() };
            for j in 0..n {
                a.swap(r * n + j, k * n + j);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v.div_floor(&prev);
            }
        }
        prev = a[k * n + k].clone();
    }
    if sign {
        -prev
    } else {
        prev
    }
}

fn to_matrix(n: usize, v: &[BigInt]) -> QMatrix {
    let data: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
    QMatrix::unvectorize(n, n, &data).expect("vector length n*n")
}

/// Walks the graded enumeration in chunks, handing each chunk of unimodular
/// lattice points (in order) to `on_chunk`. Returns whether the candidate cap
/// cut the walk short.
fn scan_unimodular(
    basis: &[Vec<BigInt>],
    n: usize,
    cfg: &SearchConfig,
    mut on_chunk: impl FnMut(Vec<QMatrix>) -> ControlFlow<()>,
) -> bool {
    let mut buf: Vec<Vec<i64>> = Vec::with_capacity(CHUNK);
    let mut seen = 0usize;
    let mut capped = false;
    let mut stopped = false;
    let mut flush = |buf: &mut Vec<Vec<i64>>| -> ControlFlow<()> {
        let hits: Vec<Option<QMatrix>> = par::map(buf, |c| {
            let v = IntLattice::combine(basis, c);
            int_det(&v, n).abs().is_one().then(|| to_matrix(n, &v))
        });
        buf.clear();
        on_chunk(hits.into_iter().flatten().collect())
    };
    graded_coefficients(basis.len(), cfg.coeff_bound, |c| {
        if seen == cfg.max_candidates {
            capped = true;
            return ControlFlow::Break(());
        }
        seen += 1;
        buf.push(c.to_vec());
        if buf.len() == CHUNK && flush(&mut buf).is_break() {
            stopped = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if !stopped && !buf.is_empty() {
        let _ = flush(&mut buf);
    }
    capped
}

fn check_pair(t: &QMatrix, t_hat: &QMatrix) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    if t_hat.rows() != t.rows() || t_hat.cols() != t.cols() {
        return Err(Error::DimensionMismatch { expected: t.rows(), found: t_hat.rows() });
    }
    Ok(())
}

/// Bounded search for `P ∈ GL(n, ℤ)` with `P·T·P⁻¹ = T̂`.
///
/// Invariant filters run first and are the only source of `No`. Otherwise
/// the LLL-reduced basis of the conjugator lattice is enumerated in graded
/// order and the first unimodular point is returned.
pub fn conjugate_glnz(t: &QMatrix, t_hat: &QMatrix, cfg: &SearchConfig) -> Result<Decision3<QMatrix>> {
    check_pair(t, t_hat)?;
    if t.det()?.is_zero() || t_hat.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let n = t.rows();
    if t == t_hat {
        return Ok(Decision3::Yes(QMatrix::identity(n)));
    }
    if let Some(cert) = nonconjugacy_filters(t, t_hat, cfg)? {
        return Ok(Decision3::No(cert));
    }
    let basis = conjugator_lattice(t, t_hat).reduced_basis();
    let mut found = None;
    let capped = scan_unimodular(&basis, n, cfg, |hits| match hits.into_iter().next() {
        Some(p) => {
            found = Some(p);
            ControlFlow::Break(())
        }
        None => ControlFlow::Continue(()),
    });
    if let Some(p) = found {
        let lhs = &(&p * t) * &p.inverse()?;
        assert!(lhs == *t_hat && p.is_unimodular(), "conjugator failed verification");
        return Ok(Decision3::Yes(p));
    }
    let reason = if capped {
        format!("candidate cap {} reached", cfg.max_candidates)
    } else {
        format!("no unimodular conjugator with coefficients within {}", cfg.coeff_bound)
    };
    Ok(Decision3::Unknown(Exhausted { config: Some(cfg.clone()), depth: None, reason }))
}

/// Unimodular integer matrices commuting with `T`, found by bounded
/// enumeration of the centralizer lattice, in enumeration order.
///
/// `complete` is set only for scalar `T` (standard generators of GL(n, ℤ)
/// are added) and for `n = 2` with irreducible `χ = μ` of negative
/// discriminant when the bound covers every unit of the definite norm form.
pub fn centralizer_gens_z(t: &QMatrix, cfg: &SearchConfig) -> Result<GeneratingSet> {
    check_pair(t, t)?;
    let n = t.rows();
    let basis = centralizer_lattice(t).reduced_basis();
    let mut elements = Vec::new();
    let mut seen = HashSet::new();
    let scalar = t.is_square() && (0..n).all(|i| (0..n).all(|j| if i == j { t[(i, j)] == t[(0, 0)] } else { t[(i, j)].is_zero() }));
    if scalar {
        for g in glnz_generators(n) {
            if seen.insert(g.clone()) {
                elements.push(g);
            }
        }
    }
    scan_unimodular(&basis, n, cfg, |hits| {
        for h in hits {
            if seen.insert(h.clone()) {
                elements.push(h);
            }
        }
        ControlFlow::Continue(())
    });
    for g in &elements {
        assert!(g.is_unimodular() && (g * t) == (t * g), "centralizer element failed verification");
    }
    let complete = scalar || (n == 2 && definite_units_covered(t, &basis, cfg.coeff_bound)?);
    Ok(GeneratingSet { elements, complete })
}

/// Transvections `I + E_ij` and the sign change `diag(-1, 1, …)`.
fn glnz_generators(n: usize) -> Vec<QMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = QMatrix::identity(n);
                e[(i, j)] = Rational::one();
                out.push(e);
            }
        }
    }
    let mut s = QMatrix::identity(n);
    if n > 0 {
        s[(0, 0)] = -Rational::one();
    }
    out.push(s);
    out
}

/// For `n = 2` with `χ = μ` irreducible of negative discriminant, the
/// centralizer lattice is rank 2 and `det(x·B₁ + y·B₂)` is a positive
/// definite binary form `a x² + b xy + c y²`. Every unit satisfies
/// `|x| ≤ √(4c/D)`, `|y| ≤ √(4a/D)` with `D = 4ac − b²`.
fn definite_units_covered(t: &QMatrix, basis: &[Vec<BigInt>], bound: u32) -> Result<bool> {
    let mu = min_poly(t)?;
    let c = mu.primitive.coeffs();
    if c.len() != 3 {
        return Ok(false);
    }
    let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2];
    if !disc.is_negative() || basis.len() != 2 {
        return Ok(false);
    }
    let q = |x: i64, y: i64| int_det(&IntLattice::combine(basis, &[x, y]), 2);
    let a = q(1, 0);
    let cc = q(0, 1);
    let b = q(1, 1) - &a - &cc;
    let d = BigInt::from(4) * &a * &cc - &b * &b;
    if !d.is_positive() || !a.is_positive() {
        return Ok(false);
    }
    let xmax = (BigInt::from(4) * &cc / &d).sqrt();
    let ymax = (BigInt::from(4) * &a / &d).sqrt();
    let need = xmax.max(ymax).to_u64().unwrap_or(u64::MAX);
    Ok(bound as u64 >= need)
}
