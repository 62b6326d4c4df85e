//! Explicit centralizer witnesses for matrices with rational spectrum.
//!
//! All constructions work in a rational Jordan basis and are transported back
//! by exact conjugation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, QMatrix, Rational, Subspace};
use crate::spectral::rational_eigenvalues;

/// `V` with `V·T·V⁻¹ = J`, `J` block diagonal of upper Jordan blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalJordanBasis {
    pub v: QMatrix,
    /// `V⁻¹`; its columns are the Jordan basis vectors.
    pub v_inv: QMatrix,
    /// `(λ, size)` per block, in the order the blocks appear in `J`.
    pub layout: Vec<(Rational, usize)>,
    pub jordan: QMatrix,
}

impl RationalJordanBasis {
    /// Offset of each block in `J`.
    pub fn offsets(&self) -> Vec<usize> {
        self.layout
            .iter()
            .scan(0, |acc, (_, s)| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    }

    /// Conjugates a matrix given in Jordan coordinates back to the original basis.
    pub fn transport(&self, x: &QMatrix) -> QMatrix {
        &(&self.v_inv * x) * &self.v
    }
}

/// `J_r(λ)`: λ on the diagonal, ones on the superdiagonal.
pub fn jordan_block(lambda: &Rational, size: usize) -> QMatrix {
    QMatrix::from_fn(size, size, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn shifted(t: &QMatrix, lambda: &Rational) -> QMatrix {
    let mut n = t.clone();
    for i in 0..t.rows() {
        n[(i, i)] -= lambda;
    }
    n
}

fn rank_of(vectors: &[Vec<Rational>], dim: usize) -> usize {
    if vectors.is_empty() {
        0
    } else {
        QMatrix::from_rows(dim, vectors).rank()
    }
}

/// Rational Jordan basis; eigenvalues in (numerator, denominator) order,
/// block sizes non-increasing within each eigenvalue.
pub fn rational_jordan_basis(t: &QMatrix) -> Result<RationalJordanBasis> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let n = t.rows();
    let eigen = rational_eigenvalues(t)?.ok_or(Error::NonRationalSpectrum)?;
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut layout = Vec::new();
    for (lambda, mult) in eigen {
        let nil = shifted(t, &lambda);
        // kernels[j] = ker N^j
        let mut kernels = vec![Subspace::zero(n)];
        let mut power = QMatrix::identity(n);
        while kernels.last().unwrap().dim() < mult as usize {
            power = &power * &nil;
            kernels.push(kernel_basis(&power));
        }
        let depth = kernels.len() - 1;
        // chain tops found so far, with their sizes
        let mut chains: Vec<(Vec<Rational>, usize)> = Vec::new();
        for s in (1..=depth).rev() {
            // vectors already accounted for at level s: N^{t-s} v for chains of size t > s
            let mut level: Vec<Vec<Rational>> = kernels[s - 1].basis_vectors();
            for (top, size) in &chains {
                let mut w = top.clone();
                for _ in 0..(size - s) {
                    w = nil.apply(&w);
                }
                level.push(w);
            }
            let mut rank = rank_of(&level, n);
            for cand in kernels[s].basis_vectors() {
                level.push(cand.clone());
                let r = rank_of(&level, n);
                if r > rank {
                    rank = r;
                    chains.push((cand, s));
                } else {
                    level.pop();
                }
            }
        }
        for (top, size) in chains {
            let mut chain = vec![top];
            for _ in 1..size {
                let next = nil.apply(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            layout.push((lambda.clone(), size));
        }
    }
    let v_inv = QMatrix::from_columns(n, &columns);
    let v = v_inv.inverse()?;
    let blocks: Vec<QMatrix> = layout.iter().map(|(l, s)| jordan_block(l, *s)).collect();
    let jordan = QMatrix::block_diagonal(&blocks);
    debug_assert_eq!(&(&v * t) * &v_inv, jordan);
    Ok(RationalJordanBasis { v, v_inv, layout, jordan })
}

/// Basis `f_1, …, f_n` whose prefix spans are preserved by every matrix
/// commuting with `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagBasis {
    pub vectors: QMatrix,
    /// `(k_i, r_i)`: `f_i` first lies in `ker N^{k_i}` and at most in `im N^{r_i}`.
    pub keys: Vec<(usize, usize)>,
    /// `(k, r)` with prefix `i` equal to `ker N^k ∩ im N^r`, when the block
    /// sizes admit a complete flag made only of such intersections
    /// (`[3, 1]` does, `[3, 2, 1]` does not). Otherwise `None`, and prefix
    /// `i` is `ker N^{k_i - 1} + (ker N^{k_i} ∩ im N^{r_i})`.
    pub intersections: Option<Vec<(usize, usize)>>,
}

impl FlagBasis {
    pub fn prefix_span(&self, i: usize) -> Subspace {
        let cols: Vec<Vec<Rational>> = (0..i).map(|j| self.vectors.column(j)).collect();
        Subspace::span(self.vectors.rows(), &cols)
    }
}

/// Centralizer-invariant complete flag for a single eigenvalue `λ` whose
/// Jordan blocks all have distinct sizes.
pub fn flag_basis(t: &QMatrix, lambda: &Rational) -> Result<FlagBasis> {
    let jb = rational_jordan_basis(t)?;
    if jb.layout.iter().any(|(l, _)| l != lambda) {
        return Err(Error::Hypothesis(format!("T must have the single eigenvalue {lambda}")));
    }
    let mut sizes: Vec<usize> = jb.layout.iter().map(|(_, s)| *s).collect();
    sizes.dedup();
    if sizes.len() != jb.layout.len() {
        return Err(Error::Hypothesis("Jordan block sizes must be pairwise distinct".into()));
    }
    let offsets = jb.offsets();
    let sizes: Vec<usize> = jb.layout.iter().map(|(_, s)| *s).collect();
    let column = |block: usize, pos: usize| jb.v_inv.column(offsets[block] + pos - 1);
    let n = t.rows();
    if let Some(chain) = intersection_chain(&sizes) {
        let mut counts = vec![0; sizes.len()];
        let mut cols = Vec::with_capacity(n);
        let mut keys = Vec::with_capacity(n);
        let mut layers = Vec::with_capacity(n);
        for (m, kr) in chain {
            let b = (0..sizes.len()).find(|&b| m[b] != counts[b]).expect("chain step adds one vector");
            counts[b] += 1;
            cols.push(column(b, counts[b]));
            keys.push((counts[b], sizes[b] - counts[b]));
            layers.push(kr);
        }
        return Ok(FlagBasis { vectors: QMatrix::from_columns(n, &cols), keys, intersections: Some(layers) });
    }
    let mut keyed: Vec<((usize, usize), Vec<Rational>)> = Vec::with_capacity(n);
    for (b, size) in sizes.iter().enumerate() {
        for k in 1..=*size {
            keyed.push(((k, size - k), column(b, k)));
        }
    }
    // lexicographic on (k, -r)
    keyed.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then(b.0 .1.cmp(&a.0 .1)));
    let (keys, cols): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();
    Ok(FlagBasis { vectors: QMatrix::from_columns(n, &cols), keys, intersections: None })
}

/// In Jordan coordinates `ker N^k ∩ im N^r` keeps the first `min(k, s - r)`
/// chain vectors of each block of size `s`. Searches for a chain of these
/// count vectors growing by one vector per step.
type Chain = Vec<(Vec<usize>, (usize, usize))>;

fn intersection_chain(sizes: &[usize]) -> Option<Chain> {
    let top = sizes.iter().copied().max().unwrap_or(0);
    let mut layers: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for k in 1..=top {
        for r in (0..top).rev() {
            let m: Vec<usize> = sizes.iter().map(|&s| k.min(s.saturating_sub(r))).collect();
            layers.entry(m).or_insert((k, r));
        }
    }
    fn walk(
        at: &[usize],
        sizes: &[usize],
        layers: &BTreeMap<Vec<usize>, (usize, usize)>,
        dead: &mut BTreeSet<Vec<usize>>,
        path: &mut Chain,
    ) -> bool {
        if at == sizes {
            return true;
        }
        for b in 0..sizes.len() {
            if at[b] == sizes[b] {
                continue;
            }
            let mut next = at.to_vec();
            next[b] += 1;
            let Some(kr) = layers.get(&next) else { continue };
            if dead.contains(&next) {
                continue;
            }
            path.push((next.clone(), *kr));
            if walk(&next, sizes, layers, dead, path) {
                return true;
            }
            path.pop();
            dead.insert(next);
        }
        false
    }
    let mut path = Vec::new();
    walk(&vec![0; sizes.len()], sizes, &layers, &mut BTreeSet::new(), &mut path).then_some(path)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub a: QMatrix,
    pub b: QMatrix,
    pub eigenvalue: Rational,
    /// Sizes `(r, k)` of the two blocks used, `r ≥ k`.
    pub sizes: (usize, usize),
}

/// The rectangular block `I_{p,q}`: `(0 | I_p)` when `p ≤ q`, `(I_q ; 0)` when `p ≥ q`.
pub fn rect_identity(p: usize, q: usize) -> QMatrix {
    QMatrix::from_fn(p, q, |i, j| {
        let hit = if p <= q { j == i + (q - p) } else { i == j };
        if hit {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Two non-commuting unipotent elements of the centralizer of `T`, built
/// from the first eigenvalue carrying at least two Jordan blocks.
pub fn noncommuting_pair(t: &QMatrix) -> Result<WitnessPair> {
    let jb = rational_jordan_basis(t)?;
    let offsets = jb.offsets();
    let idx = (0..jb.layout.len().saturating_sub(1))
        .find(|&i| jb.layout[i].0 == jb.layout[i + 1].0)
        .ok_or_else(|| Error::Hypothesis("every eigenvalue has a single Jordan block".into()))?;
    let (r, k) = (jb.layout[idx].1, jb.layout[idx + 1].1);
    let (o_r, o_k) = (offsets[idx], offsets[idx + 1]);
    let n = t.rows();
    let mut a = QMatrix::identity(n);
    a.set_block(o_r, o_k, &rect_identity(r, k));
    let mut b = QMatrix::identity(n);
    b.set_block(o_k, o_r, &rect_identity(k, r));
    Ok(WitnessPair { a: jb.transport(&a), b: jb.transport(&b), eigenvalue: jb.layout[idx].0.clone(), sizes: (r, k) })
}

/// Embedding of GL(2, ℚ) into the centralizer of `T`, acting on two Jordan
/// blocks of equal size for the same eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Embedding {
    pub basis: RationalJordanBasis,
    pub block_size: usize,
    pub offsets: (usize, usize),
}

impl Gl2Embedding {
    /// Image of `[[a, b], [c, d]]`.
    pub fn embed(&self, g: &QMatrix) -> Result<QMatrix> {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: g.rows() });
        }
        let n = self.basis.v.rows();
        let s = self.block_size;
        let (o1, o2) = self.offsets;
        let mut x = QMatrix::identity(n);
        let id = QMatrix::identity(s);
        x.set_block(o1, o1, &id.scale(&g[(0, 0)]));
        x.set_block(o1, o2, &id.scale(&g[(0, 1)]));
        x.set_block(o2, o1, &id.scale(&g[(1, 0)]));
        x.set_block(o2, o2, &id.scale(&g[(1, 1)]));
        Ok(self.basis.transport(&x))
    }
}

pub fn gl2_embedding(t: &QMatrix) -> Result<Gl2Embedding> {
    let basis = rational_jordan_basis(t)?;
    let offsets = basis.offsets();
    let idx = (0..basis.layout.len().saturating_sub(1))
        .find(|&i| basis.layout[i] == basis.layout[i + 1])
        .ok_or_else(|| Error::Hypothesis("no eigenvalue has two Jordan blocks of equal size".into()))?;
    let block_size = basis.layout[idx].1;
    let offsets = (offsets[idx], offsets[idx + 1]);
    Ok(Gl2Embedding { basis, block_size, offsets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{image_basis, rat};

    fn jordan(l: i64, sizes: &[usize]) -> QMatrix {
        let blocks: Vec<QMatrix> = sizes.iter().map(|&s| jordan_block(&rat(l), s)).collect();
        QMatrix::block_diagonal(&blocks)
    }

    fn unit(n: usize, i: usize, j: usize) -> QMatrix {
        let mut m = QMatrix::identity(n);
        m[(i, j)] = rat(1);
        m
    }

    #[test]
    fn jordan_basis_examples() {
        let d = QMatrix::diagonal(&[rat(1), rat(2)]);
        let jb = rational_jordan_basis(&d).unwrap();
        assert_eq!(jb.v, QMatrix::identity(2));
        assert_eq!(jb.layout, vec![(rat(1), 1), (rat(2), 1)]);

        let jb = rational_jordan_basis(&QMatrix::from_ints(&[[1, 1], [0, 1]])).unwrap();
        assert_eq!(jb.layout, vec![(rat(1), 2)]);

        // N = T - 3I has rank 2 and N² = E₃₂ ≠ 0: one block of size 3
        let t = QMatrix::from_ints(&[[3, 1, 0], [0, 3, 0], [1, 0, 3]]);
        let jb = rational_jordan_basis(&t).unwrap();
        assert_eq!(jb.layout, vec![(rat(3), 3)]);
        assert_eq!(&(&jb.v * &t) * &jb.v_inv, jb.jordan);

        // N = E₁₂ + E₁₃ has rank 1 and N² = 0: blocks 2, 1
        let t = QMatrix::from_ints(&[[3, 1, 1], [0, 3, 0], [0, 0, 3]]);
        let jb = rational_jordan_basis(&t).unwrap();
        assert_eq!(jb.layout, vec![(rat(3), 2), (rat(3), 1)]);
        assert_eq!(&(&jb.v * &t) * &jb.v_inv, jb.jordan);
        assert_eq!(jb.transport(&jb.jordan), t);
    }

    #[test]
    fn jordan_basis_rejects_irrational() {
        let t = QMatrix::from_ints(&[[0, -1], [1, 0]]);
        assert_eq!(rational_jordan_basis(&t), Err(Error::NonRationalSpectrum));
    }

    #[test]
    fn flag_examples() {
        let f = flag_basis(&jordan(5, &[1]), &rat(5)).unwrap();
        assert_eq!(f.vectors, QMatrix::identity(1));

        let t = jordan(0, &[2, 1]);
        let f = flag_basis(&t, &rat(0)).unwrap();
        assert_eq!(f.keys, vec![(1, 1), (1, 0), (2, 0)]);
        let expected = QMatrix::from_ints(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        assert_eq!(f.vectors, expected);

        let t = jordan(0, &[3, 1]);
        let f = flag_basis(&t, &rat(0)).unwrap();
        let n2 = &t * &t;
        let first = kernel_basis(&t).intersect(&image_basis(&n2)).unwrap();
        assert_eq!(f.prefix_span(1), first);
        assert_eq!((1..=4).map(|i| f.prefix_span(i).dim()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }

    fn layer(t: &QMatrix, k: usize, r: usize) -> Subspace {
        kernel_basis(&t.pow(k as u32)).intersect(&image_basis(&t.pow(r as u32))).unwrap()
    }

    #[test]
    fn flag_prefixes_are_intersections_when_possible() {
        let t = jordan(0, &[3, 1]);
        let f = flag_basis(&t, &rat(0)).unwrap();
        let layers = f.intersections.clone().unwrap();
        for (i, &(k, r)) in layers.iter().enumerate() {
            assert_eq!(f.prefix_span(i + 1), layer(&t, k, r));
        }
    }

    #[test]
    fn flag_prefixes_are_kernel_plus_layer() {
        let t = jordan(0, &[3, 2, 1]);
        let f = flag_basis(&t, &rat(0)).unwrap();
        assert!(f.intersections.is_none());
        for (i, &(k, r)) in f.keys.iter().enumerate() {
            let below = kernel_basis(&t.pow(k as u32 - 1));
            assert_eq!(f.prefix_span(i + 1), below.sum(&layer(&t, k, r)).unwrap());
        }
        // no intersection has dimension 4
        let dims: BTreeSet<usize> = (0..=3).flat_map(|k| (0..=3).map(move |r| (k, r))).map(|(k, r)| layer(&t, k, r).dim()).collect();
        assert!(!dims.contains(&4));
    }

    #[test]
    fn flag_rejects_repeated_sizes() {
        assert!(matches!(flag_basis(&QMatrix::identity(2), &rat(1)), Err(Error::Hypothesis(_))));
        let two_eigen = QMatrix::diagonal(&[rat(1), rat(2)]);
        assert!(matches!(flag_basis(&two_eigen, &rat(1)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn pair_examples() {
        for l in [1, -3, 7] {
            let w = noncommuting_pair(&jordan(l, &[2, 1])).unwrap();
            assert_eq!(w.a, unit(3, 0, 2));
            assert_eq!(w.b, unit(3, 2, 1));
            let comm = &(&w.a * &w.b) - &(&w.b * &w.a);
            let mut e12 = QMatrix::zeros(3, 3);
            e12[(0, 1)] = rat(1);
            assert_eq!(comm, e12);
        }
        let w = noncommuting_pair(&QMatrix::identity(2)).unwrap();
        assert_eq!(w.a, QMatrix::from_ints(&[[1, 1], [0, 1]]));
        assert_eq!(w.b, QMatrix::from_ints(&[[1, 0], [1, 1]]));

        let t = jordan(2, &[3, 2]);
        let w = noncommuting_pair(&t).unwrap();
        assert_eq!(w.sizes, (3, 2));
        assert_eq!(&w.a * &t, &t * &w.a);
        assert_eq!(&w.b * &t, &t * &w.b);
        assert_ne!(&w.a * &w.b, &w.b * &w.a);
    }

    #[test]
    fn pair_needs_two_blocks() {
        assert!(matches!(noncommuting_pair(&jordan(1, &[3])), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn rect_identity_shapes() {
        assert_eq!(rect_identity(2, 1), QMatrix::from_ints(&[[1], [0]]));
        assert_eq!(rect_identity(1, 2), QMatrix::from_ints(&[[0, 1]]));
        assert_eq!(rect_identity(2, 2), QMatrix::identity(2));
    }

    #[test]
    fn embedding_examples() {
        let e = gl2_embedding(&QMatrix::identity(2)).unwrap();
        let g = QMatrix::from_ints(&[[2, 3], [5, 7]]);
        assert_eq!(e.embed(&g).unwrap(), g);
        assert_eq!(e.embed(&QMatrix::identity(2)).unwrap(), QMatrix::identity(2));

        let t = jordan(1, &[2, 2]);
        let e = gl2_embedding(&t).unwrap();
        let swap = e.embed(&QMatrix::from_ints(&[[0, 1], [1, 0]])).unwrap();
        let expected = QMatrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(swap, expected);
        assert_eq!(&swap * &t, &t * &swap);
        assert!(matches!(gl2_embedding(&jordan(1, &[2, 1])), Err(Error::Hypothesis(_))));
    }
}
