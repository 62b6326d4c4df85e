//! Jordan block profiles over ℚ and the abelian / free / polycyclic trichotomy.
//!
//! For each irreducible factor π of χ_T the dimensions `d_j = dim ker π(T)^j`
//! are computed exactly. Second differences of that sequence, divided by
//! `deg π`, count Jordan blocks of each size for every root of π, so the
//! profile is recovered without leaving ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, kernel_basis, min_poly, QMatrix, Subspace};
use crate::poly::{factor_z, ZPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFiltration {
    pub factor: ZPoly,
    /// `d_0 = 0, d_1, …, d_s` with `d_s` the stable value.
    pub dims: Vec<usize>,
}

impl KernelFiltration {
    /// `d_j`, extended past stabilization.
    pub fn dim(&self, j: usize) -> usize {
        self.dims.get(j).copied().unwrap_or(*self.dims.last().unwrap())
    }

    /// Index at which the sequence stabilizes.
    pub fn stabilization_index(&self) -> usize {
        self.dims.len() - 1
    }

    /// `(d_j − d_{j−1}) − (d_{j+1} − d_j)` for `j ≥ 1`.
    pub fn second_difference(&self, j: usize) -> usize {
        let a = self.dim(j) - self.dim(j - 1);
        let b = self.dim(j + 1) - self.dim(j);
        a - b
    }
}

/// Per irreducible factor π: number of Jordan blocks of each size, per root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBlocks {
    pub factor: ZPoly,
    /// size → count
    pub blocks: BTreeMap<usize, usize>,
}

impl FactorBlocks {
    pub fn degree(&self) -> usize {
        self.factor.deg()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.values().sum()
    }

    /// Block sizes with repetition, non-increasing.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (&s, &c) in self.blocks.iter().rev() {
            out.extend(std::iter::repeat_n(s, c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProfile {
    pub n: usize,
    pub factors: Vec<FactorBlocks>,
    pub filtrations: Vec<KernelFiltration>,
}

impl BlockProfile {
    /// `Σ_π deg π · Σ_j j·b_j(π)`; equals `n` for a valid profile.
    pub fn total(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.degree() * f.blocks.iter().map(|(s, c)| s * c).sum::<usize>())
            .sum()
    }

    pub fn get(&self, factor: &ZPoly) -> Option<&FactorBlocks> {
        self.factors.iter().find(|f| &f.factor == factor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TitsTag {
    Abelian,
    ContainsFree,
    Polycyclic,
}

impl TitsTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TitsTag::Abelian => "abelian",
            TitsTag::ContainsFree => "contains-free",
            TitsTag::Polycyclic => "polycyclic",
        }
    }
}

impl fmt::Display for TitsTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// χ = μ: one Jordan block per eigenvalue.
    ChiEqualsMu,
    /// Second difference at `size` is at least `2·deg π`, i.e. two or more
    /// blocks of that size per root of `factor`.
    RepeatedBlock { factor: ZPoly, size: usize, second_difference: usize },
    /// Every factor has blocks of pairwise distinct sizes, and `factor` has
    /// at least two of them.
    DistinctSizes { factor: ZPoly, sizes: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsClass {
    pub tag: TitsTag,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub factor: ZPoly,
    pub multiplicity: u32,
    pub subspace: Subspace,
    /// `T` restricted to `subspace`, in the subspace's canonical basis.
    pub restriction: QMatrix,
}

fn require_square(t: &QMatrix) -> Result<()> {
    if t.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare { rows: t.rows(), cols: t.cols() })
    }
}

fn require_invertible(t: &QMatrix) -> Result<()> {
    require_square(t)?;
    if t.det()?.is_zero() {
        Err(Error::Singular)
    } else {
        Ok(())
    }
}

/// `dim ker π(T)^j` for `j = 0, 1, …` up to stabilization.
pub fn kernel_filtration(t: &QMatrix, factor: &ZPoly) -> Result<KernelFiltration> {
    require_square(t)?;
    let n = t.rows();
    let base = factor.eval_matrix(t);
    let mut dims = vec![0usize];
    let mut power = QMatrix::identity(n);
    loop {
        power = &power * &base;
        let d = kernel_basis(&power).dim();
        if d == *dims.last().unwrap() {
            break;
        }
        dims.push(d);
        if d == n {
            break;
        }
    }
    if dims.len() == 1 {
        return Err(Error::NotAFactor(factor.to_string()));
    }
    Ok(KernelFiltration { factor: factor.clone(), dims })
}

/// Jordan profile per irreducible factor of χ_T.
pub fn block_profile(t: &QMatrix) -> Result<BlockProfile> {
    require_invertible(t)?;
    let chi = char_poly(t)?;
    let fac = factor_z(&chi.primitive)?;
    let mut factors = Vec::new();
    let mut filtrations = Vec::new();
    for (pi, _) in &fac.factors {
        let filt = kernel_filtration(t, pi)?;
        let deg = pi.deg();
        let mut blocks = BTreeMap::new();
        for j in 1..=filt.stabilization_index() {
            let sd = filt.second_difference(j);
            debug_assert_eq!(sd % deg, 0);
            if sd > 0 {
                blocks.insert(j, sd / deg);
            }
        }
        factors.push(FactorBlocks { factor: pi.clone(), blocks });
        filtrations.push(filt);
    }
    let profile = BlockProfile { n: t.rows(), factors, filtrations };
    debug_assert_eq!(profile.total(), profile.n);
    Ok(profile)
}

/// Classifies the centralizer of `T` in GL(n, ℤ).
pub fn classify(t: &QMatrix) -> Result<TitsClass> {
    require_invertible(t)?;
    let chi = char_poly(t)?;
    let mu = min_poly(t)?;
    if chi == mu {
        return Ok(TitsClass { tag: TitsTag::Abelian, evidence: Evidence::ChiEqualsMu });
    }
    let profile = block_profile(t)?;
    for filt in &profile.filtrations {
        let deg = filt.factor.deg();
        for j in 1..=filt.stabilization_index() {
            let sd = filt.second_difference(j);
            if sd >= 2 * deg {
                return Ok(TitsClass {
                    tag: TitsTag::ContainsFree,
                    evidence: Evidence::RepeatedBlock { factor: filt.factor.clone(), size: j, second_difference: sd },
                });
            }
        }
    }
    let witness = profile
        .factors
        .iter()
        .find(|f| f.block_count() >= 2)
        .expect("χ ≠ μ forces some factor with two or more blocks");
    Ok(TitsClass {
        tag: TitsTag::Polycyclic,
        evidence: Evidence::DistinctSizes { factor: witness.factor.clone(), sizes: witness.sizes() },
    })
}

/// Generalized eigenspaces `ker π(T)^m` with the restriction of `T` to each.
pub fn primary_components(t: &QMatrix) -> Result<Vec<PrimaryComponent>> {
    require_invertible(t)?;
    let chi = char_poly(t)?;
    let fac = factor_z(&chi.primitive)?;
    fac.factors
        .iter()
        .map(|(pi, m)| {
            let subspace = kernel_basis(&pi.pow(*m).eval_matrix(t));
            let basis = subspace.basis();
            let image = t * basis;
            let cols: Vec<Vec<_>> = image
                .columns()
                .iter()
                .map(|c| basis.solve(c).expect("generalized eigenspace is T-invariant"))
                .collect();
            let restriction = QMatrix::from_columns(subspace.dim(), &cols);
            Ok(PrimaryComponent { factor: pi.clone(), multiplicity: *m, subspace, restriction })
        })
        .collect()
}

/// Rational roots of χ_T with their algebraic multiplicities, or `None` if
/// χ_T has an irreducible factor of degree ≥ 2.
pub fn rational_eigenvalues(t: &QMatrix) -> Result<Option<Vec<(crate::linalg::Rational, u32)>>> {
    let chi = char_poly(t)?;
    let fac = factor_z(&chi.primitive)?;
    let mut out = Vec::new();
    for (pi, m) in &fac.factors {
        if pi.deg() != 1 {
            return Ok(None);
        }
        let c = pi.coeffs();
        out.push((crate::linalg::Rational::new(-c[0].clone(), c[1].clone()), *m));
    }
    out.sort_by(|a, b| (a.0.numer(), a.0.denom()).cmp(&(b.0.numer(), b.0.denom())));
    Ok(Some(out))
}
