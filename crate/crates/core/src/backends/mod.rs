//! Reference backends for conjugacy and centralizers in GL(n, ℤ).
//!
//! Both searches enumerate integer points of a solution lattice with bounded
//! coefficients, so they can confirm but never refute on their own. Negative
//! answers come only from conjugation invariants that provably differ.

mod filters;
mod search;

use std::collections::HashSet;
use std::fmt;

use crate::error::Result;
use crate::linalg::QMatrix;
use crate::poly::ZPolyScaled;

pub use filters::nonconjugacy_filters;
pub use search::{centralizer_gens_z, centralizer_lattice, conjugate_glnz, conjugator_lattice, graded_coefficients};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest absolute coefficient in lattice-basis combinations.
    pub coeff_bound: u32,
    pub filter_primes: Vec<u64>,
    /// Cap on enumerated lattice points per search.
    pub max_candidates: usize,
    /// Modular filters run only when `n ≤ max_filter_dim` ...
    pub max_filter_dim: usize,
    /// ... and `p ≤ max_filter_prime`.
    pub max_filter_prime: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            coeff_bound: 3,
            filter_primes: vec![2, 3, 5],
            max_candidates: 2_000_000,
            max_filter_dim: 3,
            max_filter_prime: 5,
        }
    }
}

impl SearchConfig {
    pub fn with_bound(bound: u32) -> Self {
        SearchConfig { coeff_bound: bound, ..Self::default() }
    }
}

/// A conjugation invariant on which two matrices (or an orbit) disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Determinant { left: crate::linalg::Rational, right: crate::linalg::Rational },
    CharPoly { left: ZPolyScaled, right: ZPolyScaled },
    MinPoly { left: ZPolyScaled, right: ZPolyScaled },
    /// No invertible `P` over F_p with `P·T = T̂·P`.
    Modular { prime: u64 },
    /// The orbit closed under a complete generating set without reaching the target.
    OrbitExhausted { orbit_size: usize },
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::Determinant { .. } => "determinant",
            Certificate::CharPoly { .. } => "char_poly",
            Certificate::MinPoly { .. } => "min_poly",
            Certificate::Modular { .. } => "modular",
            Certificate::OrbitExhausted { .. } => "orbit_exhausted",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Determinant { left, right } => write!(f, "determinant {left} vs {right}"),
            Certificate::CharPoly { left, right } => write!(f, "char_poly {left} vs {right}"),
            Certificate::MinPoly { left, right } => write!(f, "min_poly {left} vs {right}"),
            Certificate::Modular { prime } => write!(f, "not conjugate in GL(n, F_{prime})"),
            Certificate::OrbitExhausted { orbit_size } => {
                write!(f, "orbit of size {orbit_size} closed without reaching the target")
            }
        }
    }
}

/// Why a bounded search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhausted {
    pub config: Option<SearchConfig>,
    pub depth: Option<usize>,
    pub reason: String,
}

/// Yes with a witness, No with a certificate, or Unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision3<W> {
    Yes(W),
    No(Certificate),
    Unknown(Exhausted),
}

impl<W> Decision3<W> {
    pub fn tag(&self) -> &'static str {
        match self {
            Decision3::Yes(_) => "yes",
            Decision3::No(_) => "no",
            Decision3::Unknown(_) => "unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision3::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision3::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision3::Unknown(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision3::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Elements of GL(n, ℤ); `complete` only when they provably generate the
/// whole group asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    pub elements: Vec<QMatrix>,
    pub complete: bool,
}

impl GeneratingSet {
    /// Greedy reduction: drops the identity and every element that equals a
    /// word of length ≤ 2 in the elements kept so far and their inverses.
    /// The generated group is unchanged.
    pub fn reduced(&self) -> GeneratingSet {
        let Some(first) = self.elements.first() else {
            return self.clone();
        };
        let n = first.rows();
        let id = QMatrix::identity(n);
        let mut kept: Vec<QMatrix> = Vec::new();
        let mut letters: Vec<QMatrix> = vec![id.clone()];
        let mut known: HashSet<QMatrix> = HashSet::from([id]);
        for g in &self.elements {
            if known.contains(g) {
                continue;
            }
            let inv = g.inverse().expect("generating set elements are invertible");
            kept.push(g.clone());
            let fresh = [g.clone(), inv];
            letters.extend(fresh.iter().cloned());
            // only products involving a new letter are new
            for a in &fresh {
                for b in &letters {
                    known.insert(a * b);
                    known.insert(b * a);
                }
            }
        }
        GeneratingSet { elements: kept, complete: self.complete }
    }
}

/// Replaceable conjugacy / centralizer oracle for GL(n, ℤ).
pub trait GlnzBackend: Sync {
    fn conjugate(&self, t: &QMatrix, t_hat: &QMatrix, cfg: &SearchConfig) -> Result<Decision3<QMatrix>>;
    fn centralizer(&self, t: &QMatrix, cfg: &SearchConfig) -> Result<GeneratingSet>;
}

/// Bounded lattice enumeration with invariant filters.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReferenceBackend;

impl GlnzBackend for ReferenceBackend {
    fn conjugate(&self, t: &QMatrix, t_hat: &QMatrix, cfg: &SearchConfig) -> Result<Decision3<QMatrix>> {
        conjugate_glnz(t, t_hat, cfg)
    }

    fn centralizer(&self, t: &QMatrix, cfg: &SearchConfig) -> Result<GeneratingSet> {
        centralizer_gens_z(t, cfg)
    }
}
