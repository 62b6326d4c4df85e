use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use super::KronActionMatrix;
use crate::backends::{Certificate, Decision3, Exhausted, GeneratingSet};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rational};
use crate::par;

pub const DEFAULT_DEPTH: usize = 12;
pub const MAX_VISITED: usize = 1_000_000;

/// A word in generators and their inverses: `(index, ±1)` letters, read
/// left to right as a product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitWord {
    pub letters: Vec<(usize, i8)>,
}

impl OrbitWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> OrbitWord {
        OrbitWord { letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    /// Cancels adjacent `g·g⁻¹` pairs.
    pub fn free_reduce(&self) -> OrbitWord {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &(i, e) in &self.letters {
            if out.last() == Some(&(i, -e)) {
                out.pop();
            } else {
                out.push((i, e));
            }
        }
        OrbitWord { letters: out }
    }

    /// `m[i₁]^{e₁} · m[i₂]^{e₂} ⋯`, the identity of size `n` for the empty word.
    pub fn evaluate(&self, n: usize, mats: &[QMatrix]) -> Result<QMatrix> {
        let mut inverses: HashMap<usize, QMatrix> = HashMap::new();
        let mut acc = QMatrix::identity(n);
        for &(i, e) in &self.letters {
            let g = mats.get(i).ok_or_else(|| Error::Precondition(format!("letter {i} out of range")))?;
            acc = if e > 0 {
                acc.checked_mul(g)?
            } else {
                if let std::collections::hash_map::Entry::Vacant(e) = inverses.entry(i) {
                    e.insert(g.inverse()?);
                }
                acc.checked_mul(&inverses[&i])?
            };
        }
        Ok(acc)
    }
}

struct Orbit {
    points: Vec<Vec<Rational>>,
    parent: Vec<Option<(usize, (usize, i8))>>,
    index: HashMap<Vec<Rational>, usize>,
    closed: bool,
    found: Option<usize>,
    reason: String,
}

impl Orbit {
    fn word(&self, mut x: usize) -> OrbitWord {
        let mut letters = Vec::new();
        while let Some((p, l)) = self.parent[x] {
            letters.push(l);
            x = p;
        }
        OrbitWord { letters }
    }
}

fn check_gens(gens: &[KronActionMatrix], dim: usize) -> Result<()> {
    for g in gens {
        if g.mat.rows() != dim || g.mat.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.mat.rows() });
        }
    }
    Ok(())
}

/// Level-synchronous BFS from `start` over letters `(0,+1), (0,-1), (1,+1), …`.
/// Images of a level are computed in parallel and merged in frontier order,
/// so the result matches a sequential BFS.
fn explore(gens: &[KronActionMatrix], start: &[Rational], depth: usize, target: Option<&[Rational]>) -> Result<Orbit> {
    let mut letters: Vec<((usize, i8), QMatrix)> = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.iter().enumerate() {
        let inv = g.c.inverse()?;
        letters.push(((i, 1), g.mat.clone()));
        letters.push(((i, -1), inv.kron(&inv)));
    }
    let mut orbit = Orbit {
        points: vec![start.to_vec()],
        parent: vec![None],
        index: HashMap::from([(start.to_vec(), 0)]),
        closed: false,
        found: None,
        reason: String::new(),
    };
    if target == Some(start) {
        orbit.found = Some(0);
        return Ok(orbit);
    }
    let mut frontier = vec![0usize];
    let mut level = 0;
    loop {
        if frontier.is_empty() {
            orbit.closed = true;
            return Ok(orbit);
        }
        let images: Vec<Vec<Vec<Rational>>> = {
            let pts = &orbit.points;
            let letters = &letters;
            par::map(&frontier, |&u| letters.iter().map(|(_, m)| m.apply(&pts[u])).collect())
        };
        if level == depth {
            orbit.closed = images.iter().flatten().all(|x| orbit.index.contains_key(x));
            if !orbit.closed {
                orbit.reason = format!("depth {depth} exhausted");
            }
            return Ok(orbit);
        }
        let mut next = Vec::new();
        for (&u, imgs) in frontier.iter().zip(images) {
            for ((letter, _), img) in letters.iter().zip(imgs) {
                if orbit.index.contains_key(&img) {
                    continue;
                }
                let id = orbit.points.len();
                let hit = target == Some(img.as_slice());
                orbit.index.insert(img.clone(), id);
                orbit.points.push(img);
                orbit.parent.push(Some((u, *letter)));
                if hit {
                    orbit.found = Some(id);
                    return Ok(orbit);
                }
                next.push(id);
            }
        }
        if orbit.points.len() > MAX_VISITED {
            orbit.reason = format!("visited cap {MAX_VISITED} reached");
            return Ok(orbit);
        }
        frontier = next;
        level += 1;
    }
}

/// Finds a word `c` in the generators with `c·v = w`.
///
/// `No` only when the orbit of `v` closes within `depth` without meeting `w`.
pub fn orbit_solve(gens: &[KronActionMatrix], v: &[Rational], w: &[Rational], depth: usize) -> Result<Decision3<OrbitWord>> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: v.len(), found: w.len() });
    }
    check_gens(gens, v.len())?;
    let orbit = explore(gens, v, depth, Some(w))?;
    if let Some(x) = orbit.found {
        let word = orbit.word(x);
        let acts: Vec<QMatrix> = gens.iter().map(|g| g.mat.clone()).collect();
        let c = word.evaluate(v.len(), &acts)?;
        assert_eq!(c.apply(v), w, "orbit word failed verification");
        return Ok(Decision3::Yes(word));
    }
    if orbit.closed {
        return Ok(Decision3::No(Certificate::OrbitExhausted { orbit_size: orbit.points.len() }));
    }
    Ok(Decision3::Unknown(Exhausted { config: None, depth: Some(depth), reason: orbit.reason }))
}

/// Schreier words `t_{g·u}⁻¹ · g · t_u` for the stabilizer of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub words: Vec<OrbitWord>,
    pub orbit_size: usize,
    /// The orbit closed within the depth, so the words generate the stabilizer.
    pub complete: bool,
}

/// Schreier generators of the stabilizer of `v`, as words.
///
/// Words that reduce freely to nothing, or whose underlying `C` is `±I`, are
/// dropped; words giving the same `C` up to sign are kept once.
pub fn stabilizer_words(gens: &[KronActionMatrix], v: &[Rational], depth: usize) -> Result<Stabilizer> {
    check_gens(gens, v.len())?;
    let orbit = explore(gens, v, depth, None)?;
    let n = gens.first().map_or(0, |g| g.c.rows());
    let cs: Vec<QMatrix> = gens.iter().map(|g| g.c.clone()).collect();
    let mut candidates = Vec::new();
    for u in 0..orbit.points.len() {
        let tu = orbit.word(u);
        for (i, g) in gens.iter().enumerate() {
            let Some(&x) = orbit.index.get(&g.apply(&orbit.points[u])) else { continue };
            let mut letters = orbit.word(x).inverse().letters;
            letters.push((i, 1));
            letters.extend_from_slice(&tu.letters);
            let s = OrbitWord { letters }.free_reduce();
            if !s.is_empty() {
                candidates.push(s);
            }
        }
    }
    let lifted: Vec<Result<QMatrix>> = par::map(&candidates, |s| s.evaluate(n, &cs));
    let mut seen = HashSet::new();
    let mut words = Vec::new();
    let id = QMatrix::identity(n);
    for (s, c) in candidates.into_iter().zip(lifted) {
        let c = sign_normalized(c?);
        if c == id || !seen.insert(c) {
            continue;
        }
        words.push(s);
    }
    Ok(Stabilizer { words, orbit_size: orbit.points.len(), complete: orbit.closed })
}

fn sign_normalized(c: QMatrix) -> QMatrix {
    match c.entries().iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -&c,
        _ => c,
    }
}

/// Stabilizer of `v` as action matrices.
pub fn stabilizer_gens(gens: &[KronActionMatrix], v: &[Rational], depth: usize) -> Result<GeneratingSet> {
    let stab = stabilizer_words(gens, v, depth)?;
    let acts: Vec<QMatrix> = gens.iter().map(|g| g.mat.clone()).collect();
    let elements = stab.words.iter().map(|w| w.evaluate(v.len(), &acts)).collect::<Result<Vec<_>>>()?;
    Ok(GeneratingSet { elements, complete: stab.complete })
}
