use num_traits::Zero;

use super::orbit::{orbit_solve, stabilizer_words, OrbitWord};
use super::{is_in_hm, kron_action_matrix, reduce_to_orbit, BilinearForm, KronActionMatrix};
use crate::backends::{Decision3, Exhausted, GeneratingSet, GlnzBackend, ReferenceBackend, SearchConfig};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;

/// `Q = P₀·C₀ ∈ H_M` with `Q·T·Q⁻¹ = T̂`.
///
/// `word` is the orbit word in the centralizer generators `gens` carrying
/// `vec(P₀⁻¹·M·P₀⁻ᵗ)` to `vec(M)`; its value is `C₀⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmCertificate {
    pub q: QMatrix,
    pub p0: QMatrix,
    pub c0: QMatrix,
    pub word: OrbitWord,
    pub gens: Vec<QMatrix>,
}

impl HmCertificate {
    /// Re-checks `Q = P₀·C₀`, `Q·M·Qᵗ = M` and `Q·T·Q⁻¹ = T̂`.
    pub fn verify(&self, t: &QMatrix, t_hat: &QMatrix, m: &BilinearForm) -> Result<bool> {
        let n = m.dim();
        let lifted = self.word.evaluate(n, &self.gens)?;
        Ok(&self.p0 * &self.c0 == self.q
            && &lifted * &self.c0 == QMatrix::identity(n)
            && is_in_hm(&self.q, m)?
            && &(&self.q * t) * &self.q.inverse()? == *t_hat)
    }
}

fn check_square(x: &QMatrix, n: usize) -> Result<()> {
    if x.rows() != n || x.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.rows() });
    }
    Ok(())
}

fn checked_centralizer(backend: &dyn GlnzBackend, t: &QMatrix, cfg: &SearchConfig) -> Result<GeneratingSet> {
    let gens = backend.centralizer(t, cfg)?;
    for c in &gens.elements {
        if !c.is_unimodular() || (c * t) != (t * c) {
            return Err(Error::Precondition(format!("backend centralizer element {c} is invalid")));
        }
    }
    Ok(gens)
}

fn actions(gens: &[QMatrix]) -> Result<Vec<KronActionMatrix>> {
    gens.iter().map(kron_action_matrix).collect()
}

/// H_M-conjugacy with the reference GL(n, ℤ) backend.
pub fn conjugate_in_hm(
    t: &QMatrix,
    t_hat: &QMatrix,
    m: &BilinearForm,
    cfg: &SearchConfig,
    depth: usize,
) -> Result<Decision3<HmCertificate>> {
    conjugate_in_hm_with(&ReferenceBackend, t, t_hat, m, cfg, depth)
}

/// Decides whether some `Q ∈ H_M` has `Q·T·Q⁻¹ = T̂`.
///
/// A GL(n, ℤ)-conjugator `P₀` is found first; the question then becomes
/// whether `vec(M)` lies in the orbit of `vec(P₀⁻¹·M·P₀⁻ᵗ)` under the
/// centralizer of `T`. The orbit search runs from the latter to the former
/// and the word is inverted, giving `C₀` with `C₀·M·C₀ᵗ = P₀⁻¹·M·P₀⁻ᵗ`.
///
/// A closed orbit yields `No` only when the centralizer generators are
/// certified complete; otherwise it is `Unknown`.
pub fn conjugate_in_hm_with(
    backend: &dyn GlnzBackend,
    t: &QMatrix,
    t_hat: &QMatrix,
    m: &BilinearForm,
    cfg: &SearchConfig,
    depth: usize,
) -> Result<Decision3<HmCertificate>> {
    let n = m.dim();
    check_square(t, n)?;
    check_square(t_hat, n)?;
    if t.det()?.is_zero() || t_hat.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let p0 = match backend.conjugate(t, t_hat, cfg)? {
        Decision3::Yes(p) => p,
        Decision3::No(c) => return Ok(Decision3::No(c)),
        Decision3::Unknown(e) => return Ok(Decision3::Unknown(e)),
    };
    let (v, w) = reduce_to_orbit(t, t_hat, m, &p0)?;
    let (word, gens) = if v == w {
        (OrbitWord::default(), Vec::new())
    } else {
        let full = checked_centralizer(backend, t, cfg)?;
        let reduced = full.reduced();
        match orbit_solve(&actions(&reduced.elements)?, &w, &v, depth)? {
            Decision3::Yes(word) => (word, reduced.elements),
            Decision3::No(cert) if full.complete => return Ok(Decision3::No(cert)),
            Decision3::No(cert) => {
                return Ok(Decision3::Unknown(Exhausted {
                    config: Some(cfg.clone()),
                    depth: Some(depth),
                    reason: format!("{cert}, but the centralizer generators are not certified complete"),
                }))
            }
            Decision3::Unknown(e) => {
                return Ok(Decision3::Unknown(Exhausted { config: Some(cfg.clone()), ..e }));
            }
        }
    };
    let lifted = word.evaluate(n, &gens)?;
    let c0 = lifted.inverse()?;
    let q = &p0 * &c0;
    let cert = HmCertificate { q, p0, c0, word, gens };
    assert!(cert.verify(t, t_hat, m)?, "H_M certificate failed verification");
    Ok(Decision3::Yes(cert))
}

/// Centralizer of `T` in `H_M` with the reference GL(n, ℤ) backend.
pub fn centralizer_in_hm(t: &QMatrix, m: &BilinearForm, cfg: &SearchConfig, depth: usize) -> Result<GeneratingSet> {
    centralizer_in_hm_with(&ReferenceBackend, t, m, cfg, depth)
}

/// Generators of `C_{GL(n,ℤ)}(T) ∩ H_M`: Schreier generators of the
/// stabilizer of `vec(M)` lifted from action words back to matrices, plus
/// `−I`, which acts trivially and always lies in the group.
///
/// `complete` iff the backend set is complete and the orbit closed.
pub fn centralizer_in_hm_with(
    backend: &dyn GlnzBackend,
    t: &QMatrix,
    m: &BilinearForm,
    cfg: &SearchConfig,
    depth: usize,
) -> Result<GeneratingSet> {
    let n = m.dim();
    check_square(t, n)?;
    if t.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let full = checked_centralizer(backend, t, cfg)?;
    let reduced = full.reduced();
    let stab = stabilizer_words(&actions(&reduced.elements)?, &m.matrix().vectorize(), depth)?;
    let mut elements = stab.words.iter().map(|w| w.evaluate(n, &reduced.elements)).collect::<Result<Vec<_>>>()?;
    let minus = -&QMatrix::identity(n);
    if !elements.contains(&minus) {
        elements.push(minus);
    }
    for c in &elements {
        assert!(is_in_hm(c, m)? && (c * t) == (t * c), "stabilizer element failed verification");
    }
    Ok(GeneratingSet { elements, complete: full.complete && stab.complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symplectic() -> BilinearForm {
        BilinearForm::new(QMatrix::from_ints(&[[0, 1], [-1, 0]])).unwrap()
    }

    #[test]
    fn identical_pair() {
        let t = QMatrix::from_ints(&[[2, 1], [1, 1]]);
        let m = BilinearForm::new(QMatrix::from_ints(&[[2, 1], [0, 3]])).unwrap();
        let d = conjugate_in_hm(&t, &t, &m, &SearchConfig::default(), 12).unwrap();
        assert_eq!(d.witness().unwrap().q, QMatrix::identity(2));
    }

    #[test]
    fn planted_symplectic() {
        let t = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let t_hat = QMatrix::from_ints(&[[0, 1], [-1, 2]]);
        let p = QMatrix::from_ints(&[[1, 0], [1, 1]]);
        assert_eq!(&(&p * &t) * &p.inverse().unwrap(), t_hat);
        let m = symplectic();
        let d = conjugate_in_hm(&t, &t_hat, &m, &SearchConfig::default(), 12).unwrap();
        let cert = d.witness().unwrap();
        assert!(cert.verify(&t, &t_hat, &m).unwrap());
    }

    #[test]
    fn min_poly_mismatch_is_no() {
        let t = QMatrix::identity(2);
        let t_hat = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let d = conjugate_in_hm(&t, &t_hat, &symplectic(), &SearchConfig::default(), 12).unwrap();
        assert!(matches!(d, Decision3::No(ref c) if c.name() == "min_poly"));
    }

    #[test]
    fn orbit_correction_needed() {
        // P₀ from the backend need not preserve M = I; the orbit step fixes it up.
        let m = BilinearForm::new(QMatrix::identity(2)).unwrap();
        let t = QMatrix::from_ints(&[[0, -1], [1, 0]]);
        let q = QMatrix::from_ints(&[[0, 1], [1, 0]]);
        let t_hat = &(&q * &t) * &q.inverse().unwrap();
        let d = conjugate_in_hm(&t, &t_hat, &m, &SearchConfig::default(), 12).unwrap();
        assert!(d.witness().unwrap().verify(&t, &t_hat, &m).unwrap());
    }

    #[test]
    fn symplectic_centralizer_of_identity() {
        let g = centralizer_in_hm(&QMatrix::identity(2), &symplectic(), &SearchConfig::with_bound(1), 6).unwrap();
        assert!(g.elements.len() > 1);
        for c in &g.elements {
            assert!(c.det().unwrap() == crate::linalg::rat(1));
        }
    }

    #[test]
    fn orthogonal_centralizer_of_rotation() {
        let t = QMatrix::from_ints(&[[0, -1], [1, 0]]);
        let m = BilinearForm::new(QMatrix::identity(2)).unwrap();
        let g = centralizer_in_hm(&t, &m, &SearchConfig::with_bound(1), 12).unwrap();
        assert!(g.complete);
        assert!(g.elements.contains(&t) || g.elements.contains(&-&t));
        for c in &g.elements {
            assert_eq!(c * &c.transpose(), QMatrix::identity(2));
        }
    }
}
