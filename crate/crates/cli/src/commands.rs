//! One function per subcommand, each returning `(result, payload)`.

use anyhow::{anyhow, bail, ensure, Result};
use serde_json::{json, Map, Value};
use zcent_core::backends::{
    centralizer_gens_z, conjugate_glnz, nonconjugacy_filters, Certificate, Decision3, SearchConfig,
};
use zcent_core::hm::{centralizer_in_hm, conjugate_in_hm, is_in_hm, BilinearForm, HmCertificate};
use zcent_core::linalg::{char_poly, min_poly};
use zcent_core::spectral::{block_profile, classify, rational_eigenvalues, Evidence, TitsTag};
use zcent_core::witnesses::{flag_basis, gl2_embedding, noncommuting_pair};
use zcent_core::QMatrix;

use crate::report::{self, ConfigEcho, ReportDocument};

pub type Outcome = (String, Map<String, Value>);

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("payloads are objects"),
    }
}

fn warn_if_free(t: &QMatrix) -> Result<()> {
    if classify(t)?.tag == TitsTag::ContainsFree {
        eprintln!("warning: the centralizer of T contains a free group; the orbit search may not terminate");
    }
    Ok(())
}

pub fn cmd_classify(t: &QMatrix) -> Result<Outcome> {
    let class = classify(t)?;
    if class.tag == TitsTag::ContainsFree {
        eprintln!("warning: the centralizer of T contains a free group");
    }
    let (evidence, detail) = match &class.evidence {
        Evidence::ChiEqualsMu => ("chi=mu", Value::Null),
        Evidence::RepeatedBlock { factor, size, second_difference } => (
            "repeated-block",
            json!({ "factor": factor.to_string(), "size": size, "second_difference": second_difference }),
        ),
        Evidence::DistinctSizes { factor, sizes } => {
            ("distinct-sizes", json!({ "factor": factor.to_string(), "sizes": sizes }))
        }
    };
    let tag = class.tag.as_str().to_string();
    Ok((tag.clone(), object(json!({ "case": tag, "evidence": evidence, "evidence_detail": detail }))))
}

pub fn cmd_profile(t: &QMatrix) -> Result<Outcome> {
    let profile = block_profile(t)?;
    let factors: Vec<Value> = profile
        .factors
        .iter()
        .zip(&profile.filtrations)
        .map(|(f, filt)| {
            json!({
                "factor": f.factor.to_string(),
                "degree": f.degree(),
                "filtration": filt.dims,
                "block_sizes": f.sizes(),
            })
        })
        .collect();
    Ok(("ok".into(), object(json!({ "n": profile.n, "factors": factors }))))
}

pub fn cmd_witnesses(t: &QMatrix) -> Result<Outcome> {
    let pair = match noncommuting_pair(t) {
        Ok(p) => json!({
            "a": report::matrix(&p.a),
            "b": report::matrix(&p.b),
            "eigenvalue": p.eigenvalue.to_string(),
            "sizes": [p.sizes.0, p.sizes.1],
        }),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let embedding = match gl2_embedding(t) {
        Ok(e) => json!({
            "block_size": e.block_size,
            "offsets": [e.offsets.0, e.offsets.1],
            "jordan_basis": report::matrix(&e.basis.v),
        }),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let mut flags = Vec::new();
    for (lambda, _) in rational_eigenvalues(t)?.unwrap_or_default() {
        let entry = match flag_basis(t, &lambda) {
            Ok(f) => json!({
                "eigenvalue": lambda.to_string(),
                "vectors": report::matrix(&f.vectors),
                "keys": f.keys,
                "intersections": f.intersections,
            }),
            Err(e) => json!({ "eigenvalue": lambda.to_string(), "unavailable": e.to_string() }),
        };
        flags.push(entry);
    }
    Ok(("ok".into(), object(json!({ "pair": pair, "gl2_embedding": embedding, "flags": flags }))))
}

fn decision<W>(d: Decision3<W>, yes: impl FnOnce(W) -> Value) -> Outcome {
    match d {
        Decision3::Yes(w) => ("yes".into(), object(yes(w))),
        Decision3::No(c) => ("no".into(), object(json!({ "certificate": report::certificate(&c) }))),
        Decision3::Unknown(e) => ("unknown".into(), object(json!({ "exhausted": report::exhausted(&e) }))),
    }
}

pub fn cmd_conj_glnz(t: &QMatrix, t_hat: &QMatrix, cfg: &SearchConfig) -> Result<Outcome> {
    let d = conjugate_glnz(t, t_hat, cfg)?;
    Ok(decision(d, |p| json!({ "conjugator": report::matrix(&p) })))
}

fn generating_set(elements: &[QMatrix], complete: bool) -> Outcome {
    let result = if complete { "complete" } else { "incomplete" };
    (result.into(), object(json!({ "elements": report::matrices(elements), "complete": complete })))
}

pub fn cmd_centralizer(t: &QMatrix, cfg: &SearchConfig) -> Result<Outcome> {
    let g = centralizer_gens_z(t, cfg)?.reduced();
    Ok(generating_set(&g.elements, g.complete))
}

pub fn cmd_conj_hm(t: &QMatrix, t_hat: &QMatrix, m: &QMatrix, cfg: &SearchConfig, depth: usize) -> Result<Outcome> {
    let form = BilinearForm::new(m.clone())?;
    warn_if_free(t)?;
    let d = conjugate_in_hm(t, t_hat, &form, cfg, depth)?;
    Ok(decision(d, |c| {
        json!({
            "q": report::matrix(&c.q),
            "p0": report::matrix(&c.p0),
            "c0": report::matrix(&c.c0),
            "word": report::word(&c.word),
            "gens": report::matrices(&c.gens),
        })
    }))
}

pub fn cmd_stab_hm(t: &QMatrix, m: &QMatrix, cfg: &SearchConfig, depth: usize) -> Result<Outcome> {
    let form = BilinearForm::new(m.clone())?;
    warn_if_free(t)?;
    let g = centralizer_in_hm(t, &form, cfg, depth)?;
    Ok(generating_set(&g.elements, g.complete))
}

fn input(r: &ReportDocument, key: &str) -> Result<QMatrix> {
    Ok(r.inputs.get(key).ok_or_else(|| anyhow!("report has no input {key:?}"))?.to_matrix())
}

fn field<'a>(r: &'a ReportDocument, key: &str) -> Result<&'a Value> {
    r.payload.get(key).ok_or_else(|| anyhow!("report has no field {key:?}"))
}

fn field_matrix(v: &Value, key: &str) -> Result<QMatrix> {
    v.get(key).and_then(report::parse_matrix).ok_or_else(|| anyhow!("malformed matrix {key:?}"))
}

fn check_no(r: &ReportDocument, t: &QMatrix, t_hat: &QMatrix, rerun: impl FnOnce() -> Result<Option<Certificate>>) -> Result<()> {
    let cert = field(r, "certificate")?;
    let name = cert.get("name").and_then(Value::as_str).unwrap_or_default();
    let side = |k: &str| cert.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
    let (left, right) = match name {
        "determinant" => (t.det()?.to_string(), t_hat.det()?.to_string()),
        "char_poly" => (char_poly(t)?.to_string(), char_poly(t_hat)?.to_string()),
        "min_poly" => (min_poly(t)?.to_string(), min_poly(t_hat)?.to_string()),
        "modular" | "orbit_exhausted" => {
            let again = rerun()?.ok_or_else(|| anyhow!("rerun produced no certificate"))?;
            ensure!(report::certificate(&again) == *cert, "rerun produced {again}");
            return Ok(());
        }
        other => bail!("unknown certificate {other:?}"),
    };
    ensure!(left != right, "{name} agrees on both matrices");
    ensure!(left == side("left") && right == side("right"), "{name} values do not match the inputs");
    Ok(())
}

fn check_generators(elements: &[QMatrix], t: &QMatrix, form: Option<&BilinearForm>) -> Result<()> {
    for c in elements {
        ensure!(c.is_unimodular(), "element {c} is not in GL(n, Z)");
        ensure!(c * t == t * c, "element {c} does not commute with T");
        if let Some(f) = form {
            ensure!(is_in_hm(c, f)?, "element {c} does not preserve M");
        }
    }
    Ok(())
}

/// Re-checks the claim of a report. Errors describe why it was rejected.
pub fn verify_report(r: &ReportDocument) -> Result<String> {
    let cfg = r.config.search();
    let recompute = |o: Outcome| -> Result<String> {
        ensure!(o.0 == r.result, "recomputed result {} differs", o.0);
        ensure!(o.1 == r.payload, "recomputed payload differs");
        Ok("recomputed and identical".into())
    };
    match r.command.as_str() {
        "classify" => recompute(cmd_classify(&input(r, "t")?)?),
        "profile" => recompute(cmd_profile(&input(r, "t")?)?),
        "witnesses" => {
            let t = input(r, "t")?;
            let pair = field(r, "pair")?;
            if pair.get("a").is_some() {
                let (a, b) = (field_matrix(pair, "a")?, field_matrix(pair, "b")?);
                ensure!(&a * &t == &t * &a && &b * &t == &t * &b, "pair does not commute with T");
                ensure!(&a * &b != &b * &a, "pair commutes");
            }
            recompute(cmd_witnesses(&t)?)
        }
        "conj-glnz" => {
            let (t, t_hat) = (input(r, "t")?, input(r, "t_hat")?);
            match r.result.as_str() {
                "yes" => {
                    let p = field_matrix(&Value::Object(r.payload.clone()), "conjugator")?;
                    ensure!(p.is_unimodular(), "conjugator is not in GL(n, Z)");
                    ensure!(&(&p * &t) * &p.inverse()? == t_hat, "P T P^-1 differs from T-hat");
                    Ok("conjugator checked".into())
                }
                "no" => {
                    check_no(r, &t, &t_hat, || {
                        let cert = field(r, "certificate")?;
                        let prime = cert.get("prime").and_then(Value::as_u64).ok_or_else(|| anyhow!("missing prime"))?;
                        let cfg = SearchConfig { filter_primes: vec![prime], max_filter_prime: prime.max(cfg.max_filter_prime), ..cfg.clone() };
                        Ok(nonconjugacy_filters(&t, &t_hat, &cfg)?)
                    })?;
                    Ok("certificate checked".into())
                }
                _ => Ok("unknown carries no claim".into()),
            }
        }
        "centralizer" => {
            let t = input(r, "t")?;
            let elements = report::parse_matrices(field(r, "elements")?).ok_or_else(|| anyhow!("malformed elements"))?;
            check_generators(&elements, &t, None)?;
            Ok(format!("{} elements checked", elements.len()))
        }
        "stab-hm" => {
            let (t, form) = (input(r, "t")?, BilinearForm::new(input(r, "m")?)?);
            let elements = report::parse_matrices(field(r, "elements")?).ok_or_else(|| anyhow!("malformed elements"))?;
            check_generators(&elements, &t, Some(&form))?;
            Ok(format!("{} elements checked", elements.len()))
        }
        "conj-hm" => {
            let (t, t_hat) = (input(r, "t")?, input(r, "t_hat")?);
            let form = BilinearForm::new(input(r, "m")?)?;
            match r.result.as_str() {
                "yes" => {
                    let p = Value::Object(r.payload.clone());
                    let cert = HmCertificate {
                        q: field_matrix(&p, "q")?,
                        p0: field_matrix(&p, "p0")?,
                        c0: field_matrix(&p, "c0")?,
                        word: report::parse_word(field(r, "word")?).ok_or_else(|| anyhow!("malformed word"))?,
                        gens: report::parse_matrices(field(r, "gens")?).ok_or_else(|| anyhow!("malformed gens"))?,
                    };
                    check_generators(&cert.gens, &t, None)?;
                    ensure!(cert.q.is_unimodular(), "Q is not in GL(n, Z)");
                    ensure!(cert.verify(&t, &t_hat, &form)?, "certificate identities fail");
                    Ok("certificate checked".into())
                }
                "no" => {
                    check_no(r, &t, &t_hat, || match conjugate_in_hm(&t, &t_hat, &form, &cfg, r.config.depth)? {
                        Decision3::No(c) => Ok(Some(c)),
                        _ => Ok(None),
                    })?;
                    Ok("certificate checked".into())
                }
                _ => Ok("unknown carries no claim".into()),
            }
        }
        other => bail!("cannot verify reports of command {other:?}"),
    }
}

pub fn echo(cfg: &SearchConfig, depth: usize) -> ConfigEcho {
    ConfigEcho { bound: cfg.coeff_bound, depth, primes: cfg.filter_primes.clone() }
}
