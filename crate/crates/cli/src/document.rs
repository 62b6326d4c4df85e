//! JSON matrix documents: `{"n": 2, "entries": [["1", "0"], ["0", "1/2"]]}`.

use std::io::Read;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use zcent_core::{QMatrix, Rational};

/// Exact matrix with rational entries written as `"p"` or `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDocument")]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawDocument {
    n: usize,
    entries: Vec<Vec<Cell>>,
}

/// Integers are accepted unquoted on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Int(i64),
}

impl TryFrom<RawDocument> for MatrixDocument {
    type Error = String;

    fn try_from(raw: RawDocument) -> std::result::Result<Self, String> {
        if raw.entries.len() != raw.n || raw.entries.iter().any(|row| row.len() != raw.n) {
            return Err(format!("entries must be a {0}x{0} array", raw.n));
        }
        let entries = raw
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| match c {
                        Cell::Text(s) => parse_rational(&s).map(|q| q.to_string()),
                        Cell::Int(i) => Ok(i.to_string()),
                    })
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(MatrixDocument { n: raw.n, entries })
    }
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// `"p"` or `"p/q"` with an optional leading `-` on `p` and `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("invalid rational {s:?}");
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    if !digits(num.strip_prefix('-').unwrap_or(num)) || !digits(den) {
        return Err(bad());
    }
    let p = BigInt::from_str(num).map_err(|_| bad())?;
    let q = BigInt::from_str(den).map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

impl MatrixDocument {
    pub fn from_matrix(m: &QMatrix) -> Self {
        assert!(m.is_square());
        let entries = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
        MatrixDocument { n: m.rows(), entries }
    }

    pub fn to_matrix(&self) -> QMatrix {
        let data = self.entries.iter().flatten().map(|s| parse_rational(s).expect("validated on construction")).collect();
        QMatrix::from_vec(self.n, self.n, data).expect("validated on construction")
    }
}

/// Reads a document from a path, or from stdin for `-`.
pub fn read_document(path: &str) -> Result<MatrixDocument> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing matrix document {path}"))
}

/// Rejects more than one `-` among the inputs.
pub fn check_stdin_once(paths: &[&str]) -> Result<()> {
    if paths.iter().filter(|p| **p == "-").count() > 1 {
        bail!("at most one input may be read from stdin");
    }
    Ok(())
}
