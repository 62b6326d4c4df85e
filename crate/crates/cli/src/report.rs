//! Report documents and their JSON payloads.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use zcent_core::backends::{Certificate, Exhausted, SearchConfig};
use zcent_core::hm::OrbitWord;
use zcent_core::QMatrix;

use crate::document::MatrixDocument;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub bound: u32,
    pub depth: usize,
    pub primes: Vec<u64>,
}

impl ConfigEcho {
    pub fn search(&self) -> SearchConfig {
        SearchConfig { coeff_bound: self.bound, filter_primes: self.primes.clone(), ..SearchConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    /// `yes` / `no` / `unknown`, a class tag, `complete` / `incomplete`, or `ok`.
    pub result: String,
    pub inputs: BTreeMap<String, MatrixDocument>,
    pub config: ConfigEcho,
    pub elapsed_ms: f64,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
}

/// Process exit code for a report.
pub fn exit_code(result: &str) -> i32 {
    match result {
        "unknown" | "incomplete" => 2,
        "rejected" => 1,
        _ => 0,
    }
}

pub fn matrix(m: &QMatrix) -> Value {
    if m.is_square() {
        serde_json::to_value(MatrixDocument::from_matrix(m)).expect("plain data")
    } else {
        let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
        json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
    }
}

pub fn matrices(ms: &[QMatrix]) -> Value {
    Value::Array(ms.iter().map(matrix).collect())
}

pub fn certificate(c: &Certificate) -> Value {
    let mut v = json!({ "name": c.name(), "detail": c.to_string() });
    let extra = match c {
        Certificate::Determinant { left, right } => json!({ "left": left.to_string(), "right": right.to_string() }),
        Certificate::CharPoly { left, right } | Certificate::MinPoly { left, right } => {
            json!({ "left": left.to_string(), "right": right.to_string() })
        }
        Certificate::Modular { prime } => json!({ "prime": prime }),
        Certificate::OrbitExhausted { orbit_size } => json!({ "orbit_size": orbit_size }),
    };
    v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
    v
}

pub fn exhausted(e: &Exhausted) -> Value {
    json!({ "reason": e.reason, "depth": e.depth, "bound": e.config.as_ref().map(|c| c.coeff_bound) })
}

pub fn word(w: &OrbitWord) -> Value {
    Value::Array(w.letters.iter().map(|(i, s)| json!([i, s])).collect())
}

pub fn parse_word(v: &Value) -> Option<OrbitWord> {
    let letters = v
        .as_array()?
        .iter()
        .map(|l| Some((l.get(0)?.as_u64()? as usize, l.get(1)?.as_i64()? as i8)))
        .collect::<Option<Vec<_>>>()?;
    Some(OrbitWord { letters })
}

pub fn parse_matrix(v: &Value) -> Option<QMatrix> {
    let doc: MatrixDocument = serde_json::from_value(v.clone()).ok()?;
    Some(doc.to_matrix())
}

pub fn parse_matrices(v: &Value) -> Option<Vec<QMatrix>> {
    v.as_array()?.iter().map(parse_matrix).collect()
}
