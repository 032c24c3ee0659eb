//! Machine-readable run reports.
//!
//! Everything that can differ between two identical runs (wall times) sits
//! under the top-level `"timing"` key; the rest is byte-for-byte
//! reproducible.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::engine::{NicetyReport, Verdict};
use crate::map_io::render_polynomial;
use crate::poly_map::PolyMap;

pub const SCHEMA: &str = "nicety-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: impl Into<String>, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        let sha256 = hash.iter().map(|b| format!("{b:02x}")).collect();
        InputDigest { path: path.into(), sha256 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub verdict: Option<String>,
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub randomized: Option<Value>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    pub timing: Map<String, Value>,
    pub exit: i32,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            schema: SCHEMA,
            command,
            inputs: Vec::new(),
            verdict: None,
            m: None,
            steps: Vec::new(),
            inverse: None,
            randomized: None,
            details: Map::new(),
            timing: Map::new(),
            exit: 0,
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// The JSON text with the `"timing"` key removed, for determinism checks.
pub fn without_timing(json: &str) -> serde_json::Result<String> {
    let mut v: Value = serde_json::from_str(json)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn verdict_label(v: &Verdict) -> String {
    format!("{v:?}")
}

pub fn render_components(f: &PolyMap, names: &[String]) -> Vec<String> {
    f.components().iter().map(|p| render_polynomial(p, names)).collect()
}

/// Fills verdict, steps, inverse and details from a nicety report.
pub fn fill_nicety(report: &mut RunReport, r: &NicetyReport, names: &[String]) {
    report.verdict = Some(verdict_label(&r.verdict));
    report.m = r.m();
    report.steps = r
        .steps
        .iter()
        .map(|s| json!({ "k": s.k, "degrees": s.degrees, "terms": s.terms, "exceeds_inverse_bound": s.exceeds_inverse_bound }))
        .collect();
    report.timing.insert(
        "steps_ms".into(),
        Value::from(r.steps.iter().map(|s| s.elapsed.as_secs_f64() * 1e3).collect::<Vec<_>>()),
    );
    report.inverse = r.inverse.as_ref().map(|g| render_components(g, names));
    report.randomized = Some(json!({
        "mode": "modular-screen",
        "seed": r.screening.seed,
        "samples": r.screening.samples,
        "primes": r.screening.primes,
    }));
    report.detail("certified_nonzero_steps", &r.certified_nonzero);
    report.detail("component_vanishing", &r.component_vanishing);
    report.detail("inverse_verified", r.inverse_verified);
    report.detail("inverse_degree_within_bound", r.inverse_degree_within_bound);
    report.detail(
        "budget_breach",
        r.budget_breach.map(|b| json!({ "step": b.step, "terms": b.terms, "budget": b.budget })),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        let d = InputDigest::new("x", b"abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn timing_is_stripped() {
        let mut r = RunReport::new(vec!["keller".into()]);
        r.timing.insert("total_ms".into(), Value::from(1.5));
        let a = without_timing(&r.to_json()).unwrap();
        r.timing.insert("total_ms".into(), Value::from(7.0));
        assert_eq!(a, without_timing(&r.to_json()).unwrap());
        assert!(!a.contains("timing"));
        assert!(a.contains("nicety-report/1"));
    }
}
