//! Text format for polynomial maps and JSON format for rational matrices.
//!
//! A map file looks like
//!
//! ```text
//! vars: x1 x2 x3
//! F1 = x1 - 2*(x1*x3 + x2^2)*x2 - (x1*x3 + x2^2)^2*x3
//! F2 = x2 + (x1*x3 + x2^2)*x3
//! F3 = x3
//! ```
//!
//! Rendering is canonical (graded-lex, fixed spacing), so equal maps render
//! to identical bytes and `parse_map(render_map(F))` returns `F`.

mod parser;

use serde_json::Value;

pub use parser::{parse_document, Assignment, Expr, MapDocument};

use crate::error::{Error, Result};
use crate::poly_map::PolyMap;
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;

/// A parsed map together with its variable and component names.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap {
    pub names: Vec<String>,
    pub targets: Vec<String>,
    pub map: PolyMap,
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl Expr {
    pub fn expand(&self, nvars: usize, limits: &Limits) -> Result<Polynomial> {
        Ok(match self {
            Expr::Const(c) => Polynomial::constant(nvars, c.clone()),
            Expr::Var(i) => Polynomial::var(nvars, *i),
            Expr::Neg(e) => -&e.expand(nvars, limits)?,
            Expr::Add(a, b) => a.expand(nvars, limits)?.checked_add(&b.expand(nvars, limits)?)?,
            Expr::Sub(a, b) => a.expand(nvars, limits)?.checked_sub(&b.expand(nvars, limits)?)?,
            Expr::Mul(a, b) => a.expand(nvars, limits)?.mul_with(&b.expand(nvars, limits)?, limits)?,
            Expr::Pow(a, e) => a.expand(nvars, limits)?.pow_with(*e, limits)?,
        })
    }
}

impl MapDocument {
    pub fn to_named_map(&self, limits: &Limits) -> Result<NamedMap> {
        let n = self.variable_names.len();
        let components = self
            .assignments
            .iter()
            .map(|a| a.expr.expand(n, limits))
            .collect::<Result<Vec<_>>>()?;
        Ok(NamedMap {
            names: self.variable_names.clone(),
            targets: self.assignments.iter().map(|a| a.target.clone()).collect(),
            map: PolyMap::new(n, components)?,
        })
    }
}

pub fn parse_map(text: &str) -> Result<NamedMap> {
    parse_map_with(text, &Limits::default())
}

pub fn parse_map_with(text: &str, limits: &Limits) -> Result<NamedMap> {
    parse_document(text)?.to_named_map(limits)
}

/// Parses a single expression over the given variable names.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let toks = parser::lex(text)?;
    let mut p = parser::Parser::new(toks, names);
    let e = p.expr()?;
    p.end_of_line()?;
    if !p.at_eof() {
        return Err(Error::Parse { line: 1, col: 1, message: "trailing input after expression".into() });
    }
    e.expand(names.len(), &Limits::default())
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Canonical rendering of one polynomial.
pub fn render_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Canonical map text with components named `F1, F2, ...`.
pub fn render_map(f: &PolyMap, names: &[String]) -> Result<String> {
    if names.len() != f.domain_dim() {
        return Err(Error::dims(f.domain_dim(), names.len()));
    }
    if let Some(bad) = names.iter().find(|s| !is_ident(s) || *s == "vars") {
        return Err(Error::Invalid(format!("{bad:?} is not a usable variable name")));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::Invalid(format!("duplicate variable name {a:?}")));
        }
    }
    let mut out = format!("vars: {}\n", names.join(" "));
    for (i, p) in f.components().iter().enumerate() {
        out.push_str(&format!("F{} = {}\n", i + 1, render_polynomial(p, names)));
    }
    Ok(out)
}

/// Renders with the default names `x1, ..., xn`.
pub fn render_map_default(f: &PolyMap) -> String {
    render_map(f, &default_names(f.domain_dim())).expect("default names are valid")
}

fn json_err(msg: impl Into<String>) -> Error {
    Error::MatrixJson(msg.into())
}

fn json_dim(v: &Value, key: &str) -> Result<usize> {
    let d = v
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| json_err(format!("missing or non-integer \"{key}\"")))?;
    if d == 0 {
        return Err(json_err(format!("\"{key}\" must be positive")));
    }
    Ok(d as usize)
}

/// Parses `{"rows": r, "cols": c, "entries": [["a/b", ...], ...]}`.
pub fn parse_matrix(json: &str) -> Result<RatMatrix> {
    let v: Value = serde_json::from_str(json).map_err(|e| json_err(e.to_string()))?;
    let rows = json_dim(&v, "rows")?;
    let cols = json_dim(&v, "cols")?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("missing \"entries\" array"))?;
    if entries.len() != rows {
        return Err(json_err(format!("expected {rows} rows, found {}", entries.len())));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| json_err(format!("row {i} is not an array")))?;
        if row.len() != cols {
            return Err(json_err(format!("row {i}: expected {cols} entries, found {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            let r = match e {
                Value::String(s) => s.parse::<Rational>(),
                Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap())),
                other => Err(json_err(format!("entry ({i},{j}) must be a string, found {other}"))),
            };
            flat.push(r.map_err(|e| match e {
                Error::MatrixJson(_) => e,
                other => json_err(format!("entry ({i},{j}): {other}")),
            })?);
        }
    }
    RatMatrix::new(rows, cols, flat)
}

/// Renders a matrix in the JSON format accepted by [`parse_matrix`].
pub fn render_matrix(m: &RatMatrix) -> String {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
        .collect();
    let v = serde_json::json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}
