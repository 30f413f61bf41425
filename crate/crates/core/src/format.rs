//! JSON file format for tri-dendriform algebras.
//!
//! ```json
//! {
//!   "name": "tridend_1d",
//!   "dim": 1,
//!   "prec": [[0, 0, 0, "1/1"]],
//!   "succ": [[0, 0, 0, "1/1"]],
//!   "dot": [[0, 0, 0, "-1/1"]]
//! }
//! ```
//!
//! An entry `[i, j, k, "p/q"]` sets the coefficient of `e_k` in `e_i op e_j`
//! (zero-based). Unlisted entries are zero.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{StructureTable, TriDendAlgebra, TriOp};
use crate::exactlin::{format_rational, parse_rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: String,
    dim: usize,
    #[serde(default)]
    prec: Vec<Value>,
    #[serde(default)]
    succ: Vec<Value>,
    #[serde(default)]
    dot: Vec<Value>,
}

fn op_key(op: TriOp) -> &'static str {
    match op {
        TriOp::Prec => "prec",
        TriOp::Succ => "succ",
        TriOp::Dot => "dot",
    }
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<TriDendAlgebra, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let dim = raw.dim;
    let mut tables = Vec::with_capacity(3);
    for (op, entries) in [
        (TriOp::Prec, &raw.prec),
        (TriOp::Succ, &raw.succ),
        (TriOp::Dot, &raw.dot),
    ] {
        let mut table = StructureTable::zeros(dim);
        let mut seen = BTreeSet::new();
        for (n, entry) in entries.iter().enumerate() {
            let field = format!("{}[{n}]", op_key(op));
            let parts = entry
                .as_array()
                .filter(|p| p.len() == 4)
                .ok_or_else(|| field_error(&field, "expected [i, j, k, \"p/q\"]"))?;
            let mut idx = [0usize; 3];
            for (slot, value) in idx.iter_mut().zip(&parts[..3]) {
                let i = value.as_u64().ok_or_else(|| {
                    field_error(
                        &field,
                        format!("index {value} is not a non-negative integer"),
                    )
                })? as usize;
                if i >= dim {
                    return Err(field_error(
                        &field,
                        format!("index {i} out of range for dim {dim}"),
                    ));
                }
                *slot = i;
            }
            let text = parts[3]
                .as_str()
                .ok_or_else(|| field_error(&field, "coefficient must be a string \"p/q\""))?;
            let value = parse_rational(text).map_err(|e| field_error(&field, e.to_string()))?;
            if !seen.insert(idx) {
                return Err(field_error(
                    &field,
                    format!("duplicate entry for ({}, {}, {})", idx[0], idx[1], idx[2]),
                ));
            }
            table.set(idx[0], idx[1], idx[2], value);
        }
        tables.push(table);
    }
    let dot = tables.pop().expect("three tables");
    let succ = tables.pop().expect("three tables");
    let prec = tables.pop().expect("three tables");
    Ok(TriDendAlgebra::new(raw.name, prec, succ, dot).expect("tables share dim"))
}

/// Canonical text: entries sorted by `(i, j, k)`, zeros omitted, rationals in
/// lowest terms as `"p/q"`, one entry per line.
pub fn serialize_algebra(b: &TriDendAlgebra) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"name\": {},\n  \"dim\": {}",
        Value::String(b.name().to_string()),
        b.dim()
    ));
    for op in TriOp::ALL {
        let entries: Vec<String> = b
            .table(op)
            .nonzero_entries()
            .into_iter()
            .filter(|(_, _, _, v)| !v.is_zero())
            .map(|(i, j, k, v)| format!("    [{i}, {j}, {k}, \"{}\"]", format_rational(&v)))
            .collect();
        if entries.is_empty() {
            out.push_str(&format!(",\n  \"{}\": []", op_key(op)));
        } else {
            out.push_str(&format!(
                ",\n  \"{}\": [\n{}\n  ]",
                op_key(op),
                entries.join(",\n")
            ));
        }
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn roundtrip_fixtures() {
        for b in [
            fixtures::example_1d(),
            fixtures::example_2d(),
            fixtures::example_1d_broken(),
            fixtures::example_2d_broken(),
            fixtures::zero_algebra(2),
        ] {
            let text = serialize_algebra(&b);
            let parsed = parse_algebra(&text).unwrap();
            assert_eq!(parsed, b);
            assert_eq!(serialize_algebra(&parsed), text);
        }
    }

    #[test]
    fn canonicalizes() {
        let text = r#"{"name": "t", "dim": 1, "dot": [[0, 0, 0, "-2/2"]], "prec": [[0,0,0,"0"]]}"#;
        let b = parse_algebra(text).unwrap();
        let canon = serialize_algebra(&b);
        assert!(canon.contains("\"-1/1\""));
        assert!(canon.contains("\"prec\": []"));
        assert_eq!(serialize_algebra(&parse_algebra(&canon).unwrap()), canon);
    }

    #[test]
    fn diagnostics() {
        let err = |t: &str| parse_algebra(t).unwrap_err().to_string();
        assert_eq!(
            err(r#"{"name": "t", "dim": 1, "prec": [[0, 0, 0, "1"], [0, 1, 0, "1"]]}"#),
            "prec[1]: index 1 out of range for dim 1"
        );
        assert!(err(r#"{"name": "t", "dim": 1, "dot": [[0, 0, 0, "1/0"]]}"#)
            .starts_with("dot[0]: zero denominator"));
        assert!(
            err(r#"{"name": "t", "dim": 1, "succ": [[0, 0, 0, "x"]]}"#).starts_with("succ[0]: ")
        );
        assert!(err(r#"{"name": "t", "dim": 1, "succ": [[0, 0, 0, 1]]}"#).contains("string"));
        assert!(
            err(r#"{"name": "t", "dim": 1, "succ": [[0, 0, 0, "1"], [0, 0, 0, "2"]]}"#)
                .contains("duplicate")
        );
        assert!(err("{\"name\": \"t\",\n \"dim\": }").starts_with("invalid JSON at line 2"));
        assert!(err(r#"{"name": "t", "dim": 1, "extra": 1}"#).contains("unknown field"));
    }
}
