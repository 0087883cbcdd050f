//! Reports and their two renderings.
//!
//! The machine format is JSON with sorted keys:
//!
//! ```text
//! {
//!   "command": "duality",
//!   "input_digest": "<sha256 of the model file>",
//!   "parameters": { "max_codegree": 30, ... },
//!   "results": { ... },
//!   "status": "ok" | "refusal" | "inconclusive" | "failed",
//!   "warnings": [ ... ]
//! }
//! ```
//!
//! Series and Laurent polynomials are arrays of `[exponent, numerator,
//! denominator]` triples listing the nonzero coefficients. Certificates are
//! arrays of move records tagged by `"move"`; verdicts are records tagged by
//! `"kind"`. Integers too large for 64 bits are written as decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use sullivan_core::series::{LaurentPoly, LaurentSeries, RationalFunction, RationalSeriesForm};
use sullivan_core::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A mathematical verdict against the input, backed by a certificate.
    Refusal,
    /// The window was too short to decide.
    Inconclusive,
    /// A self-check did not hold.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

pub fn int(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn triple(e: i64, c: &Rational) -> Value {
    json!([e, int(c.numer()), int(c.denom())])
}

pub fn series_triples(s: &LaurentSeries) -> Value {
    Value::Array(s.iter().filter(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(e, c)| triple(e, c)).collect())
}

pub fn poly_triples(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().iter().map(|(&e, c)| triple(e, c)).collect())
}

/// A windowed series: nonzero triples plus the window it is exact on.
pub fn series_value(s: &LaurentSeries) -> Value {
    json!({ "lo": s.lo(), "hi": s.hi(), "coefficients": series_triples(s) })
}

pub fn form_value(f: &RationalSeriesForm) -> Value {
    json!({
        "numerator": poly_triples(f.numerator()),
        "denominator_degrees": f.denominator(),
        "display": f.to_string(),
    })
}

pub fn rational_function_value(r: &RationalFunction) -> Value {
    json!({
        "numerator": poly_triples(r.numerator()),
        "denominator": poly_triples(r.denominator()),
        "display": r.to_string(),
    })
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

pub fn parse_machine(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let status = serde_json::to_value(r.status).expect("status serializes");
    let _ = writeln!(out, "command: {}", r.command);
    let _ = writeln!(out, "status: {}", status.as_str().unwrap_or_default());
    let _ = writeln!(out, "input sha256: {}", r.input_digest);
    if let Some(summary) = r.results.get("summary").and_then(Value::as_str) {
        let _ = writeln!(out, "summary: {summary}");
    }
    out.push_str("parameters:\n");
    for (k, v) in &r.parameters {
        write_value(&mut out, k, v, 1);
    }
    out.push_str("results:\n");
    if let Value::Object(map) = &r.results {
        for (k, v) in map.iter().filter(|(k, _)| k.as_str() != "summary") {
            write_value(&mut out, k, v, 1);
        }
    } else {
        write_value(&mut out, "value", &r.results, 1);
    }
    if r.warnings.is_empty() {
        out.push_str("warnings: none\n");
    } else {
        out.push_str("warnings:\n");
        for w in &r.warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                write_value(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                write_value(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sullivan_core::gca::rat;

    fn sample() -> Report {
        Report {
            command: "hilbert".into(),
            input_digest: digest("algebra X\n"),
            status: Status::Ok,
            parameters: BTreeMap::from([("max_codegree".to_string(), json!(24))]),
            results: json!({ "summary": "ok", "series": series_triples(&LaurentSeries::from_ints(0, &[1, 0, 2])) }),
            warnings: vec![],
        }
    }

    #[test]
    fn series_serialize_as_integer_triples() {
        let s = LaurentSeries::from_ints(0, &[1, 0, 2]);
        assert_eq!(series_triples(&s), json!([[0, 1, 1], [2, 2, 1]]));
        let p = LaurentPoly::from_terms([(-2, Rational::new(1.into(), 3.into())), (1, rat(-4))]);
        assert_eq!(poly_triples(&p), json!([[-2, 1, 3], [1, -4, 1]]));
    }

    #[test]
    fn empty_warnings_serialize_as_an_empty_array() {
        let text = emit(&sample(), Format::Machine);
        assert!(text.contains("\"warnings\": []"), "{text}");
    }

    #[test]
    fn machine_format_round_trips() {
        let r = sample();
        assert_eq!(parse_machine(&emit(&r, Format::Machine)).unwrap(), r);
    }

    #[test]
    fn huge_integers_become_strings() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&n), json!("123456789012345678901234567890"));
        assert_eq!(int(&BigInt::from(-7)), json!(-7));
    }

    #[test]
    fn text_format() {
        let text = emit(&sample(), Format::Text);
        let expected = format!(
            "command: hilbert\nstatus: ok\ninput sha256: {}\nsummary: ok\nparameters:\n  max_codegree: 24\nresults:\n  series: [[0, 1, 1], [2, 2, 1]]\nwarnings: none\n",
            digest("algebra X\n")
        );
        assert_eq!(text, expected);
    }

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(digest(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
