//! The JSON arc document: parsing, validation, and canonical printing.
//!
//! Canonical form sorts keys, writes every coefficient as a reduced
//! fraction string with positive denominator (plain integers stay plain),
//! and trims trailing zero coefficients.

use arcval::scalar::{parse_fp, parse_rat, Fp, Rat};
use arcval::{Arc, Series};
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CmdError;

pub const ARC_SCHEMA: &str = "arcval.arc.v1";

/// Which exact field a document's coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl FieldTag {
    pub fn parse(s: &str) -> Result<Self, CmdError> {
        if s == "rational" {
            return Ok(FieldTag::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p
                .parse()
                .map_err(|_| CmdError::usage(format!("invalid prime in field tag `{s}`")))?;
            if p < 2 || !is_prime(p) {
                return Err(CmdError::usage(format!("{p} is not a prime")));
            }
            if p > 1 << 20 {
                return Err(CmdError::usage(format!(
                    "prime {p} is too large for this tool (max 2^20)"
                )));
            }
            return Ok(FieldTag::Prime(p));
        }
        Err(CmdError::usage(format!(
            "unknown field `{s}`; expected \"rational\" or \"prime:p\""
        )))
    }

    pub fn render(&self) -> String {
        match self {
            FieldTag::Rational => "rational".into(),
            FieldTag::Prime(p) => format!("prime:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Deserialize)]
struct RawDocument {
    #[serde(default)]
    schema: Option<String>,
    field: String,
    n: usize,
    precision: usize,
    components: Vec<Vec<Value>>,
}

/// An arc read from disk, dispatched on its coefficient field.
#[derive(Debug, Clone)]
pub enum LoadedArc {
    Rational(Arc<Rat>),
    Prime(Arc<Fp>, u64),
}

impl LoadedArc {
    pub fn field(&self) -> FieldTag {
        match self {
            LoadedArc::Rational(_) => FieldTag::Rational,
            LoadedArc::Prime(_, p) => FieldTag::Prime(*p),
        }
    }
}

fn scalar_str(v: &Value, position: &str) -> Result<String, CmdError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(CmdError::usage(format!(
            "{position}: expected an integer or a string \"a/b\", got {other}"
        ))),
    }
}

pub fn parse_document(text: &str) -> Result<LoadedArc, CmdError> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| CmdError::usage(format!("invalid arc document: {e}")))?;
    if let Some(schema) = &raw.schema {
        if schema != ARC_SCHEMA {
            return Err(CmdError::usage(format!(
                "unsupported schema `{schema}`; this tool reads {ARC_SCHEMA}"
            )));
        }
    }
    if raw.precision == 0 {
        return Err(CmdError::usage("precision must be positive"));
    }
    if raw.components.len() != raw.n {
        return Err(CmdError::usage(format!(
            "declared n = {} but found {} component lists",
            raw.n,
            raw.components.len()
        )));
    }
    for (i, comp) in raw.components.iter().enumerate() {
        if comp.len() > raw.precision - 1 {
            return Err(CmdError::usage(format!(
                "component {}: {} coefficients exceed precision {} (indices start at t^1)",
                i + 1,
                comp.len(),
                raw.precision
            )));
        }
    }
    let tag = FieldTag::parse(&raw.field)?;
    match tag {
        FieldTag::Rational => {
            let components = build_components(&raw, |s, pos| {
                parse_rat(s).map_err(|m| CmdError::usage(format!("{pos}: {m}")))
            })?;
            Ok(LoadedArc::Rational(
                Arc::new(components).map_err(CmdError::from)?,
            ))
        }
        FieldTag::Prime(p) => {
            let components = build_components(&raw, |s, pos| {
                parse_fp(s, p).map_err(|m| CmdError::usage(format!("{pos}: {m}")))
            })?;
            Ok(LoadedArc::Prime(
                Arc::new(components).map_err(CmdError::from)?,
                p,
            ))
        }
    }
}

fn build_components<F: arcval::scalar::Field>(
    raw: &RawDocument,
    parse: impl Fn(&str, &str) -> Result<F, CmdError>,
) -> Result<Vec<Series<F>>, CmdError> {
    let mut components = Vec::with_capacity(raw.n);
    for (i, comp) in raw.components.iter().enumerate() {
        let mut coeffs = vec![F::zero(); raw.precision];
        for (j, v) in comp.iter().enumerate() {
            let pos = format!("component {}, coefficient of t^{}", i + 1, j + 1);
            let s = scalar_str(v, &pos)?;
            coeffs[j + 1] = parse(&s, &pos)?;
        }
        components.push(Series::new(coeffs));
    }
    Ok(components)
}

/// Canonical scalar rendering: reduced fraction with positive denominator,
/// or a bare integer.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn component_values_rat(s: &Series<Rat>) -> Vec<Value> {
    let mut out: Vec<Value> = s.coeffs()[1..]
        .iter()
        .map(|c| Value::String(rat_str(c)))
        .collect();
    while out.last().is_some_and(|v| v == "0") {
        out.pop();
    }
    out
}

fn component_values_fp(s: &Series<Fp>) -> Vec<Value> {
    let mut out: Vec<Value> = s.coeffs()[1..]
        .iter()
        .map(|c| Value::String(c.residue().to_string()))
        .collect();
    while out.last().is_some_and(|v| v == "0") {
        out.pop();
    }
    out
}

/// Canonical document for an arc: sorted keys, reduced coefficient strings,
/// no trailing zeros. `parse(print(doc))` reproduces the same bytes.
pub fn print_document(arc: &LoadedArc) -> String {
    let (field, n, precision, components): (String, usize, usize, Vec<Value>) = match arc {
        LoadedArc::Rational(a) => (
            FieldTag::Rational.render(),
            a.dim(),
            a.precision(),
            a.components()
                .iter()
                .map(|c| Value::Array(component_values_rat(c)))
                .collect(),
        ),
        LoadedArc::Prime(a, p) => (
            FieldTag::Prime(*p).render(),
            a.dim(),
            a.precision(),
            a.components()
                .iter()
                .map(|c| Value::Array(component_values_fp(c)))
                .collect(),
        ),
    };
    let doc = json!({
        "components": components,
        "field": field,
        "n": n,
        "precision": precision,
        "schema": ARC_SCHEMA,
    });
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARABOLA: &str = r#"{
        "schema": "arcval.arc.v1",
        "field": "rational",
        "n": 2,
        "precision": 8,
        "components": [["1"], [0, "1"]]
    }"#;

    #[test]
    fn parses_and_reprints_canonically() {
        let arc = parse_document(PARABOLA).unwrap();
        let printed = print_document(&arc);
        let reparsed = parse_document(&printed).unwrap();
        assert_eq!(printed, print_document(&reparsed), "round trip is stable");
        // canonical form drops the inner zero-padding representation
        assert!(printed.contains("\"components\""));
        let LoadedArc::Rational(a) = arc else {
            panic!("expected a rational document")
        };
        assert_eq!(a.dim(), 2);
        assert_eq!(a.precision(), 8);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(parse_document("{}").is_err());
        let bad_field = PARABOLA.replace("rational", "real");
        assert!(parse_document(&bad_field).is_err());
        let bad_n = PARABOLA.replace("\"n\": 2", "\"n\": 3");
        assert!(parse_document(&bad_n).is_err());
        let bad_scalar = PARABOLA.replace("\"1\"", "\"1/0\"");
        assert!(parse_document(&bad_scalar).is_err());
    }

    #[test]
    fn prime_documents_reduce_mod_p() {
        let doc = r#"{
            "field": "prime:7",
            "n": 2,
            "precision": 6,
            "components": [["10"], ["1/2"]]
        }"#;
        let arc = parse_document(doc).unwrap();
        let LoadedArc::Prime(a, 7) = arc else {
            panic!("expected F_7")
        };
        assert_eq!(a.component(0).coeff(1).residue(), 3);
        assert_eq!(a.component(1).coeff(1).residue(), 4);
    }

    #[test]
    fn nonprime_moduli_are_rejected() {
        let doc = r#"{"field": "prime:6", "n": 2, "precision": 4, "components": [[], []]}"#;
        assert!(parse_document(doc).is_err());
    }
}
