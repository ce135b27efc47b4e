//! Job configuration: a versioned JSON document describing the field, its
//! generator and run parameters.

use serde_json::Value;

use crate::declaw::DEFAULT_TRIAL_BOUND;
use crate::error::{Error, Result};
use crate::exactmath::rational::{parse_rational, Rational};
use crate::exactmath::PolyQ;

pub const SCHEMA_VERSION: u64 = 1;
pub const TRIAL_BOUND_ENV: &str = "SPLITSEQ_TRIAL_BOUND";
pub const DEFAULT_PRECISION_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Coefficients of `ξ` in the power basis of the base field.
    Coefficients(Vec<Rational>),
    /// Search for a normal-basis generator.
    Search,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    /// `L = Q[x]/(F)` with `ξ = x`.
    Polynomial(PolyQ),
    /// `L = Q[a]/(G)` with an explicit or searched `ξ`.
    Base { base: PolyQ, generator: Generator },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seeds {
    pub generator: u64,
    pub factor: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub field: FieldSpec,
    pub automorphisms: Option<Vec<Vec<Rational>>>,
    pub class_order: Option<Vec<usize>>,
    pub seeds: Seeds,
    pub precision_cap: u64,
    pub trial_bound: u64,
    pub format: OutputFormat,
}

impl JobConfig {
    pub fn modulus(&self) -> &PolyQ {
        match &self.field {
            FieldSpec::Polynomial(f) => f,
            FieldSpec::Base { base, .. } => base,
        }
    }
}

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::config(path, msg)
}

fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            if n.is_f64() {
                return Err(err(path, format!("{text} is not an exact rational; write it as \"num/den\"")));
            }
            parse_rational(&text).map_err(|e| err(path, e.to_string()))
        }
        Value::String(s) => parse_rational(s).map_err(|e| err(path, e.to_string())),
        _ => Err(err(path, "expected an integer or a \"num/den\" string")),
    }
}

fn rational_list(v: &Value, path: &str) -> Result<Vec<Rational>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected a list"))?;
    if items.is_empty() {
        return Err(err(path, "list is empty"));
    }
    items.iter().enumerate().map(|(i, x)| rational_at(x, &format!("{path}[{i}]"))).collect()
}

/// Ascending integer coefficients with leading coefficient 1.
fn monic_integer_poly(v: &Value, path: &str) -> Result<PolyQ> {
    let coeffs = rational_list(v, path)?;
    if let Some(i) = coeffs.iter().position(|c| !c.is_integer()) {
        return Err(err(&format!("{path}[{i}]"), "coefficients must be integers"));
    }
    if coeffs.len() < 2 {
        return Err(err(path, "degree must be at least 1"));
    }
    let lead = coeffs.last().unwrap();
    if *lead != Rational::from_integer(1.into()) {
        return Err(err(&format!("{path}[{}]", coeffs.len() - 1), format!("polynomial is not monic (leading coefficient {lead})")));
    }
    Ok(PolyQ::new(coeffs))
}

fn u64_at(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn trial_bound_default() -> Result<u64> {
    match std::env::var(TRIAL_BOUND_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| err(TRIAL_BOUND_ENV, format!("not a non-negative integer: {s:?}"))),
        Err(_) => Ok(DEFAULT_TRIAL_BOUND),
    }
}

const KNOWN_KEYS: [&str; 8] =
    ["schemaVersion", "field", "automorphisms", "classOrder", "seeds", "precisionCap", "trialDivisionBound", "format"];

/// Parses and validates a configuration document, filling defaults.
pub fn parse_config(text: &str) -> Result<JobConfig> {
    let doc: Value = serde_json::from_str(text).map_err(|e| err("$", format!("malformed JSON: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| err("$", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(err(&format!("$.{k}"), "unknown key"));
    }
    match obj.get("schemaVersion") {
        None => {}
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(err("$.schemaVersion", format!("unsupported version {v}; expected {SCHEMA_VERSION}"))),
    }

    let field = obj.get("field").ok_or_else(|| err("$.field", "missing"))?;
    let fobj = field.as_object().ok_or_else(|| err("$.field", "expected an object"))?;
    let field = match (fobj.get("polynomial"), fobj.get("base")) {
        (Some(p), None) => {
            if fobj.contains_key("generator") {
                return Err(err("$.field.generator", "only allowed together with \"base\""));
            }
            FieldSpec::Polynomial(monic_integer_poly(p, "$.field.polynomial")?)
        }
        (None, Some(b)) => {
            let base = monic_integer_poly(b, "$.field.base")?;
            let generator = match fobj.get("generator") {
                None => return Err(err("$.field.generator", "missing")),
                Some(Value::String(s)) if s == "search" => Generator::Search,
                Some(g) => {
                    let c = rational_list(g, "$.field.generator")?;
                    if c.len() > base.degree().unwrap_or(0) {
                        return Err(err("$.field.generator", "more coefficients than the base degree"));
                    }
                    Generator::Coefficients(c)
                }
            };
            FieldSpec::Base { base, generator }
        }
        _ => return Err(err("$.field", "exactly one of \"polynomial\" or \"base\" is required")),
    };

    let automorphisms = match obj.get("automorphisms") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let items = v.as_array().ok_or_else(|| err("$.automorphisms", "expected a list"))?;
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| rational_list(x, &format!("$.automorphisms[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };

    let class_order = match obj.get("classOrder") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let items = v.as_array().ok_or_else(|| err("$.classOrder", "expected a list"))?;
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| u64_at(x, &format!("$.classOrder[{i}]")).map(|n| n as usize))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };

    let mut seeds = Seeds { generator: 0, factor: 0 };
    if let Some(s) = obj.get("seeds") {
        let s = s.as_object().ok_or_else(|| err("$.seeds", "expected an object"))?;
        for (k, v) in s {
            let path = format!("$.seeds.{k}");
            match k.as_str() {
                "generator" => seeds.generator = u64_at(v, &path)?,
                "factor" => seeds.factor = u64_at(v, &path)?,
                _ => return Err(err(&path, "unknown seed")),
            }
        }
    }

    let precision_cap = match obj.get("precisionCap") {
        Some(v) => u64_at(v, "$.precisionCap")?,
        None => DEFAULT_PRECISION_CAP,
    };
    let trial_bound = match obj.get("trialDivisionBound") {
        Some(v) => u64_at(v, "$.trialDivisionBound")?,
        None => trial_bound_default()?,
    };
    let format = match obj.get("format").map(|v| v.as_str()) {
        None => OutputFormat::Json,
        Some(Some("json")) => OutputFormat::Json,
        Some(Some("table")) => OutputFormat::Table,
        Some(_) => return Err(err("$.format", "expected \"json\" or \"table\"")),
    };

    Ok(JobConfig { field, automorphisms, class_order, seeds, precision_cap, trial_bound, format })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn golden_minimal() {
        let c = parse_config(r#"{"field": {"polynomial": [-1, -1, 1]}}"#).unwrap();
        assert_eq!(c.field, FieldSpec::Polynomial(PolyQ::from_ints(&[-1, -1, 1])));
        assert_eq!(c.format, OutputFormat::Json);
        assert!(c.class_order.is_none());
    }

    #[test]
    fn base_with_generator() {
        let c = parse_config(
            r#"{"schemaVersion": 1, "field": {"base": [64, 0, 1856, 0, 4, 0, 266, 0, -7, 0, 8, 0, 1],
                "generator": [-1, "1/2", 1, "-1/4", "1/2", "-3/8", 0, "-1/4", 0, "-1/8"]},
                "classOrder": [0, 1, 2, 3], "seeds": {"factor": 3}}"#,
        )
        .unwrap();
        match c.field {
            FieldSpec::Base { generator: Generator::Coefficients(g), .. } => assert_eq!(g[5], rat(-3, 8)),
            other => panic!("{other:?}"),
        }
        assert_eq!(c.seeds.factor, 3);
    }

    #[test]
    fn errors_carry_paths() {
        let cases = [
            (r#"{"field": {"polynomial": [-1, -1, 2]}}"#, "$.field.polynomial[2]"),
            (r#"{"field": {"polynomial": []}}"#, "$.field.polynomial"),
            (r#"{"field": {"polynomial": [1, "1/2", 1]}}"#, "$.field.polynomial[1]"),
            (r#"{"field": {"base": [1, 0, 1], "generator": ["1/0"]}}"#, "$.field.generator[0]"),
            (r#"{"field": {"polynomial": [1, 1], "base": [1, 1]}}"#, "$.field"),
            (r#"{"schemaVersion": 2, "field": {"polynomial": [1, 1]}}"#, "$.schemaVersion"),
            (r#"{"field": {"polynomial": [1, 1]}, "bogus": 1}"#, "$.bogus"),
            (r#"{"field": {"polynomial": [1, 1.5]}}"#, "$.field.polynomial[1]"),
        ];
        for (text, path) in cases {
            match parse_config(text) {
                Err(Error::Config { path: p, .. }) => assert_eq!(p, path, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
