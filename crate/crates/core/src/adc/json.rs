//! `adc/v1`: `{max_degree, basis, boundary, augmentation}` with keys as
//! integer arrays (or nested pairs) and boundaries as `[[coef, key], …]`.
//! Object keys are the compact JSON text of the basis key.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::adc::complex::AdcComplex;
use crate::chain::{bigint_from_json, bigint_to_json, BasisKey, GradedChain};
use crate::error::{Error, Result};

pub const ADC_SCHEMA: &str = "adc/v1";

fn key_text(k: &BasisKey) -> String {
    k.to_json().to_string()
}

pub fn complex_to_json(k: &AdcComplex) -> Value {
    let basis: Vec<Value> = (0..=k.max_degree())
        .map(|p| Value::Array(k.basis(p).iter().map(BasisKey::to_json).collect()))
        .collect();
    let boundary: BTreeMap<String, Value> = k
        .boundary_table()
        .into_iter()
        .map(|(key, chain)| (key_text(key), chain.to_json()))
        .collect();
    let augmentation: BTreeMap<String, Value> = k
        .augmentation_table()
        .into_iter()
        .map(|(key, v)| (key_text(key), bigint_to_json(v)))
        .collect();
    json!({
        "schema": ADC_SCHEMA,
        "max_degree": k.max_degree(),
        "basis": basis,
        "boundary": boundary,
        "augmentation": augmentation,
    })
}

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_key_text(text: &str) -> Result<BasisKey> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| schema_err(format!("bad key {text}: {e}")))?;
    BasisKey::from_json(&v).ok_or_else(|| schema_err(format!("bad key {text}")))
}

pub fn complex_from_json(value: &Value) -> Result<AdcComplex> {
    if let Some(s) = value.get("schema").and_then(Value::as_str) {
        if s != ADC_SCHEMA {
            return Err(schema_err(format!("expected {ADC_SCHEMA}, found {s}")));
        }
    }
    let max_degree = value
        .get("max_degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("missing max_degree"))? as usize;
    let basis_json = value
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("missing basis"))?;
    if basis_json.len() != max_degree + 1 {
        return Err(schema_err("basis must list every degree up to max_degree"));
    }
    let mut basis = Vec::with_capacity(basis_json.len());
    let mut degree_of = HashMap::new();
    for (p, keys) in basis_json.iter().enumerate() {
        let keys = keys
            .as_array()
            .ok_or_else(|| schema_err("basis degree must be an array"))?;
        let mut parsed = Vec::with_capacity(keys.len());
        for kv in keys {
            let key = BasisKey::from_json(kv).ok_or_else(|| schema_err(format!("bad key {kv}")))?;
            degree_of.insert(key.clone(), p);
            parsed.push(key);
        }
        basis.push(parsed);
    }
    let empty = Map::new();
    let boundary_json = value
        .get("boundary")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let mut boundary = HashMap::new();
    for (text, terms) in boundary_json {
        let key = parse_key_text(text)?;
        let p = *degree_of
            .get(&key)
            .ok_or_else(|| Error::NotInBasis(text.clone()))?;
        let terms = terms
            .as_array()
            .ok_or_else(|| schema_err("boundary must be [[coef, key], …]"))?;
        let mut chain = GradedChain::zero(p.saturating_sub(1));
        for t in terms {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| schema_err("term must be [coef, key]"))?;
            let coef = bigint_from_json(&pair[0]).ok_or_else(|| schema_err("bad coefficient"))?;
            let tk = BasisKey::from_json(&pair[1]).ok_or_else(|| schema_err("bad term key"))?;
            chain.add_term(tk, coef);
        }
        boundary.insert(key, chain);
    }
    let aug_json = value
        .get("augmentation")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let mut augmentation = HashMap::new();
    for (text, v) in aug_json {
        augmentation.insert(
            parse_key_text(text)?,
            bigint_from_json(v).ok_or_else(|| schema_err("bad augmentation"))?,
        );
    }
    AdcComplex::new(basis, boundary, augmentation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::complex::{simplex_complex, tensor};

    #[test]
    fn round_trip_simplex_and_tensor() {
        for cx in [
            simplex_complex(3),
            tensor(&simplex_complex(1), &simplex_complex(2)),
        ] {
            let j = complex_to_json(&cx);
            let back = complex_from_json(&j).unwrap();
            assert_eq!(back, cx);
            // deterministic text
            assert_eq!(j.to_string(), complex_to_json(&back).to_string());
        }
    }

    #[test]
    fn boundary_text_matches_layout() {
        let j = complex_to_json(&simplex_complex(1));
        assert_eq!(j["boundary"]["[0,1]"], json!([[-1, [0]], [1, [1]]]));
        assert_eq!(j["augmentation"]["[0]"], json!(1));
        assert_eq!(j["basis"], json!([[[0], [1]], [[0, 1]]]));
    }

    #[test]
    fn rejects_wrong_schema_and_unknown_keys() {
        let mut j = complex_to_json(&simplex_complex(1));
        j["schema"] = json!("sset/v1");
        assert!(complex_from_json(&j).is_err());
        let mut j = complex_to_json(&simplex_complex(1));
        j["boundary"]["[5,6]"] = json!([]);
        assert!(complex_from_json(&j).is_err());
    }
}
