//! `sset/v1`: `{truncation, simplices, faces, degeneracies}` where
//! `simplices[p]` lists the names of the `p`-simplices and
//! `faces["p"][x]`, `degeneracies["p"][x]` list simplex indices.
//! `smap/v1`: `{source, target, levels}` with embedded `sset/v1` objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::simplicial::sset::{SimplicialMap, SimplicialTruncation};

pub const SSET_SCHEMA: &str = "sset/v1";
pub const SMAP_SCHEMA: &str = "smap/v1";

pub fn sset_to_json(x: &SimplicialTruncation) -> Value {
    let d = x.truncation();
    let simplices: Vec<&[Vec<i64>]> = (0..=d).map(|p| x.names(p)).collect();
    let faces: BTreeMap<String, Vec<Vec<usize>>> = (1..=d)
        .map(|p| {
            (
                p.to_string(),
                (0..x.count(p))
                    .map(|s| (0..=p).map(|i| x.face(p, i, s)).collect())
                    .collect(),
            )
        })
        .collect();
    let degeneracies: BTreeMap<String, Vec<Vec<usize>>> = (0..d)
        .map(|p| {
            (
                p.to_string(),
                (0..x.count(p))
                    .map(|s| (0..=p).map(|i| x.degeneracy(p, i, s)).collect())
                    .collect(),
            )
        })
        .collect();
    json!({
        "schema": SSET_SCHEMA,
        "truncation": d,
        "simplices": simplices,
        "faces": faces,
        "degeneracies": degeneracies,
    })
}

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn check_schema(value: &Value, expected: &str) -> Result<()> {
    match value.get("schema").and_then(Value::as_str) {
        Some(s) if s != expected => Err(schema_err(format!("expected {expected}, found {s}"))),
        _ => Ok(()),
    }
}

fn table(
    value: &Value,
    field: &str,
    p: usize,
    count: usize,
    width: usize,
) -> Result<Vec<Vec<usize>>> {
    if width == 0 {
        return Ok(vec![Vec::new(); count]);
    }
    let rows = value
        .get(field)
        .and_then(|t| t.get(p.to_string()))
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err(format!("missing {field}[{p}]")))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| schema_err(format!("{field}[{p}] rows must be arrays")))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|v| v as usize)
                        .ok_or_else(|| schema_err(format!("{field}[{p}] entries must be indices")))
                })
                .collect()
        })
        .collect()
}

pub fn sset_from_json(value: &Value) -> Result<SimplicialTruncation> {
    check_schema(value, SSET_SCHEMA)?;
    let d = value
        .get("truncation")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("missing truncation"))? as usize;
    let simplices = value
        .get("simplices")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("missing simplices"))?;
    if simplices.len() != d + 1 {
        return Err(schema_err(
            "simplices must list every degree up to the truncation",
        ));
    }
    let mut names = Vec::with_capacity(d + 1);
    for (p, level) in simplices.iter().enumerate() {
        let level = level
            .as_array()
            .ok_or_else(|| schema_err(format!("simplices[{p}] must be an array")))?;
        let parsed = level
            .iter()
            .map(|n| {
                n.as_array()
                    .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<i64>>>())
                    .ok_or_else(|| {
                        schema_err(format!(
                            "simplex names in degree {p} must be integer arrays"
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        names.push(parsed);
    }
    let mut faces = Vec::with_capacity(d + 1);
    let mut degeneracies = Vec::with_capacity(d + 1);
    for (p, level) in names.iter().enumerate() {
        faces.push(table(
            value,
            "faces",
            p,
            level.len(),
            if p == 0 { 0 } else { p + 1 },
        )?);
        degeneracies.push(table(
            value,
            "degeneracies",
            p,
            level.len(),
            if p < d { p + 1 } else { 0 },
        )?);
    }
    SimplicialTruncation::new(d, names, faces, degeneracies)
}

pub fn smap_to_json(f: &SimplicialMap) -> Value {
    json!({
        "schema": SMAP_SCHEMA,
        "source": sset_to_json(f.source()),
        "target": sset_to_json(f.target()),
        "levels": f.levels(),
    })
}

pub fn smap_from_json(value: &Value) -> Result<SimplicialMap> {
    check_schema(value, SMAP_SCHEMA)?;
    let source = sset_from_json(
        value
            .get("source")
            .ok_or_else(|| schema_err("missing source"))?,
    )?;
    let target = sset_from_json(
        value
            .get("target")
            .ok_or_else(|| schema_err("missing target"))?,
    )?;
    let levels: Vec<Vec<usize>> =
        serde_json::from_value(value.get("levels").cloned().unwrap_or(Value::Null))
            .map_err(|e| schema_err(format!("levels: {e}")))?;
    SimplicialMap::new(Arc::new(source), Arc::new(target), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_of_simplex, homology, representable, standard_simplex};

    #[test]
    fn round_trip_preserves_structure_and_homology() {
        let x = boundary_of_simplex(3, 3);
        let j = sset_to_json(&x);
        let back = sset_from_json(&j).unwrap();
        assert_eq!(back, x);
        assert_eq!(homology(&back, 2).unwrap(), homology(&x, 2).unwrap());
        let text = serde_json::to_string(&j).unwrap();
        let again = sset_to_json(&sset_from_json(&serde_json::from_str(&text).unwrap()).unwrap());
        assert_eq!(again, j);
    }

    #[test]
    fn layout() {
        let j = sset_to_json(&standard_simplex(1, 1));
        assert_eq!(
            j["simplices"],
            json!([[[0], [1]], [[0, 0], [0, 1], [1, 1]]])
        );
        assert_eq!(j["faces"]["1"], json!([[0, 0], [1, 0], [1, 1]]));
        assert_eq!(j["degeneracies"]["0"], json!([[0], [2]]));
    }

    #[test]
    fn maps_round_trip() {
        let f = representable(Arc::new(standard_simplex(2, 2)), 1, 3).unwrap();
        let back = smap_from_json(&smap_to_json(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_bad_input() {
        let mut j = sset_to_json(&standard_simplex(1, 1));
        j["schema"] = json!("adc/v1");
        assert!(matches!(sset_from_json(&j), Err(Error::Schema(_))));
        let mut j = sset_to_json(&standard_simplex(1, 2));
        j["faces"]["2"][1] = json!([0, 0, 0]);
        assert!(matches!(
            sset_from_json(&j),
            Err(Error::InvalidSimplicial(_))
        ));
        let mut j = sset_to_json(&standard_simplex(1, 1));
        j["simplices"][0] = json!([[0], [0]]);
        assert!(sset_from_json(&j).is_err());
    }
}
