//! Commutative monoids `M` for `K(M, n)`: finite addition tables, or finite
//! windows `[lo, hi]` of the integers with addition taken in `Z`.

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const MONOID_SCHEMA: &str = "monoid/v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// Elements are indices into `elements`; `add[a][b]` is `a + b`.
    /// `order[a][b]` is `a ≤ b` when present.
    Table {
        elements: Vec<String>,
        unit: usize,
        add: Vec<Vec<usize>>,
        order: Option<Vec<Vec<bool>>>,
    },
    /// The integers in `[lo, hi]`, values are the integers themselves.
    Window { lo: i64, hi: i64, ordered: bool },
}

/// A commutative monoid with an optional translation-invariant order.
///
/// Values are `i64`: element indices for tables, integers for windows. Sums
/// of window values are computed in `Z` and may leave the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSpec {
    pub name: String,
    pub kind: MonoidKind,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidMonoid(msg.into())
}

impl MonoidSpec {
    /// Validates the table axioms and, when given, the order axioms.
    pub fn table(
        name: impl Into<String>,
        elements: Vec<String>,
        unit: usize,
        add: Vec<Vec<usize>>,
        order: Option<Vec<Vec<bool>>>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 || unit >= n {
            return Err(bad("need at least one element and a unit among them"));
        }
        if add.len() != n
            || add
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
        {
            return Err(bad("addition table must be square over the elements"));
        }
        let mut seen = std::collections::HashSet::new();
        if !elements.iter().all(|e| seen.insert(e)) {
            return Err(bad("duplicate element names"));
        }
        for a in 0..n {
            if add[unit][a] != a || add[a][unit] != a {
                return Err(bad(format!("unit law fails at {}", elements[a])));
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return Err(bad(format!(
                        "not commutative at ({}, {})",
                        elements[a], elements[b]
                    )));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return Err(bad(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        if let Some(le) = &order {
            if le.len() != n || le.iter().any(|r| r.len() != n) {
                return Err(bad("order table must be square over the elements"));
            }
            for a in 0..n {
                if !le[a][a] {
                    return Err(bad("order is not reflexive"));
                }
                for b in 0..n {
                    if a != b && le[a][b] && le[b][a] {
                        return Err(bad("order is not antisymmetric"));
                    }
                    for c in 0..n {
                        if le[a][b] && le[b][c] && !le[a][c] {
                            return Err(bad("order is not transitive"));
                        }
                        if le[a][b] && !le[add[a][c]][add[b][c]] {
                            return Err(bad("order is not translation invariant"));
                        }
                    }
                }
            }
        }
        Ok(Self {
            name: name.into(),
            kind: MonoidKind::Table {
                elements,
                unit,
                add,
                order,
            },
        })
    }

    /// `Z/k`, elements named `0..k-1`.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(bad("Z/0 is not finite"));
        }
        let elements = (0..k).map(|i| i.to_string()).collect();
        let add = (0..k)
            .map(|a| (0..k).map(|b| (a + b) % k).collect())
            .collect();
        Self::table(format!("Z/{k}"), elements, 0, add, None)
    }

    pub fn trivial() -> Self {
        Self::table("trivial", vec!["e".into()], 0, vec![vec![0]], None).expect("trivial monoid")
    }

    /// The integers `lo..=hi` with the usual order.
    pub fn window(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(bad(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Self {
            name: format!("Z[{lo},{hi}]"),
            kind: MonoidKind::Window {
                lo,
                hi,
                ordered: true,
            },
        })
    }

    /// `z2`, `z3`, `zN`, `trivial`, or `window:lo:hi`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim().to_ascii_lowercase();
        if s == "trivial" || s == "z1" {
            return Ok(Self::trivial());
        }
        if let Some(rest) = s.strip_prefix("window:") {
            let (lo, hi) = parse_window(rest)?;
            return Self::window(lo, hi);
        }
        if let Some(k) = s.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
            return Self::cyclic(k);
        }
        Err(bad(format!(
            "unknown monoid {spec:?} (expected z2, z3, zN, trivial or window:lo:hi)"
        )))
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            MonoidKind::Table { elements, .. } => elements.len(),
            MonoidKind::Window { lo, hi, .. } => (hi - lo + 1) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_window(&self) -> bool {
        matches!(self.kind, MonoidKind::Window { .. })
    }

    /// All values, in enumeration order.
    pub fn values(&self) -> Vec<i64> {
        match &self.kind {
            MonoidKind::Table { elements, .. } => (0..elements.len() as i64).collect(),
            MonoidKind::Window { lo, hi, .. } => (*lo..=*hi).collect(),
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        match &self.kind {
            MonoidKind::Table { elements, .. } => v >= 0 && (v as usize) < elements.len(),
            MonoidKind::Window { lo, hi, .. } => *lo <= v && v <= *hi,
        }
    }

    pub fn unit(&self) -> i64 {
        match &self.kind {
            MonoidKind::Table { unit, .. } => *unit as i64,
            MonoidKind::Window { .. } => 0,
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        match &self.kind {
            MonoidKind::Table { add, .. } => add[a as usize][b as usize] as i64,
            MonoidKind::Window { .. } => a + b,
        }
    }

    /// `c · a` for `c ≥ 0`.
    pub fn times(&self, c: u64, a: i64) -> i64 {
        match &self.kind {
            MonoidKind::Window { .. } => a * c as i64,
            MonoidKind::Table { .. } => (0..c).fold(self.unit(), |acc, _| self.add(acc, a)),
        }
    }

    pub fn is_ordered(&self) -> bool {
        match &self.kind {
            MonoidKind::Table { order, .. } => order.is_some(),
            MonoidKind::Window { ordered, .. } => *ordered,
        }
    }

    pub fn leq(&self, a: i64, b: i64) -> Result<bool> {
        match &self.kind {
            MonoidKind::Table {
                order: Some(le), ..
            } => Ok(le[a as usize][b as usize]),
            MonoidKind::Window { ordered: true, .. } => Ok(a <= b),
            _ => Err(Error::Unordered),
        }
    }

    /// The inverse of `a`, if any.
    pub fn inverse(&self, a: i64) -> Option<i64> {
        match &self.kind {
            MonoidKind::Table { .. } => self
                .values()
                .into_iter()
                .find(|&b| self.add(a, b) == self.unit()),
            MonoidKind::Window { .. } => Some(-a),
        }
    }

    /// Finite tables in which every element has an inverse.
    pub fn is_finite_group(&self) -> bool {
        !self.is_window() && self.values().into_iter().all(|a| self.inverse(a).is_some())
    }

    pub fn label(&self, v: i64) -> String {
        match &self.kind {
            MonoidKind::Table { elements, .. } => elements[v as usize].clone(),
            MonoidKind::Window { .. } => v.to_string(),
        }
    }

    /// Bijections of a finite table preserving unit and addition.
    pub fn automorphisms(&self) -> Vec<Vec<i64>> {
        let MonoidKind::Table { elements, .. } = &self.kind else {
            return Vec::new();
        };
        let n = elements.len();
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            m: &MonoidSpec,
            k: usize,
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<i64>>,
        ) {
            let n = image.len();
            if k == n {
                let ok = (0..n).all(|a| {
                    (0..n).all(|b| {
                        image[m.add(a as i64, b as i64) as usize] as i64
                            == m.add(image[a] as i64, image[b] as i64)
                    })
                });
                if ok && image[m.unit() as usize] as i64 == m.unit() {
                    out.push(image.iter().map(|&v| v as i64).collect());
                }
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    image[k] = v;
                    rec(m, k + 1, image, used, out);
                    used[v] = false;
                }
            }
        }
        rec(self, 0, &mut image, &mut used, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        match &self.kind {
            MonoidKind::Table {
                elements,
                unit,
                add,
                order,
            } => {
                let mut v = json!({
                    "schema": MONOID_SCHEMA,
                    "kind": "table",
                    "name": self.name,
                    "elements": elements,
                    "unit": unit,
                    "add": add,
                });
                if let Some(le) = order {
                    v["order"] = json!(le);
                }
                v
            }
            MonoidKind::Window { lo, hi, ordered } => json!({
                "schema": MONOID_SCHEMA,
                "kind": "window",
                "name": self.name,
                "lo": lo,
                "hi": hi,
                "ordered": ordered,
            }),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let schema_err = |m: &str| Error::Schema(m.to_string());
        if let Some(s) = value.get("schema").and_then(Value::as_str) {
            if s != MONOID_SCHEMA {
                return Err(Error::Schema(format!(
                    "expected {MONOID_SCHEMA}, found {s}"
                )));
            }
        }
        let name = value.get("name").and_then(Value::as_str);
        match value.get("kind").and_then(Value::as_str) {
            Some("table") => {
                let elements: Vec<String> =
                    serde_json::from_value(value.get("elements").cloned().unwrap_or_default())
                        .map_err(|_| schema_err("elements must be a list of strings"))?;
                let unit = value
                    .get("unit")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| schema_err("missing unit"))? as usize;
                let add: Vec<Vec<usize>> =
                    serde_json::from_value(value.get("add").cloned().unwrap_or_default())
                        .map_err(|_| schema_err("add must be a table of indices"))?;
                let order: Option<Vec<Vec<bool>>> = match value.get("order") {
                    None | Some(Value::Null) => None,
                    Some(o) => Some(
                        serde_json::from_value(o.clone())
                            .map_err(|_| schema_err("order must be a boolean table"))?,
                    ),
                };
                Self::table(name.unwrap_or("table"), elements, unit, add, order)
            }
            Some("window") => {
                let lo = value
                    .get("lo")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| schema_err("missing lo"))?;
                let hi = value
                    .get("hi")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| schema_err("missing hi"))?;
                let ordered = value
                    .get("ordered")
                    .and_then(Value::as_bool)
                    .unwrap_or(true);
                let mut m = Self::window(lo, hi)?;
                m.kind = MonoidKind::Window { lo, hi, ordered };
                if let Some(n) = name {
                    m.name = n.to_string();
                }
                Ok(m)
            }
            _ => Err(schema_err("kind must be \"table\" or \"window\"")),
        }
    }
}

/// Parses `lo:hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("window {s:?} must look like lo:hi")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad window bound {lo:?}")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad window bound {hi:?}")))?;
    Ok((lo, hi))
}
