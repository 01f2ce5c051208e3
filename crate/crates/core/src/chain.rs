//! Basis keys and integer chains, the shared currency of every complex in
//! the crate.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Identifier of a basis element.
///
/// Simplex-derived complexes use the strictly increasing vertex tuple; tensor
/// complexes pair the keys of their factors. The derived order is
/// lexicographic on tuples, with all tuple keys before pair keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Simplex(Vec<i64>),
    Pair(Box<BasisKey>, Box<BasisKey>),
}

impl BasisKey {
    pub fn simplex<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        BasisKey::Simplex(vertices.into_iter().map(|v| v as i64).collect())
    }

    pub fn pair(left: BasisKey, right: BasisKey) -> Self {
        BasisKey::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_simplex(&self) -> Option<&[i64]> {
        match self {
            BasisKey::Simplex(v) => Some(v),
            BasisKey::Pair(..) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&BasisKey, &BasisKey)> {
        match self {
            BasisKey::Pair(a, b) => Some((a, b)),
            BasisKey::Simplex(_) => None,
        }
    }

    /// Vertex tuple of a simplex key as indices. Panics on pair keys or
    /// negative entries.
    pub fn vertices(&self) -> Vec<usize> {
        self.as_simplex()
            .expect("simplex key")
            .iter()
            .map(|&v| usize::try_from(v).expect("nonnegative vertex"))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BasisKey::Simplex(v) => serde_json::Value::from(v.clone()),
            BasisKey::Pair(a, b) => serde_json::Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Option<Self> {
        let items = value.as_array()?;
        if items.iter().all(|v| v.is_i64()) {
            if items.is_empty() {
                return None;
            }
            return Some(BasisKey::Simplex(
                items.iter().filter_map(|v| v.as_i64()).collect(),
            ));
        }
        if items.len() == 2 {
            let a = BasisKey::from_json(&items[0])?;
            let b = BasisKey::from_json(&items[1])?;
            return Some(BasisKey::pair(a, b));
        }
        None
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Simplex(v) => {
                write!(f, "(")?;
                let compact = v.iter().all(|&x| (0..10).contains(&x));
                for (i, x) in v.iter().enumerate() {
                    if i > 0 && !compact {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            BasisKey::Pair(a, b) => write!(f, "{a}⊗{b}"),
        }
    }
}

/// A basis element together with its degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub degree: usize,
    pub key: BasisKey,
}

impl BasisElement {
    pub fn new(degree: usize, key: BasisKey) -> Self {
        Self { degree, key }
    }
}

/// A finite integer combination of basis elements in a single degree.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-wise equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChain {
    degree: usize,
    terms: BTreeMap<BasisKey, BigInt>,
}

impl GradedChain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(degree: usize, key: BasisKey) -> Self {
        Self::term(degree, key, BigInt::one())
    }

    pub fn term(degree: usize, key: BasisKey, coef: BigInt) -> Self {
        let mut c = Self::zero(degree);
        c.add_term(key, coef);
        c
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisKey, BigInt)>,
    {
        let mut c = Self::zero(degree);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    /// Chain from small integer coefficients; handy in tests and builders.
    pub fn from_small<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisKey, i64)>,
    {
        Self::from_terms(degree, terms.into_iter().map(|(k, v)| (k, BigInt::from(v))))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &BasisKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: BasisKey, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coef);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Adds `factor * other` in place. Degrees must agree unless `other` is zero.
    pub fn add_scaled(&mut self, other: &GradedChain, factor: &BigInt) {
        if other.is_zero() || factor.is_zero() {
            return;
        }
        debug_assert_eq!(
            self.degree, other.degree,
            "adding chains of different degrees"
        );
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * factor);
        }
    }

    pub fn add(&self, other: &GradedChain) -> GradedChain {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &GradedChain) -> GradedChain {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    pub fn scale(&self, factor: &BigInt) -> GradedChain {
        let mut out = GradedChain::zero(self.degree);
        out.add_scaled(self, factor);
        out
    }

    pub fn neg(&self) -> GradedChain {
        self.scale(&-BigInt::one())
    }

    /// A chain is positive when every coefficient is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }

    /// Splits into `(negative part, positive part)` as two positive chains.
    pub fn split_signs(&self) -> (GradedChain, GradedChain) {
        let mut neg = GradedChain::zero(self.degree);
        let mut pos = GradedChain::zero(self.degree);
        for (k, v) in &self.terms {
            if v.is_negative() {
                neg.terms.insert(k.clone(), -v);
            } else {
                pos.terms.insert(k.clone(), v.clone());
            }
        }
        (neg, pos)
    }

    /// Re-labels every key; coefficients of colliding keys are summed.
    pub fn map_keys<F: FnMut(&BasisKey) -> BasisKey>(
        &self,
        degree: usize,
        mut f: F,
    ) -> GradedChain {
        GradedChain::from_terms(degree, self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, v)| serde_json::json!([bigint_to_json(v), k.to_json()]))
                .collect(),
        )
    }
}

impl fmt::Display for GradedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative();
            let mag = v.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

pub(crate) fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    if let Some(i) = v.as_i64() {
        return Some(BigInt::from(i));
    }
    v.as_str().and_then(|s| s.parse().ok())
}
