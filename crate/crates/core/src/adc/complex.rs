use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{BasisElement, BasisKey, GradedChain};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialTruncation;

/// An augmented directed complex with a distinguished basis, truncated at
/// `max_degree`. Positive chains are those with nonnegative coefficients in
/// the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AdcComplex {
    max_degree: usize,
    basis: Vec<Vec<BasisKey>>,
    degree_of: HashMap<BasisKey, usize>,
    boundary: HashMap<BasisKey, GradedChain>,
    augmentation: HashMap<BasisKey, BigInt>,
}

/// Outcome of [`validate_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Pass,
    Fail {
        identity: &'static str,
        element: BasisElement,
    },
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        matches!(self, ValidationReport::Pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Pass => write!(f, "pass"),
            ValidationReport::Fail { identity, element } => {
                write!(
                    f,
                    "fail: {identity} violated at {} (degree {})",
                    element.key, element.degree
                )
            }
        }
    }
}

impl AdcComplex {
    /// Assembles a complex from per-degree bases, boundaries and the
    /// augmentation. Only well-formedness is checked here (keys exist, chains
    /// land one degree lower); the chain-complex identities are checked by
    /// [`validate_complex`].
    pub fn new(
        basis: Vec<Vec<BasisKey>>,
        mut boundary: HashMap<BasisKey, GradedChain>,
        augmentation: HashMap<BasisKey, BigInt>,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Schema("complex needs at least degree 0".into()));
        }
        let max_degree = basis.len() - 1;
        let mut degree_of = HashMap::new();
        let mut sorted = Vec::with_capacity(basis.len());
        for (p, keys) in basis.into_iter().enumerate() {
            let mut keys = keys;
            keys.sort();
            for k in &keys {
                if degree_of.insert(k.clone(), p).is_some() {
                    return Err(Error::Schema(format!("duplicate basis key {k}")));
                }
            }
            sorted.push(keys);
        }
        for (p, keys) in sorted.iter().enumerate() {
            for k in keys {
                let chain = boundary
                    .entry(k.clone())
                    .or_insert_with(|| GradedChain::zero(p.saturating_sub(1)));
                if p == 0 {
                    // degree-0 boundaries are stored so validation can flag them
                    for (t, _) in chain.terms() {
                        if degree_of.get(t) != Some(&0) {
                            return Err(Error::Schema(format!(
                                "boundary of {k} mentions unknown {t}"
                            )));
                        }
                    }
                    continue;
                }
                if !chain.is_zero() && chain.degree() != p - 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "boundary of {k} has degree {}",
                        chain.degree()
                    )));
                }
                for (t, _) in chain.terms() {
                    if degree_of.get(t) != Some(&(p - 1)) {
                        return Err(Error::Schema(format!(
                            "boundary of {k} mentions {t} outside degree {}",
                            p - 1
                        )));
                    }
                }
            }
        }
        if let Some(k) = boundary.keys().find(|k| !degree_of.contains_key(*k)) {
            return Err(Error::NotInBasis(k.to_string()));
        }
        for k in augmentation.keys() {
            if degree_of.get(k) != Some(&0) {
                return Err(Error::Schema(format!("augmentation on non-vertex {k}")));
            }
        }
        Ok(Self {
            max_degree,
            basis: sorted,
            degree_of,
            boundary,
            augmentation,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Sorted basis keys in degree `p` (empty above `max_degree`).
    pub fn basis(&self, p: usize) -> &[BasisKey] {
        self.basis.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn basis_sizes(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(p, keys)| keys.iter().map(move |k| BasisElement::new(p, k.clone())))
    }

    pub fn degree_of(&self, key: &BasisKey) -> Option<usize> {
        self.degree_of.get(key).copied()
    }

    pub fn contains(&self, key: &BasisKey) -> bool {
        self.degree_of.contains_key(key)
    }

    pub fn boundary_of(&self, key: &BasisKey) -> &GradedChain {
        &self.boundary[key]
    }

    pub fn augmentation_of(&self, key: &BasisKey) -> BigInt {
        self.augmentation.get(key).cloned().unwrap_or_default()
    }

    /// Boundary of a chain; the boundary of a degree-0 chain is zero.
    pub fn boundary(&self, chain: &GradedChain) -> GradedChain {
        let p = chain.degree();
        if p == 0 {
            return GradedChain::zero(0);
        }
        let mut out = GradedChain::zero(p - 1);
        for (k, c) in chain.terms() {
            out.add_scaled(&self.boundary[k], c);
        }
        out
    }

    pub fn augment(&self, chain: &GradedChain) -> BigInt {
        if chain.degree() != 0 {
            return BigInt::zero();
        }
        chain
            .terms()
            .map(|(k, c)| c * self.augmentation_of(k))
            .sum()
    }

    /// The raw degree-0 boundary table entry, used only by validation.
    fn stored_boundary(&self, key: &BasisKey) -> &GradedChain {
        &self.boundary[key]
    }

    pub(crate) fn boundary_table(&self) -> BTreeMap<&BasisKey, &GradedChain> {
        self.boundary.iter().collect()
    }

    pub(crate) fn augmentation_table(&self) -> BTreeMap<&BasisKey, &BigInt> {
        self.augmentation.iter().collect()
    }
}

/// Checks `∂∂ = 0`, `ε∂ = 0` and that degree-0 boundaries vanish, reporting
/// the first offending basis element in key order.
pub fn validate_complex(k: &AdcComplex) -> ValidationReport {
    for p in 0..=k.max_degree() {
        for key in k.basis(p) {
            let elem = || BasisElement::new(p, key.clone());
            if p == 0 {
                if !k.stored_boundary(key).is_zero() {
                    return ValidationReport::Fail {
                        identity: "∂ = 0 in degree 0",
                        element: elem(),
                    };
                }
                continue;
            }
            let d = k.boundary_of(key);
            if p == 1 && !k.augment(d).is_zero() {
                return ValidationReport::Fail {
                    identity: "ε∂ = 0",
                    element: elem(),
                };
            }
            if p >= 2 && !k.boundary(d).is_zero() {
                return ValidationReport::Fail {
                    identity: "∂∂ = 0",
                    element: elem(),
                };
            }
        }
    }
    ValidationReport::Pass
}

/// Splits `∂x` after cancellation into `(∂⁻x, ∂⁺x)`, both positive with
/// disjoint supports and `∂⁺x − ∂⁻x = ∂x`.
pub fn split_boundary(x: &GradedChain, k: &AdcComplex) -> Result<(GradedChain, GradedChain)> {
    if x.degree() == 0 {
        return Err(Error::SplitDegreeZero);
    }
    for key in x.support() {
        if k.degree_of(key) != Some(x.degree()) {
            return Err(Error::NotInBasis(key.to_string()));
        }
    }
    Ok(k.boundary(x).split_signs())
}

/// The tensor product `K ⊗ L`: pair keys, Leibniz boundary
/// `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`, and `ε(a⊗b) = ε(a)ε(b)`.
pub fn tensor(k: &AdcComplex, l: &AdcComplex) -> AdcComplex {
    let max = k.max_degree() + l.max_degree();
    let mut basis = vec![Vec::new(); max + 1];
    let mut boundary = HashMap::new();
    let mut augmentation = HashMap::new();
    for a in k.elements() {
        for b in l.elements() {
            let p = a.degree + b.degree;
            let key = BasisKey::pair(a.key.clone(), b.key.clone());
            let mut d = GradedChain::zero(p.saturating_sub(1));
            if a.degree > 0 {
                for (ka, ca) in k.boundary_of(&a.key).terms() {
                    d.add_term(BasisKey::pair(ka.clone(), b.key.clone()), ca.clone());
                }
            }
            if b.degree > 0 {
                let sign = if a.degree % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                for (kb, cb) in l.boundary_of(&b.key).terms() {
                    d.add_term(BasisKey::pair(a.key.clone(), kb.clone()), cb * &sign);
                }
            }
            if p == 0 {
                augmentation.insert(
                    key.clone(),
                    k.augmentation_of(&a.key) * l.augmentation_of(&b.key),
                );
            }
            boundary.insert(key.clone(), d);
            basis[p].push(key);
        }
    }
    AdcComplex::new(basis, boundary, augmentation)
        .expect("tensor of well-formed complexes is well-formed")
}

/// `cn(X)`: the normalized chains of a truncated simplicial set, with basis
/// the nondegenerate simplices (keyed by their identifiers) and the
/// alternating-sum boundary with degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialTruncation) -> AdcComplex {
    let d = x.truncation();
    let mut basis = Vec::with_capacity(d + 1);
    let mut boundary = HashMap::new();
    let mut augmentation = HashMap::new();
    let key = |p: usize, s: usize| BasisKey::Simplex(x.name(p, s).to_vec());
    for p in 0..=d {
        let mut keys = Vec::new();
        for s in x.nondegenerate(p) {
            let k = key(p, s);
            if p == 0 {
                augmentation.insert(k.clone(), BigInt::one());
                boundary.insert(k.clone(), GradedChain::zero(0));
            } else {
                let mut chain = GradedChain::zero(p - 1);
                for i in 0..=p {
                    let face = x.face(p, i, s);
                    if !x.is_degenerate(p - 1, face) {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        chain.add_term(key(p - 1, face), BigInt::from(sign));
                    }
                }
                boundary.insert(k.clone(), chain);
            }
            keys.push(k);
        }
        basis.push(keys);
    }
    AdcComplex::new(basis, boundary, augmentation).expect("simplex names are unique per degree")
}

/// `cn(Δ^m)` built directly from strictly increasing tuples.
pub fn simplex_complex(m: usize) -> AdcComplex {
    let mut basis = vec![Vec::new(); m + 1];
    let mut boundary = HashMap::new();
    let mut augmentation = HashMap::new();
    for subset in 1u64..(1u64 << (m + 1)) {
        let verts: Vec<usize> = (0..=m).filter(|i| subset >> i & 1 == 1).collect();
        let p = verts.len() - 1;
        let key = BasisKey::simplex(verts.iter().copied());
        let mut d = GradedChain::zero(p.saturating_sub(1));
        if p == 0 {
            augmentation.insert(key.clone(), BigInt::one());
        } else {
            for i in 0..=p {
                let face = verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v);
                d.add_term(
                    BasisKey::simplex(face),
                    BigInt::from(if i % 2 == 0 { 1 } else { -1 }),
                );
            }
        }
        boundary.insert(key.clone(), d);
        basis[p].push(key);
    }
    AdcComplex::new(basis, boundary, augmentation).expect("cn(Δ^m) is well-formed")
}
