use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::adc::complex::{simplex_complex, AdcComplex};
use crate::chain::{BasisElement, BasisKey, GradedChain};
use crate::error::{Error, Result};
use crate::operator::Monotone;

pub(crate) fn same_complex(a: &Arc<AdcComplex>, b: &Arc<AdcComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A degree-preserving linear map between complexes, given on the source
/// basis. Construction only checks shape; [`ChainMorphism::violation`] checks
/// compatibility with `∂`, `ε` and positivity.
#[derive(Clone, Debug)]
pub struct ChainMorphism {
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
    action: HashMap<BasisKey, GradedChain>,
}

impl ChainMorphism {
    pub fn new(
        source: Arc<AdcComplex>,
        target: Arc<AdcComplex>,
        mut action: HashMap<BasisKey, GradedChain>,
    ) -> Result<Self> {
        for e in source.elements() {
            let image = action
                .entry(e.key.clone())
                .or_insert_with(|| GradedChain::zero(e.degree));
            if image.is_zero() {
                continue;
            }
            if image.degree() != e.degree {
                return Err(Error::InvalidMorphism(format!(
                    "image of {} has degree {}",
                    e.key,
                    image.degree()
                )));
            }
            if let Some(t) = image
                .support()
                .find(|t| target.degree_of(t) != Some(e.degree))
            {
                return Err(Error::InvalidMorphism(format!(
                    "image of {} mentions {t} outside the target",
                    e.key
                )));
            }
        }
        if action.len() != source.elements().count() {
            return Err(Error::InvalidMorphism(
                "action defined outside the source basis".into(),
            ));
        }
        Ok(Self {
            source,
            target,
            action,
        })
    }

    /// Builds a morphism from a function on basis elements.
    pub fn from_fn<F>(source: Arc<AdcComplex>, target: Arc<AdcComplex>, mut f: F) -> Result<Self>
    where
        F: FnMut(&BasisElement) -> GradedChain,
    {
        let action = source.elements().map(|e| (e.key.clone(), f(&e))).collect();
        Self::new(source, target, action)
    }

    pub fn identity(k: Arc<AdcComplex>) -> Self {
        let action = k
            .elements()
            .map(|e| (e.key.clone(), GradedChain::basis(e.degree, e.key)))
            .collect();
        Self {
            source: k.clone(),
            target: k,
            action,
        }
    }

    pub fn source(&self) -> &Arc<AdcComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AdcComplex> {
        &self.target
    }

    pub fn image(&self, key: &BasisKey) -> &GradedChain {
        &self.action[key]
    }

    pub fn apply(&self, chain: &GradedChain) -> GradedChain {
        let mut out = GradedChain::zero(chain.degree());
        for (k, c) in chain.terms() {
            out.add_scaled(&self.action[k], c);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMorphism) -> Result<ChainMorphism> {
        if !same_complex(&inner.target, &self.source) {
            return Err(Error::MismatchedEndpoints(
                "composite of non-composable morphisms".into(),
            ));
        }
        let action = inner
            .action
            .iter()
            .map(|(k, img)| (k.clone(), self.apply(img)))
            .collect();
        Ok(ChainMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            action,
        })
    }

    /// First basis element (in basis order) where the two morphisms differ.
    pub fn first_difference(
        &self,
        other: &ChainMorphism,
    ) -> Option<(BasisElement, GradedChain, GradedChain)> {
        self.source.elements().find_map(|e| {
            let a = self.image(&e.key);
            let b = other
                .action
                .get(&e.key)
                .cloned()
                .unwrap_or_else(|| GradedChain::zero(e.degree));
            (a != &b).then(|| (e, a.clone(), b))
        })
    }

    pub fn equals(&self, other: &ChainMorphism) -> bool {
        same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
            && self.first_difference(other).is_none()
    }

    /// First violated morphism axiom, if any.
    pub fn violation(&self) -> Option<String> {
        for e in self.source.elements() {
            let img = self.image(&e.key);
            if !img.is_positive() {
                return Some(format!("image of {} is not positive: {img}", e.key));
            }
            if e.degree == 0 {
                let lhs = self.target.augment(img);
                let rhs = self.source.augmentation_of(&e.key);
                if lhs != rhs {
                    return Some(format!("ε not preserved at {}", e.key));
                }
            } else if e.degree <= self.target.max_degree() {
                let lhs = self.target.boundary(img);
                let rhs = self.apply(self.source.boundary_of(&e.key));
                if lhs != rhs {
                    return Some(format!("∂ not preserved at {}: {lhs} vs {rhs}", e.key));
                }
            } else if !img.is_zero() {
                return Some(format!(
                    "image of {} lies above the target truncation",
                    e.key
                ));
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }
}

impl fmt::Display for ChainMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.source.elements() {
            writeln!(f, "{} ↦ {}", e.key, self.image(&e.key))?;
        }
        Ok(())
    }
}

/// `f ⊗ g : K ⊗ L → K' ⊗ L'` between the given (prebuilt) tensor complexes.
pub fn tensor_morphism_between(
    f: &ChainMorphism,
    g: &ChainMorphism,
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
) -> Result<ChainMorphism> {
    ChainMorphism::from_fn(source, target, |e| {
        let (a, b) = e.key.as_pair().expect("tensor key");
        let fa = f.image(a);
        let gb = g.image(b);
        let mut out = GradedChain::zero(e.degree);
        for (ka, ca) in fa.terms() {
            for (kb, cb) in gb.terms() {
                out.add_term(BasisKey::pair(ka.clone(), kb.clone()), ca * cb);
            }
        }
        out
    })
}

pub fn tensor_morphism(f: &ChainMorphism, g: &ChainMorphism) -> Result<ChainMorphism> {
    let source = Arc::new(crate::adc::tensor(f.source(), g.source()));
    let target = Arc::new(crate::adc::tensor(f.target(), g.target()));
    tensor_morphism_between(f, g, source, target)
}

/// `cn(θ) : cn(Δ^q) → cn(Δ^p)`, sending `(i_0,…,i_k)` to `(θ(i_0),…,θ(i_k))`,
/// or to zero when that sequence is not strictly increasing.
pub fn chain_map_of_operator(theta: &Monotone) -> ChainMorphism {
    chain_map_of_operator_between(
        theta,
        Arc::new(simplex_complex(theta.source())),
        Arc::new(simplex_complex(theta.target())),
    )
}

/// As [`chain_map_of_operator`], reusing prebuilt `cn(Δ^q)` and `cn(Δ^p)`.
pub fn chain_map_of_operator_between(
    theta: &Monotone,
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
) -> ChainMorphism {
    ChainMorphism::from_fn(source, target, |e| {
        let image: Vec<usize> = e.key.vertices().iter().map(|&i| theta.apply(i)).collect();
        strict_simplex_chain(&image)
    })
    .expect("operator images lie in cn(Δ^p)")
}

/// The basis chain of a vertex tuple, or zero if the tuple repeats a vertex.
pub fn strict_simplex_chain(vertices: &[usize]) -> GradedChain {
    let degree = vertices.len() - 1;
    if vertices.windows(2).all(|w| w[0] < w[1]) {
        GradedChain::basis(degree, BasisKey::simplex(vertices.iter().copied()))
    } else {
        GradedChain::zero(degree)
    }
}

/// A homotopy from `from` to `to`, given on the basis with values one degree
/// higher: the expected identity is `∂h + h∂ = to − from`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    from: ChainMorphism,
    to: ChainMorphism,
    action: HashMap<BasisKey, GradedChain>,
}

/// Witness of a failed homotopy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyFailure {
    pub element: BasisElement,
    pub reason: String,
}

impl ChainHomotopy {
    pub fn new(
        from: ChainMorphism,
        to: ChainMorphism,
        action: HashMap<BasisKey, GradedChain>,
    ) -> Self {
        Self { from, to, action }
    }

    pub fn from_morphism(&self) -> &ChainMorphism {
        &self.from
    }

    pub fn to_morphism(&self) -> &ChainMorphism {
        &self.to
    }

    pub fn image(&self, key: &BasisKey) -> GradedChain {
        let degree = self.from.source().degree_of(key).map_or(0, |p| p + 1);
        self.action
            .get(key)
            .cloned()
            .unwrap_or_else(|| GradedChain::zero(degree))
    }

    pub fn set_image(&mut self, key: BasisKey, chain: GradedChain) {
        self.action.insert(key, chain);
    }

    fn apply(&self, chain: &GradedChain) -> GradedChain {
        let mut out = GradedChain::zero(chain.degree() + 1);
        for (k, c) in chain.terms() {
            out.add_scaled(&self.image(k), c);
        }
        out
    }

    /// First basis element violating positivity or `∂h + h∂ = g − f`.
    pub fn failure(&self) -> Result<Option<HomotopyFailure>> {
        let (f, g) = (&self.from, &self.to);
        if !same_complex(f.source(), g.source()) || !same_complex(f.target(), g.target()) {
            return Err(Error::MismatchedEndpoints(
                "homotopy between morphisms with different endpoints".into(),
            ));
        }
        let target = f.target();
        for e in f.source().elements() {
            let fail = |reason: String| {
                Ok(Some(HomotopyFailure {
                    element: e.clone(),
                    reason,
                }))
            };
            let h = self.image(&e.key);
            if !h.is_positive() {
                return fail(format!("h({}) = {h} is not positive", e.key));
            }
            if let Some(t) = h
                .support()
                .find(|t| target.degree_of(t) != Some(e.degree + 1))
            {
                return fail(format!("h({}) mentions {t} outside the target", e.key));
            }
            let mut lhs = target.boundary(&h);
            if e.degree > 0 {
                lhs.add_scaled(&self.apply(f.source().boundary_of(&e.key)), &BigInt::one());
            }
            let rhs = g.image(&e.key).sub(f.image(&e.key));
            if lhs != rhs {
                return fail(format!("∂h + h∂ = {lhs} but g − f = {rhs} at {}", e.key));
            }
        }
        Ok(None)
    }
}

/// Whether `h` is a homotopy of augmented directed complexes between its
/// endpoints: positive, and `∂h + h∂ = g − f` on every basis element.
pub fn check_homotopy(h: &ChainHomotopy) -> Result<bool> {
    Ok(h.failure()?.is_none())
}

/// `cn(0)cn(r)` on `cn(Δ^m)`: the vertex `(0)` is fixed, every other basis
/// element goes to `(0)` in degree 0 and to zero above.
pub fn collapse_to_zero(m: usize) -> ChainMorphism {
    let point = Arc::new(simplex_complex(0));
    let cm = Arc::new(simplex_complex(m));
    let zero =
        chain_map_of_operator_between(&Monotone::constant(0, 0, m), point.clone(), cm.clone());
    let r = chain_map_of_operator_between(&Monotone::constant(m, 0, 0), cm, point);
    zero.compose(&r).expect("composable")
}

/// The contraction homotopy `h_p(i_0,…,i_p) = (0,i_0,…,i_p)` (zero when
/// `i_0 = 0`) from `cn(0)cn(r)` to the identity of `cn(Δ^m)`.
pub fn contraction_h(m: usize) -> ChainHomotopy {
    let from = collapse_to_zero(m);
    let to = ChainMorphism::identity(from.source().clone());
    let action = from
        .source()
        .elements()
        .map(|e| {
            let mut v = vec![0];
            v.extend(e.key.vertices());
            (e.key, strict_simplex_chain(&v))
        })
        .collect();
    ChainHomotopy::new(from, to, action)
}

/// Zero map between two complexes.
pub fn zero_morphism(source: Arc<AdcComplex>, target: Arc<AdcComplex>) -> ChainMorphism {
    ChainMorphism::from_fn(source, target, |e| GradedChain::zero(e.degree))
        .expect("zero map is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: &[usize]) -> BasisKey {
        BasisKey::simplex(v.iter().copied())
    }

    #[test]
    fn operator_examples() {
        let psi = Monotone::new(vec![0, 2], 2).unwrap();
        let f = chain_map_of_operator(&psi);
        assert_eq!(f.image(&k(&[0, 1])), &GradedChain::basis(1, k(&[0, 2])));
        assert!(f.is_valid());

        let flat = Monotone::new(vec![1, 1], 2).unwrap();
        let f = chain_map_of_operator(&flat);
        assert!(f.image(&k(&[0, 1])).is_zero());
        assert_eq!(f.image(&k(&[0])), &GradedChain::basis(0, k(&[1])));
        assert!(f.is_valid());

        let id = chain_map_of_operator(&Monotone::identity(3));
        assert!(id.equals(&ChainMorphism::identity(Arc::new(simplex_complex(3)))));
    }

    #[test]
    fn operator_functoriality_exhaustive_small() {
        for r in 0..3 {
            for q in 0..3 {
                for p in 0..3 {
                    for outer in Monotone::all(q, p) {
                        for inner in Monotone::all(r, q) {
                            let lhs = chain_map_of_operator(&outer.compose(&inner));
                            let rhs = chain_map_of_operator(&outer)
                                .compose(&chain_map_of_operator(&inner))
                                .unwrap();
                            assert!(lhs.equals(&rhs));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contraction_values() {
        let h = contraction_h(3);
        assert_eq!(h.image(&k(&[1, 3])), GradedChain::basis(2, k(&[0, 1, 3])));
        assert!(h.image(&k(&[0, 2])).is_zero());
        let h0 = contraction_h(0);
        assert!(h0.image(&k(&[0])).is_zero());
        assert!(check_homotopy(&h0).unwrap());
    }

    #[test]
    fn contraction_checks_on_an_edge() {
        // on (12): ∂(012) + h((2) − (1)) = (12) − (02) + (01) + (02) − (01) = (12)
        let h = contraction_h(2);
        assert_eq!(h.image(&k(&[1, 2])), GradedChain::basis(2, k(&[0, 1, 2])));
        assert!(check_homotopy(&h).unwrap());
    }

    #[test]
    fn contraction_is_a_homotopy_for_small_m() {
        for m in 0..=6 {
            assert_eq!(contraction_h(m).failure().unwrap(), None, "m = {m}");
        }
    }

    #[test]
    fn zero_homotopy_is_rejected() {
        let f = collapse_to_zero(1);
        let g = ChainMorphism::identity(f.source().clone());
        let h = ChainHomotopy::new(f, g, HashMap::new());
        let failure = h.failure().unwrap().unwrap();
        // the vertex (1) already fails: 0 ≠ (1) − (0)
        assert_eq!(failure.element.degree, 0);
        assert!(!check_homotopy(&h).unwrap());
    }

    #[test]
    fn mismatched_endpoints_error() {
        let f = collapse_to_zero(1);
        let g = ChainMorphism::identity(Arc::new(simplex_complex(2)));
        let h = ChainHomotopy::new(f, g, HashMap::new());
        assert!(matches!(
            check_homotopy(&h),
            Err(Error::MismatchedEndpoints(_))
        ));
    }

    #[test]
    fn collapse_values() {
        let c = collapse_to_zero(2);
        assert_eq!(c.image(&k(&[2])), &GradedChain::basis(0, k(&[0])));
        assert!(c.image(&k(&[1, 2])).is_zero());
        assert!(c.is_valid());
    }

    #[test]
    fn non_positive_morphism_flagged() {
        let c = Arc::new(simplex_complex(1));
        let f = ChainMorphism::from_fn(c.clone(), c, |e| {
            GradedChain::basis(e.degree, e.key.clone()).neg()
        })
        .unwrap();
        assert!(f.violation().unwrap().contains("not positive"));
    }
}
