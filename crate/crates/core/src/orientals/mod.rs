//! Orientals `cn(Δ^n)`, cylinders `cn(Δ^1) ⊗ cn(Δ^m)` and the chain-level
//! shadow of the oplax contraction of `O_m` onto its vertex `0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::adc::{
    atom_table, chain_map_of_operator_between, check_steiner_strong, simplex_complex,
    strict_simplex_chain, tensor, tensor_morphism_between, AdcComplex, AtomTable, ChainMorphism,
    SteinerReport,
};
use crate::chain::{BasisElement, BasisKey, GradedChain};
use crate::error::{Error, Result};
use crate::operator::Monotone;
use crate::simplicial::{homotopy_k, product_components};

fn atoms_of(k: &AdcComplex) -> BTreeMap<BasisKey, AtomTable> {
    k.elements()
        .map(|e| (e.key.clone(), atom_table(&e.key, k).expect("basis element")))
        .collect()
}

/// `O_n` as the strong Steiner complex `cn(Δ^n)`, with every atom.
#[derive(Clone, Debug)]
pub struct OrientalComplex {
    pub n: usize,
    pub complex: Arc<AdcComplex>,
    pub atoms: BTreeMap<BasisKey, AtomTable>,
    pub certificate: SteinerReport,
}

impl OrientalComplex {
    /// Number of `k`-atoms for each `k`.
    pub fn atom_counts(&self) -> Vec<usize> {
        self.complex.basis_sizes()
    }

    pub fn atom(&self, vertices: &[usize]) -> Option<&AtomTable> {
        self.atoms.get(&BasisKey::simplex(vertices.iter().copied()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "atom_counts": self.atom_counts(),
            "unital": self.certificate.unital,
            "strongly_loop_free": self.certificate.strongly_loop_free,
            "atoms": self.atoms.values().map(AtomTable::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn oriental(n: usize) -> OrientalComplex {
    let complex = simplex_complex(n);
    let certificate = check_steiner_strong(&complex);
    OrientalComplex {
        n,
        atoms: atoms_of(&complex),
        complex: Arc::new(complex),
        certificate,
    }
}

/// `cn(Δ^1) ⊗ cn(Δ^m)`, taken as the chain complex of `Δ^1 ⊗ O_m`.
#[derive(Clone, Debug)]
pub struct CylinderComplex {
    pub m: usize,
    pub complex: Arc<AdcComplex>,
    pub atoms: BTreeMap<BasisKey, AtomTable>,
    pub certificate: SteinerReport,
}

impl CylinderComplex {
    /// Degree-`p` basis sizes split by the `cn(Δ^1)` factor:
    /// `((0)⊗–, (1)⊗–, (01)⊗–)`.
    pub fn components(&self, p: usize) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for key in self.complex.basis(p) {
            let (a, _) = key.as_pair().expect("tensor key");
            match a.vertices().as_slice() {
                [0] => out.0 += 1,
                [1] => out.1 += 1,
                _ => out.2 += 1,
            }
        }
        out
    }
}

pub fn cylinder_complex(m: usize) -> AdcComplex {
    tensor(&simplex_complex(1), &simplex_complex(m))
}

pub fn cylinder(m: usize) -> CylinderComplex {
    let complex = cylinder_complex(m);
    let certificate = check_steiner_strong(&complex);
    CylinderComplex {
        m,
        atoms: atoms_of(&complex),
        complex: Arc::new(complex),
        certificate,
    }
}

fn end_key(e: usize) -> BasisKey {
    BasisKey::simplex([e])
}

fn edge_key() -> BasisKey {
    BasisKey::simplex([0, 1])
}

fn pair_chain(degree: usize, left: BasisKey, right: &GradedChain) -> GradedChain {
    GradedChain::from_terms(
        degree,
        right
            .terms()
            .map(|(k, c)| (BasisKey::pair(left.clone(), k.clone()), c.clone())),
    )
}

/// `g_φ` between prebuilt `cn(Δ^p)` and `cn(Δ^1) ⊗ cn(Δ^p)`, unvalidated.
pub fn g_phi_between(
    phi: &Monotone,
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
) -> ChainMorphism {
    ChainMorphism::from_fn(source, target, |e| {
        let v = e.key.vertices();
        let r = v.iter().filter(|&&i| phi.apply(i) == 0).count();
        let whole = GradedChain::basis(e.degree, e.key.clone());
        match r {
            0 => pair_chain(e.degree, end_key(1), &whole),
            1 => {
                let mut out = pair_chain(e.degree, end_key(0), &whole);
                if v.len() > 1 {
                    let tail =
                        GradedChain::basis(e.degree - 1, BasisKey::simplex(v[1..].iter().copied()));
                    out = out.add(&pair_chain(e.degree, edge_key(), &tail));
                }
                out
            }
            _ => pair_chain(e.degree, end_key(0), &whole),
        }
    })
    .expect("g_φ lands in the cylinder")
}

/// `g_φ : cn(Δ^p) → cn(Δ^1) ⊗ cn(Δ^p)` for a monotone `φ : [p] → [1]`,
/// given by its values. Checked to be a morphism of augmented directed
/// complexes.
pub fn g_phi(phi: &[usize]) -> Result<ChainMorphism> {
    let phi = Monotone::new(phi.to_vec(), 1)?;
    let p = phi.source();
    let g = g_phi_between(
        &phi,
        Arc::new(simplex_complex(p)),
        Arc::new(cylinder_complex(p)),
    );
    match g.violation() {
        None => Ok(g),
        Some(msg) => Err(Error::InvalidMorphism(format!(
            "g_φ for φ = {:?}: {msg}",
            phi.values()
        ))),
    }
}

/// The contraction `h : cn(Δ^1) ⊗ cn(Δ^m) → cn(Δ^m)` between prebuilt
/// complexes.
pub fn cylinder_contraction_between(
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
) -> ChainMorphism {
    ChainMorphism::from_fn(source, target, |e| {
        let (a, x) = e.key.as_pair().expect("tensor key");
        let xv = x.vertices();
        match a.vertices().as_slice() {
            [0] if xv.len() == 1 => strict_simplex_chain(&[0]),
            [0] => GradedChain::zero(e.degree),
            [1] => GradedChain::basis(e.degree, x.clone()),
            _ => {
                let mut v = vec![0];
                v.extend(xv);
                strict_simplex_chain(&v)
            }
        }
    })
    .expect("h lands in cn(Δ^m)")
}

/// `h((0)⊗x) = (0)` in degree 0 and `0` above, `h((1)⊗x) = x`,
/// `h((01)⊗(i_0,…,i_p)) = (0,i_0,…,i_p)` (zero if `i_0 = 0`).
pub fn cylinder_contraction(m: usize) -> ChainMorphism {
    cylinder_contraction_between(Arc::new(cylinder_complex(m)), Arc::new(simplex_complex(m)))
}

/// `x ↦ (ε) ⊗ x : cn(Δ^m) → cn(Δ^1) ⊗ cn(Δ^m)`.
pub fn cylinder_end_between(
    end: usize,
    source: Arc<AdcComplex>,
    target: Arc<AdcComplex>,
) -> ChainMorphism {
    ChainMorphism::from_fn(source, target, |e| {
        GradedChain::basis(e.degree, BasisKey::pair(end_key(end), e.key.clone()))
    })
    .expect("end inclusion")
}

pub fn cylinder_end(end: usize, m: usize) -> ChainMorphism {
    cylinder_end_between(
        end,
        Arc::new(simplex_complex(m)),
        Arc::new(cylinder_complex(m)),
    )
}

/// A failing instance of the contraction square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
    pub element: BasisElement,
    /// `cn(k(φ, ψ))` on the element.
    pub simplicial_side: GradedChain,
    /// `h ∘ (id ⊗ cn(ψ)) ∘ g_φ` on the element.
    pub transformation_side: GradedChain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub m: usize,
    pub max_degree: usize,
    /// Number of simplices `(φ, ψ)` compared.
    pub checked: usize,
    pub witness: Option<SquareWitness>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// The action `(φ, x) ↦ h ∘ (id ⊗ x) ∘ g_φ` at a fixed `m`, with the
/// complexes `cn(Δ^p)` and cylinders for `p ≤ P` built once and shared.
pub struct HomotopyAction {
    cn1: Arc<AdcComplex>,
    cylm: Arc<AdcComplex>,
    contraction: ChainMorphism,
    per_degree: Vec<(Arc<AdcComplex>, Arc<AdcComplex>)>,
}

impl HomotopyAction {
    pub fn new(m: usize, max_p: usize) -> Self {
        let cn1 = Arc::new(simplex_complex(1));
        let per_degree: Vec<(Arc<AdcComplex>, Arc<AdcComplex>)> = (0..=max_p.max(m))
            .map(|p| {
                let cnp = Arc::new(simplex_complex(p));
                let cylp = Arc::new(tensor(&cn1, &cnp));
                (cnp, cylp)
            })
            .collect();
        let (cnm, cylm) = per_degree[m].clone();
        let contraction = cylinder_contraction_between(cylm.clone(), cnm.clone());
        Self {
            cn1,
            cylm,
            contraction,
            per_degree,
        }
    }

    /// The shared `cn(Δ^p)`.
    pub fn simplex(&self, p: usize) -> &Arc<AdcComplex> {
        &self.per_degree[p].0
    }

    /// `h ∘ (id ⊗ x) ∘ g_φ`, for `x` defined on the shared `cn(Δ^p)`.
    pub fn act(&self, phi: &Monotone, x: &ChainMorphism) -> ChainMorphism {
        let (cnp, cylp) = &self.per_degree[phi.source()];
        let g = g_phi_between(phi, cnp.clone(), cylp.clone());
        let id1 = ChainMorphism::identity(self.cn1.clone());
        let middle =
            tensor_morphism_between(&id1, x, cylp.clone(), self.cylm.clone()).expect("id ⊗ x");
        self.contraction
            .compose(&middle.compose(&g).expect("composable"))
            .expect("composable")
    }

    /// `cn(θ)` between the shared complexes.
    pub fn operator(&self, theta: &Monotone) -> ChainMorphism {
        chain_map_of_operator_between(
            theta,
            self.simplex(theta.source()).clone(),
            self.simplex(theta.target()).clone(),
        )
    }
}

/// Compares, for every `p ≤ P` and every `p`-simplex `(φ, ψ)` of
/// `Δ^1 × Δ^m`, the chain map of `k(φ, ψ)` with
/// `h ∘ (id ⊗ cn(ψ)) ∘ g_φ` on every basis element of `cn(Δ^p)`.
pub fn verify_contraction_square(m: usize, max_degree: usize) -> SquareReport {
    let ctx = HomotopyAction::new(m, max_degree);
    let k = homotopy_k(m, max_degree);
    let cyl = k.source().clone();
    let dm = k.target().clone();
    let d1 = crate::simplicial::standard_simplex(1, max_degree);
    let jobs: Vec<(usize, usize)> = (0..=max_degree)
        .flat_map(|p| (0..cyl.count(p)).map(move |s| (p, s)))
        .collect();
    let to_map = |name: &[i64], target: usize| {
        Monotone::new(name.iter().map(|&v| v as usize).collect(), target)
    };
    let failures: Vec<SquareWitness> = jobs
        .par_iter()
        .filter_map(|&(p, s)| {
            let (a, b) = product_components(&dm, p, s);
            let phi = to_map(d1.name(p, a), 1).expect("monotone");
            let psi = to_map(dm.name(p, b), m).expect("monotone");
            let kv = to_map(dm.name(p, k.apply(p, s)), m).expect("monotone");
            let lhs = ctx.operator(&kv);
            let rhs = ctx.act(&phi, &ctx.operator(&psi));
            lhs.first_difference(&rhs)
                .map(|(element, l, r)| SquareWitness {
                    phi: phi.values().to_vec(),
                    psi: psi.values().to_vec(),
                    element,
                    simplicial_side: l,
                    transformation_side: r,
                })
        })
        .collect();
    let witness = failures
        .into_iter()
        .min_by(|x, y| (x.phi.len(), &x.phi, &x.psi).cmp(&(y.phi.len(), &y.phi, &y.psi)));
    SquareReport {
        m,
        max_degree,
        checked: jobs.len(),
        witness,
    }
}

/// The `p`-simplex of `N(O_m)` obtained from `(φ, x)` through the
/// transformation: `h ∘ (id ⊗ x) ∘ g_φ` for `x : cn(Δ^p) → cn(Δ^m)`.
pub fn nerve_homotopy_action(phi: &[usize], x: &ChainMorphism) -> Result<ChainMorphism> {
    let phi = Monotone::new(phi.to_vec(), 1)?;
    if let Some(msg) = x.violation() {
        return Err(Error::InvalidMorphism(msg));
    }
    let p = phi.source();
    if x.source().basis_sizes() != simplex_complex(p).basis_sizes()
        || **x.source() != simplex_complex(p)
    {
        return Err(Error::ShapeMismatch(format!(
            "x must be defined on cn(Δ^{p})"
        )));
    }
    let m = x.target().max_degree();
    if **x.target() != simplex_complex(m) {
        return Err(Error::ShapeMismatch("x must land in an oriental".into()));
    }
    let cn1 = Arc::new(simplex_complex(1));
    let cylp = Arc::new(tensor(&cn1, x.source()));
    let cylm = Arc::new(tensor(&cn1, x.target()));
    let g = g_phi_between(&phi, x.source().clone(), cylp.clone());
    let middle = tensor_morphism_between(&ChainMorphism::identity(cn1), x, cylp, cylm.clone())?;
    let h = cylinder_contraction_between(cylm, x.target().clone());
    h.compose(&middle.compose(&g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::{chain_map_of_operator, collapse_to_zero, validate_complex};

    fn k(v: &[usize]) -> BasisKey {
        BasisKey::simplex(v.iter().copied())
    }

    fn pk(a: &[usize], b: &[usize]) -> BasisKey {
        BasisKey::pair(k(a), k(b))
    }

    fn binom(n: usize, r: usize) -> usize {
        if r > n {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn oriental_shapes() {
        let o2 = oriental(2);
        let a = o2.atom(&[0, 1, 2]).unwrap();
        assert_eq!(a.source(1), &GradedChain::basis(1, k(&[0, 2])));
        assert_eq!(
            a.target(1),
            &GradedChain::from_small(1, [(k(&[0, 1]), 1), (k(&[1, 2]), 1)])
        );
        assert_eq!(oriental(3).atom_counts(), vec![4, 6, 4, 1]);
        assert_eq!(oriental(0).atom_counts(), vec![1]);
        for n in 0..=5 {
            let o = oriental(n);
            assert!(o.certificate.passed());
            for (p, &c) in o.atom_counts().iter().enumerate() {
                assert_eq!(c, binom(n + 1, p + 1));
            }
        }
    }

    #[test]
    fn two_atoms_have_the_triangle_shape() {
        let o = oriental(4);
        for key in o.complex.basis(2) {
            let v = key.vertices();
            let a = &o.atoms[key];
            assert_eq!(a.source(1), &GradedChain::basis(1, k(&[v[0], v[2]])));
            assert_eq!(
                a.target(1),
                &GradedChain::from_small(1, [(k(&[v[0], v[1]]), 1), (k(&[v[1], v[2]]), 1)])
            );
        }
    }

    #[test]
    fn cylinder_shapes() {
        let c1 = cylinder(1);
        assert_eq!(c1.complex.basis(2), &[pk(&[0, 1], &[0, 1])]);
        let a = &c1.atoms[&pk(&[0, 1], &[0, 1])];
        assert_eq!(
            a.source(1),
            &GradedChain::from_small(1, [(pk(&[0], &[0, 1]), 1), (pk(&[0, 1], &[1]), 1)])
        );
        assert_eq!(
            a.target(1),
            &GradedChain::from_small(1, [(pk(&[0, 1], &[0]), 1), (pk(&[1], &[0, 1]), 1)])
        );
        assert_eq!(cylinder(2).complex.basis(3), &[pk(&[0, 1], &[0, 1, 2])]);
        assert_eq!(
            cylinder(0).complex.basis_sizes(),
            simplex_complex(1).basis_sizes()
        );
        for m in 0..=4 {
            let c = cylinder(m);
            assert!(c.certificate.passed());
            assert!(validate_complex(&c.complex).passed());
            for p in 0..=m + 1 {
                let expected = (
                    binom(m + 1, p + 1),
                    binom(m + 1, p + 1),
                    if p == 0 { 0 } else { binom(m + 1, p) },
                );
                assert_eq!(c.components(p), expected, "m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn g_phi_cases() {
        let g = g_phi(&[1, 1, 1]).unwrap();
        assert_eq!(
            g.image(&k(&[0, 1, 2])),
            &GradedChain::basis(2, pk(&[1], &[0, 1, 2]))
        );
        let g = g_phi(&[0, 1, 1]).unwrap();
        assert_eq!(
            g.image(&k(&[0, 1, 2])),
            &GradedChain::from_small(2, [(pk(&[0], &[0, 1, 2]), 1), (pk(&[0, 1], &[1, 2]), 1)])
        );
        let g = g_phi(&[0, 0, 1]).unwrap();
        assert_eq!(
            g.image(&k(&[0, 1, 2])),
            &GradedChain::basis(2, pk(&[0], &[0, 1, 2]))
        );
        assert!(matches!(g_phi(&[1, 0]), Err(Error::NotMonotone(_))));
        assert!(g_phi(&[0, 2]).is_err());
    }

    #[test]
    fn g_phi_is_valid_for_small_p() {
        for p in 0..=5 {
            for phi in Monotone::all(p, 1) {
                assert!(g_phi(phi.values()).is_ok(), "φ = {:?}", phi.values());
            }
        }
    }

    #[test]
    fn contraction_values_and_ends() {
        let h = cylinder_contraction(3);
        assert_eq!(
            h.image(&pk(&[0, 1], &[1, 2])),
            &GradedChain::basis(2, k(&[0, 1, 2]))
        );
        assert!(h.image(&pk(&[0, 1], &[0, 2])).is_zero());
        assert_eq!(
            h.image(&pk(&[1], &[0, 1, 3])),
            &GradedChain::basis(2, k(&[0, 1, 3]))
        );
        assert_eq!(h.image(&pk(&[0], &[2])), &GradedChain::basis(0, k(&[0])));
        assert!(h.is_valid());
        for m in 0..=5 {
            let h = cylinder_contraction(m);
            let at0 = h
                .compose(&cylinder_end_between(
                    0,
                    collapse_to_zero(m).source().clone(),
                    h.source().clone(),
                ))
                .unwrap();
            let at1 = h
                .compose(&cylinder_end_between(
                    1,
                    at0.source().clone(),
                    h.source().clone(),
                ))
                .unwrap();
            assert!(at0.equals(&collapse_to_zero(m)), "m = {m}");
            assert!(
                at1.equals(&ChainMorphism::identity(at1.source().clone())),
                "m = {m}"
            );
        }
    }

    #[test]
    fn square_examples() {
        let r = verify_contraction_square(2, 1);
        assert!(r.passed());
        let x = chain_map_of_operator(&Monotone::new(vec![0, 2], 2).unwrap());
        let act = nerve_homotopy_action(&[0, 1], &x).unwrap();
        assert_eq!(act.image(&k(&[0, 1])), &GradedChain::basis(1, k(&[0, 2])));
        assert!(verify_contraction_square(0, 0).passed());
        let r = verify_contraction_square(3, 3);
        assert!(r.passed(), "{:?}", r.witness);
        assert_eq!(
            r.checked,
            (0..=3)
                .map(|p| (p + 2) * binom(p + 4, p + 1))
                .sum::<usize>()
        );
    }

    #[test]
    fn action_ends() {
        let id = ChainMorphism::identity(Arc::new(simplex_complex(2)));
        let one = nerve_homotopy_action(&[1, 1, 1], &id).unwrap();
        assert!(one.equals(&id));
        let zero = nerve_homotopy_action(&[0, 0, 0], &id).unwrap();
        assert!(zero.equals(&collapse_to_zero(2)));
        let bad = crate::adc::zero_morphism(id.source().clone(), id.target().clone());
        assert!(nerve_homotopy_action(&[0, 1, 1], &bad).is_err());
    }

    #[test]
    fn action_is_natural_in_the_simplex() {
        for m in 0..=3 {
            let ctx = HomotopyAction::new(m, 3);
            for p in 0..=3 {
                for psi in Monotone::all(p, m) {
                    let x = ctx.operator(&psi);
                    for phi in Monotone::all(p, 1) {
                        let acted = ctx.act(&phi, &x);
                        for q in 0..=3 {
                            for theta in Monotone::all(q, p) {
                                let after = acted.compose(&ctx.operator(&theta)).unwrap();
                                let x_theta = ctx.operator(&psi.compose(&theta));
                                let before = ctx.act(&phi.compose(&theta), &x_theta);
                                assert!(
                                    after.equals(&before),
                                    "m={m} φ={:?} ψ={:?} θ={:?}",
                                    phi.values(),
                                    psi.values(),
                                    theta.values()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shared_action_matches_the_checked_one() {
        let ctx = HomotopyAction::new(3, 2);
        for psi in Monotone::all(2, 3) {
            for phi in Monotone::all(2, 1) {
                let checked =
                    nerve_homotopy_action(phi.values(), &chain_map_of_operator(&psi)).unwrap();
                assert!(checked.equals(&ctx.act(&phi, &ctx.operator(&psi))));
            }
        }
    }
}
