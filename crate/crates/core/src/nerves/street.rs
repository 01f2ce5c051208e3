//! Street nerves of `K(M, n)`, of its slices and of its lax cylinder, and
//! comma objects as iterated fiber products of those nerves.

use std::sync::Arc;

use rayon::prelude::*;

use crate::adc::{
    chain_map_of_operator_between, simplex_complex, tensor, tensor_morphism_between, AdcComplex,
    ChainMorphism,
};
use crate::chain::BasisKey;
use crate::error::{Error, Result};
use crate::nerves::labeling::{functor_labelings, LabelingSet, Mode, Pullback};
use crate::nerves::monoid::MonoidSpec;
use crate::operator::Monotone;
use crate::orientals::cylinder_end_between;
use crate::simplicial::{fiber_product, representable, SimplicialMap, SimplicialTruncation};

/// A nerve whose `p`-simplices are the labelings of a complex `C_p`; the
/// simplex with index `x` in degree `p` is `levels[p].rows[x]`.
#[derive(Clone, Debug)]
pub struct LabelingNerve {
    pub object: Arc<SimplicialTruncation>,
    pub levels: Vec<LabelingSet>,
}

impl LabelingNerve {
    pub fn monoid(&self) -> &MonoidSpec {
        &self.levels[0].monoid
    }

    pub fn truncation(&self) -> usize {
        self.object.truncation()
    }
}

/// Builds the nerve from the complexes `C_0..C_D` and the chain maps
/// `C_q → C_p` of the cofaces and codegeneracies.
fn labeling_nerve<F>(
    complexes: &[Arc<AdcComplex>],
    operator: F,
    m: &MonoidSpec,
    level: usize,
    mode: Mode,
) -> Result<LabelingNerve>
where
    F: Fn(&Monotone) -> ChainMorphism + Sync,
{
    if level >= 1 && !m.contains(m.unit()) {
        return Err(Error::Closure(format!(
            "{} does not contain the unit, so degeneracies leave the labelings",
            m.name
        )));
    }
    let d = complexes.len() - 1;
    let levels: Vec<LabelingSet> = complexes
        .par_iter()
        .map(|k| functor_labelings(k, m, level, mode))
        .collect::<Result<_>>()?;
    let pullbacks = |theta: Monotone| Pullback::new(&operator(&theta), level);
    let faces: Vec<Vec<Pullback>> = (0..=d)
        .map(|p| {
            if p == 0 {
                Ok(Vec::new())
            } else {
                (0..=p).map(|i| pullbacks(Monotone::coface(p, i))).collect()
            }
        })
        .collect::<Result<_>>()?;
    let degens: Vec<Vec<Pullback>> = (0..=d)
        .map(|p| {
            if p == d {
                Ok(Vec::new())
            } else {
                (0..=p)
                    .map(|i| pullbacks(Monotone::codegeneracy(p, i)))
                    .collect()
            }
        })
        .collect::<Result<_>>()?;
    let names = levels.iter().map(|l| l.rows.clone()).collect();
    let object = SimplicialTruncation::from_named(
        d,
        names,
        |p, i, name| faces[p][i].apply(m, name),
        |p, i, name| degens[p][i].apply(m, name),
    )
    .map_err(|e| Error::Closure(e.to_string()))?;
    Ok(LabelingNerve {
        object: Arc::new(object),
        levels,
    })
}

fn orientals(d: usize) -> Vec<Arc<AdcComplex>> {
    (0..=d).map(|p| Arc::new(simplex_complex(p))).collect()
}

fn oriental_nerve(m: &MonoidSpec, level: usize, mode: Mode, d: usize) -> Result<LabelingNerve> {
    let cn = orientals(d);
    labeling_nerve(
        &cn,
        |theta| {
            chain_map_of_operator_between(
                theta,
                cn[theta.source()].clone(),
                cn[theta.target()].clone(),
            )
        },
        m,
        level,
        mode,
    )
}

/// `N(K(M, n))` through degree `D`: `p`-simplices are the equality
/// labelings of the `n`-atoms of `O_p`.
pub fn kmn_nerve(m: &MonoidSpec, n: usize, d: usize) -> Result<LabelingNerve> {
    if n == 0 {
        return Err(Error::InvalidMonoid("K(M, n) needs n ≥ 1".into()));
    }
    oriental_nerve(m, n, Mode::Equality, d)
}

/// Nerve of the slice description: `p`-simplices label the `(n-1)`-atoms
/// of `O_p` with `Σ∂⁻ ≤ Σ∂⁺` at every `n`-atom. For `n = 1` this is the
/// nerve of the ordered window.
pub fn slice_nerve(m: &MonoidSpec, n: usize, d: usize) -> Result<LabelingNerve> {
    if n == 0 {
        return Err(Error::InvalidMonoid("slices need n ≥ 1".into()));
    }
    if !m.is_ordered() {
        return Err(Error::Unordered);
    }
    oriental_nerve(m, n - 1, Mode::Inequality, d)
}

/// The forgetful map from the `n = 1` slice to `N(K(M, 1))`, sending vertex
/// labels `x` to arrow labels `x_j − x_i`. Needs inverses in `M`.
pub fn slice_projection(slice: &LabelingNerve, base: &LabelingNerve) -> Result<SimplicialMap> {
    let m = slice.monoid();
    if slice.levels[0].level != 0 || base.levels[0].level != 1 {
        return Err(Error::ShapeMismatch(
            "slice projection is defined for n = 1".into(),
        ));
    }
    let mut diffs = Vec::new();
    for (p, l) in base.levels.iter().enumerate() {
        let vertices = &slice.levels[p].keys;
        let pos = |v: usize| {
            vertices
                .iter()
                .position(|k| k.vertices() == [v])
                .expect("vertex key")
        };
        diffs.push(
            l.keys
                .iter()
                .map(|k| (pos(k.vertices()[0]), pos(k.vertices()[1])))
                .collect::<Vec<_>>(),
        );
    }
    let inverse = |a: i64| {
        m.inverse(a)
            .ok_or_else(|| Error::InvalidMonoid(format!("{} has no inverse", m.label(a))))
    };
    for v in m.values() {
        inverse(v)?;
    }
    SimplicialMap::from_names(slice.object.clone(), base.object.clone(), |p, x| {
        diffs[p]
            .iter()
            .map(|&(i, j)| m.add(x[j], m.inverse(x[i]).expect("checked")))
            .collect()
    })
}

/// `N(Hom_lax(Δ^1, K(M, n)))` with its two end projections to
/// `N(K(M, n))`; `p`-simplices label `cn(Δ^1) ⊗ cn(Δ^p)` at level `n`.
#[derive(Clone, Debug)]
pub struct CylinderNerve {
    pub nerve: LabelingNerve,
    pub base: LabelingNerve,
    pub pi0: SimplicialMap,
    pub pi1: SimplicialMap,
}

pub fn cylinder_nerve(m: &MonoidSpec, n: usize, d: usize) -> Result<CylinderNerve> {
    let base = kmn_nerve(m, n, d)?;
    let cn1 = Arc::new(simplex_complex(1));
    let cn = orientals(d);
    let cyl: Vec<Arc<AdcComplex>> = cn.iter().map(|c| Arc::new(tensor(&cn1, c))).collect();
    let id1 = ChainMorphism::identity(cn1.clone());
    let nerve = labeling_nerve(
        &cyl,
        |theta| {
            let (q, p) = (theta.source(), theta.target());
            let x = chain_map_of_operator_between(theta, cn[q].clone(), cn[p].clone());
            tensor_morphism_between(&id1, &x, cyl[q].clone(), cyl[p].clone()).expect("id ⊗ cn(θ)")
        },
        m,
        n,
        Mode::Equality,
    )?;
    let end = |e: usize| -> Result<SimplicialMap> {
        let pbs: Vec<Pullback> = (0..=d)
            .map(|p| Pullback::new(&cylinder_end_between(e, cn[p].clone(), cyl[p].clone()), n))
            .collect::<Result<_>>()?;
        SimplicialMap::from_names(nerve.object.clone(), base.object.clone(), |p, x| {
            pbs[p].apply(m, x)
        })
    };
    let (pi0, pi1) = (end(0)?, end(1)?);
    Ok(CylinderNerve {
        nerve,
        base,
        pi0,
        pi1,
    })
}

/// `N(u↓v) = A ×_C Cyl ×_C B` with its projections to `A` and `B` and to
/// the cylinder.
#[derive(Clone, Debug)]
pub struct CommaNerve {
    pub object: Arc<SimplicialTruncation>,
    pub p1: SimplicialMap,
    pub p2: SimplicialMap,
    pub to_cylinder: SimplicialMap,
}

pub fn comma_nerve(
    u: &SimplicialMap,
    v: &SimplicialMap,
    cyl: &CylinderNerve,
) -> Result<CommaNerve> {
    let c = &cyl.base.object;
    for (side, f) in [("u", u), ("v", v)] {
        if !(Arc::ptr_eq(f.target(), c) || **f.target() == **c) {
            return Err(Error::ShapeMismatch(format!(
                "{side} does not land in the nerve of the cylinder base"
            )));
        }
    }
    let left = fiber_product(u, &cyl.pi0)?;
    let towards_b = cyl.pi1.compose(&left.right)?;
    let right = fiber_product(&towards_b, v)?;
    Ok(CommaNerve {
        object: right.object.clone(),
        p1: left.left.compose(&right.left)?,
        p2: right.right.clone(),
        to_cylinder: left.right.compose(&right.left)?,
    })
}

/// The inclusion of the unique object `∗ : Δ^0 → N(K(M, n))`.
pub fn base_point(base: &LabelingNerve) -> Result<SimplicialMap> {
    representable(base.object.clone(), 0, 0)
}

/// `∗↓K(M, n)`, the comma of the base point and the identity.
pub fn under_slice(cyl: &CylinderNerve) -> Result<CommaNerve> {
    comma_nerve(
        &base_point(&cyl.base)?,
        &SimplicialMap::identity(cyl.base.object.clone()),
        cyl,
    )
}

/// For `n = 1`, the comparison `∗↓K(M, 1) → slice`, reading `x_i` off the
/// `(01)⊗(i)` labels of the cylinder component.
pub fn under_slice_to_slice(
    comma: &CommaNerve,
    cyl: &CylinderNerve,
    slice: &LabelingNerve,
) -> Result<SimplicialMap> {
    let edge = BasisKey::simplex([0, 1]);
    let columns: Vec<Vec<usize>> = slice
        .levels
        .iter()
        .zip(&cyl.nerve.levels)
        .map(|(s, c)| {
            s.keys
                .iter()
                .map(|v| {
                    c.position(&BasisKey::pair(edge.clone(), v.clone()))
                        .ok_or_else(|| {
                            Error::ShapeMismatch("slice and cylinder levels differ".into())
                        })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    SimplicialMap::from_fn(comma.object.clone(), slice.object.clone(), |p, x| {
        let row = &cyl.nerve.levels[p].rows[comma.to_cylinder.apply(p, x)];
        let name: Vec<i64> = columns[p].iter().map(|&c| row[c]).collect();
        slice
            .object
            .index_of(p, &name)
            .ok_or_else(|| Error::NotCommuting(format!("{name:?} is not a simplex of the slice")))
    })
}

/// The map `N(K(M, n)) → N(K(M', n))` induced by a monoid homomorphism,
/// given by its values on `M`.
pub fn homomorphism_map(
    source: &LabelingNerve,
    target: &LabelingNerve,
    h: &[i64],
) -> Result<SimplicialMap> {
    let (m, t) = (source.monoid(), target.monoid());
    let vals = m.values();
    if h.len() != vals.len() || h.iter().any(|&y| !t.contains(y)) {
        return Err(Error::InvalidMorphism(
            "homomorphism must send every element into the target".into(),
        ));
    }
    let at = |a: i64| h[vals.iter().position(|&v| v == a).expect("element")];
    if at(m.unit()) != t.unit() {
        return Err(Error::InvalidMorphism(
            "homomorphism must preserve the unit".into(),
        ));
    }
    for &a in &vals {
        for &b in &vals {
            let s = m.add(a, b);
            if m.contains(s) && at(s) != t.add(at(a), at(b)) {
                return Err(Error::InvalidMorphism(format!(
                    "not additive at ({}, {})",
                    m.label(a),
                    m.label(b)
                )));
            }
        }
    }
    SimplicialMap::from_names(source.object.clone(), target.object.clone(), |_, x| {
        x.iter().map(|&a| at(a)).collect()
    })
}
