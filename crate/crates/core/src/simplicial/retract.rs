use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::Monotone;
use crate::simplicial::fiber_product;
use crate::simplicial::sset::{
    product, product_components, product_index, representable, same_sset, standard_simplex,
    FiberProduct, SimplicialMap, SimplicialTruncation,
};

/// The value of the homotopy `k` on `(φ, ψ)`: `(0,…,0, ψ(r),…,ψ(p))` where
/// `r` is the number of zeros of `φ`.
pub fn homotopy_k_value(phi: &[usize], psi: &[usize]) -> Vec<usize> {
    phi.iter()
        .zip(psi)
        .map(|(&f, &s)| if f == 0 { 0 } else { s })
        .collect()
}

/// `Δ^1 × X` with the canonical cylinder coordinate.
pub fn cylinder_object(x: &SimplicialTruncation) -> SimplicialTruncation {
    product(&standard_simplex(1, x.truncation()), x).expect("same truncation")
}

/// The homotopy `k : Δ^1 × Δ^m → Δ^m` from the constant map at `0` to the
/// identity.
pub fn homotopy_k(m: usize, d: usize) -> SimplicialMap {
    let dm = standard_simplex(m, d);
    let source = Arc::new(cylinder_object(&dm));
    let target = Arc::new(dm);
    let d1 = standard_simplex(1, d);
    let t = target.clone();
    SimplicialMap::from_fn(source, target, |p, xy| {
        let (a, b) = product_components(&t, p, xy);
        let phi: Vec<usize> = d1.name(p, a).iter().map(|&v| v as usize).collect();
        let psi: Vec<usize> = t.name(p, b).iter().map(|&v| v as usize).collect();
        let v: Vec<i64> = homotopy_k_value(&phi, &psi)
            .into_iter()
            .map(|v| v as i64)
            .collect();
        Ok(t.index_of(p, &v).expect("monotone tuple"))
    })
    .expect("k is simplicial")
}

/// `X → Δ^1 × X`, `x ↦ (ε, x)` for the end `ε ∈ {0, 1}`.
pub fn end_inclusion(x: Arc<SimplicialTruncation>, end: usize) -> SimplicialMap {
    assert!(end <= 1);
    let d1 = standard_simplex(1, x.truncation());
    let cyl = Arc::new(cylinder_object(&x));
    let xx = x.clone();
    SimplicialMap::from_fn(x, cyl, |p, s| {
        let c = d1
            .index_of(p, &vec![end as i64; p + 1])
            .expect("constant tuple");
        Ok(product_index(&xx, p, c, s))
    })
    .expect("end inclusions are simplicial")
}

/// The second projection `Δ^1 × X → X`.
pub fn cylinder_projection(x: Arc<SimplicialTruncation>) -> SimplicialMap {
    let cyl = Arc::new(cylinder_object(&x));
    let xx = x.clone();
    SimplicialMap::from_fn(cyl, x, |p, s| Ok(product_components(&xx, p, s).1)).expect("projection")
}

/// `Δ^1 × f`.
pub fn cylinder_map(f: &SimplicialMap) -> SimplicialMap {
    let id = SimplicialMap::identity(Arc::new(standard_simplex(1, f.source().truncation())));
    SimplicialMap::product(&id, f).expect("same truncation")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `h` goes from `ir` to the identity.
    Left,
    /// `h` goes from the identity to `ir`.
    Right,
}

/// A strong deformation retract `(i : A → B, r : B → A, h : Δ^1 × B → B)`.
#[derive(Clone, Debug)]
pub struct SdrTriple {
    pub i: SimplicialMap,
    pub r: SimplicialMap,
    pub h: SimplicialMap,
    pub side: Side,
}

impl SdrTriple {
    pub fn a(&self) -> &Arc<SimplicialTruncation> {
        self.i.source()
    }

    pub fn b(&self) -> &Arc<SimplicialTruncation> {
        self.i.target()
    }

    /// `(id, id, p_2)` on `X`.
    pub fn identity(x: Arc<SimplicialTruncation>) -> Self {
        let id = SimplicialMap::identity(x.clone());
        Self {
            i: id.clone(),
            r: id,
            h: cylinder_projection(x),
            side: Side::Left,
        }
    }

    /// `(0 : Δ^0 → Δ^m, Δ^m → Δ^0, k)`, a strong left deformation retract.
    pub fn vertex(m: usize, d: usize) -> Self {
        let dm = Arc::new(standard_simplex(m, d));
        let i = representable(dm.clone(), 0, 0).expect("vertex 0");
        let pt = i.source().clone();
        let r = SimplicialMap::from_fn(dm, pt, |_, _| Ok(0)).expect("terminal map");
        Self {
            i,
            r,
            h: homotopy_k(m, d),
            side: Side::Left,
        }
    }

    /// First violated condition, or `None` when the triple is a strong
    /// deformation retract on its stated side.
    pub fn failure(&self) -> Result<Option<String>> {
        let (a, b) = (self.a().clone(), self.b().clone());
        if !same_sset(self.r.source(), &b) || !same_sset(self.r.target(), &a) {
            return Err(Error::ShapeMismatch(
                "r must go from the target of i to its source".into(),
            ));
        }
        if !same_sset(self.h.target(), &b) || **self.h.source() != cylinder_object(&b) {
            return Err(Error::ShapeMismatch("h must be a map Δ^1 × B → B".into()));
        }
        let ri = self.r.compose(&self.i)?;
        if let Some((p, x)) = ri.first_difference(&SimplicialMap::identity(a.clone())) {
            return Ok(Some(format!("ri ≠ id at {:?}", a.name(p, x))));
        }
        let ir = self.i.compose(&self.r)?;
        let id = SimplicialMap::identity(b.clone());
        let (at0, at1) = match self.side {
            Side::Left => (&ir, &id),
            Side::Right => (&id, &ir),
        };
        for (end, expected) in [(0, at0), (1, at1)] {
            let restricted = self.h.compose(&end_inclusion(b.clone(), end))?;
            if let Some((p, x)) = restricted.first_difference(expected) {
                return Ok(Some(format!(
                    "h at end {end} is wrong on {:?}",
                    b.name(p, x)
                )));
            }
        }
        let lhs = self.h.compose(&cylinder_map(&self.i))?;
        let rhs = self.i.compose(&cylinder_projection(a))?;
        if let Some((p, x)) = lhs.first_difference(&rhs) {
            return Ok(Some(format!(
                "h(Δ^1 × i) ≠ i p_2 at {:?}",
                lhs.source().name(p, x)
            )));
        }
        Ok(None)
    }
}

pub fn check_sdr(t: &SdrTriple) -> Result<bool> {
    Ok(t.failure()?.is_none())
}

fn require(cond: bool, square: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::NotCommuting(square.into()))
    }
}

/// The fiber product of three strong deformation retracts over the maps
/// `f_k : A_k → A_2` and `g_k : B_k → B_2`, `k = 0, 1`:
/// `(i_0 ×_{i_2} i_1, r_0 ×_{r_2} r_1, h_0 ×_{h_2} h_1)`.
///
/// Both hypothesis squares are checked, as is the square `f_k r_k = r_2 g_k`
/// that makes the retraction well defined.
pub fn fiber_product_sdr(
    t: [&SdrTriple; 3],
    f: [&SimplicialMap; 2],
    g: [&SimplicialMap; 2],
) -> Result<SdrTriple> {
    let side = t[2].side;
    if t.iter().any(|x| x.side != side) {
        return Err(Error::ShapeMismatch(
            "all three retracts must be on the same side".into(),
        ));
    }
    for k in 0..2 {
        if !same_sset(f[k].source(), t[k].a()) || !same_sset(f[k].target(), t[2].a()) {
            return Err(Error::ShapeMismatch(format!("f_{k} must go A_{k} → A_2")));
        }
        if !same_sset(g[k].source(), t[k].b()) || !same_sset(g[k].target(), t[2].b()) {
            return Err(Error::ShapeMismatch(format!("g_{k} must go B_{k} → B_2")));
        }
    }
    for k in 0..2 {
        let gi = g[k].compose(&t[k].i)?;
        let if_ = t[2].i.compose(f[k])?;
        require(
            gi == if_,
            &format!("inclusion square {k}: g_{k} i_{k} ≠ i_2 f_{k}"),
        )?;
        let gh = g[k].compose(&t[k].h)?;
        let hg = t[2].h.compose(&cylinder_map(g[k]))?;
        require(
            gh == hg,
            &format!("homotopy square {k}: g_{k} h_{k} ≠ h_2 (Δ^1 × g_{k})"),
        )?;
        let fr = f[k].compose(&t[k].r)?;
        let rg = t[2].r.compose(g[k])?;
        require(
            fr == rg,
            &format!("retraction square {k}: f_{k} r_{k} ≠ r_2 g_{k}"),
        )?;
    }
    let fa: FiberProduct = fiber_product(f[0], f[1])?;
    let fb: FiberProduct = fiber_product(g[0], g[1])?;
    let i = fb.lift(&t[0].i.compose(&fa.left)?, &t[1].i.compose(&fa.right)?)?;
    let r = fa.lift(&t[0].r.compose(&fb.left)?, &t[1].r.compose(&fb.right)?)?;
    let h0 = t[0].h.compose(&cylinder_map(&fb.left))?;
    let h1 = t[1].h.compose(&cylinder_map(&fb.right))?;
    let h = fb.lift(&h0, &h1)?;
    Ok(SdrTriple { i, r, h, side })
}

/// The standard compatible instance: `t_k = (0, r, k)` on `Δ^{m_k}` with
/// `f_k = id` on `Δ^0` and `g_k = Δ^{θ_k}` for monotone `θ_k : [m_k] → [m_2]`
/// fixing `0`.
pub fn vertex_instance(m: [usize; 3], theta: [&Monotone; 2], d: usize) -> Result<SdrTriple> {
    for (k, th) in theta.iter().enumerate() {
        if th.source() != m[k] || th.target() != m[2] {
            return Err(Error::ShapeMismatch(format!(
                "θ_{k} must go [m_{k}] → [m_2]"
            )));
        }
    }
    let t: Vec<SdrTriple> = m.iter().map(|&mk| SdrTriple::vertex(mk, d)).collect();
    let id_pt = SimplicialMap::identity(t[2].a().clone());
    let g0 = retarget(crate::simplicial::simplex_map(theta[0], d), &t[0], &t[2])?;
    let g1 = retarget(crate::simplicial::simplex_map(theta[1], d), &t[1], &t[2])?;
    fiber_product_sdr([&t[0], &t[1], &t[2]], [&id_pt, &id_pt], [&g0, &g1])
}

/// Shapes `m`, maps `θ` and the resulting triple.
pub type RandomInstance = ([usize; 3], [Monotone; 2], SdrTriple);

/// A seeded random [`vertex_instance`] with `m_k ≤ max_m` and each `θ_k`
/// drawn uniformly among monotone maps fixing `0`. Returns the shapes with
/// the triple so failures can be reported.
pub fn random_vertex_instance<R: Rng>(
    rng: &mut R,
    max_m: usize,
    d: usize,
) -> Result<RandomInstance> {
    let m = [
        rng.gen_range(0..=max_m),
        rng.gen_range(0..=max_m),
        rng.gen_range(0..=max_m),
    ];
    let draw = |rng: &mut R, len: usize| {
        let mut v: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=m[2])).collect();
        v.sort_unstable();
        v[0] = 0;
        Monotone::new(v, m[2])
    };
    let theta = [draw(rng, m[0] + 1)?, draw(rng, m[1] + 1)?];
    let t = vertex_instance(m, [&theta[0], &theta[1]], d)?;
    Ok((m, theta, t))
}

/// `count` instances from a ChaCha stream seeded with `seed`.
pub fn seeded_vertex_instances(
    seed: u64,
    count: usize,
    max_m: usize,
    d: usize,
) -> Result<Vec<RandomInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_vertex_instance(&mut rng, max_m, d))
        .collect()
}

fn retarget(g: SimplicialMap, from: &SdrTriple, to: &SdrTriple) -> Result<SimplicialMap> {
    SimplicialMap::new(from.b().clone(), to.b().clone(), g.levels().to_vec())
}
