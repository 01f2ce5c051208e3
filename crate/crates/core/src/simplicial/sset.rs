use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Monotone;

/// A simplicial set known in degrees `0..=D`. Simplices are indices into
/// per-degree lists; every simplex also carries an integer-tuple name,
/// unique within its degree, used for lookup and serialization.
///
/// Faces `d_i : X_p → X_{p-1}` are stored for `1 ≤ p ≤ D` and degeneracies
/// `s_i : X_p → X_{p+1}` for `p < D`. The simplicial identities are checked
/// on construction.
#[derive(Clone, Debug)]
pub struct SimplicialTruncation {
    truncation: usize,
    names: Vec<Vec<Vec<i64>>>,
    lookup: Vec<HashMap<Vec<i64>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
}

impl PartialEq for SimplicialTruncation {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self.names == other.names
            && self.faces == other.faces
            && self.degeneracies == other.degeneracies
    }
}

impl Eq for SimplicialTruncation {}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSimplicial(msg.into())
}

impl SimplicialTruncation {
    /// Builds and validates a truncation from explicit tables.
    /// `faces[p][x]` has `p + 1` entries for `p ≥ 1` and none for `p = 0`;
    /// `degeneracies[p][x]` has `p + 1` entries for `p < D` and none at `D`.
    pub fn new(
        truncation: usize,
        names: Vec<Vec<Vec<i64>>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let levels = truncation + 1;
        if names.len() != levels || faces.len() != levels || degeneracies.len() != levels {
            return Err(invalid(format!(
                "expected tables for degrees 0..={truncation}"
            )));
        }
        let mut lookup = Vec::with_capacity(levels);
        for (p, level) in names.iter().enumerate() {
            let mut map = HashMap::with_capacity(level.len());
            for (x, name) in level.iter().enumerate() {
                if map.insert(name.clone(), x).is_some() {
                    return Err(invalid(format!("duplicate name {name:?} in degree {p}")));
                }
            }
            lookup.push(map);
        }
        for p in 0..levels {
            let n = names[p].len();
            if faces[p].len() != n || degeneracies[p].len() != n {
                return Err(invalid(format!(
                    "degree {p}: table sizes disagree with {n} simplices"
                )));
            }
            let nf = if p == 0 { 0 } else { p + 1 };
            let ns = if p < truncation { p + 1 } else { 0 };
            for x in 0..n {
                if faces[p][x].len() != nf || degeneracies[p][x].len() != ns {
                    return Err(invalid(format!(
                        "degree {p}, simplex {x}: wrong number of structure maps"
                    )));
                }
                if faces[p][x].iter().any(|&y| y >= names[p - 1].len()) {
                    return Err(invalid(format!(
                        "degree {p}, simplex {x}: face out of range"
                    )));
                }
                if degeneracies[p][x].iter().any(|&y| y >= names[p + 1].len()) {
                    return Err(invalid(format!(
                        "degree {p}, simplex {x}: degeneracy out of range"
                    )));
                }
            }
        }
        let mut degenerate: Vec<Vec<bool>> = names.iter().map(|l| vec![false; l.len()]).collect();
        for p in 0..truncation {
            for s in &degeneracies[p] {
                for &y in s {
                    degenerate[p + 1][y] = true;
                }
            }
        }
        let out = Self {
            truncation,
            names,
            lookup,
            faces,
            degeneracies,
            degenerate,
        };
        out.check_identities()?;
        Ok(out)
    }

    /// Builds a truncation from simplex names and structure maps given on
    /// names. Every image must be a listed name of the right degree.
    pub fn from_named<F, S>(
        truncation: usize,
        names: Vec<Vec<Vec<i64>>>,
        face: F,
        degeneracy: S,
    ) -> Result<Self>
    where
        F: Fn(usize, usize, &[i64]) -> Vec<i64>,
        S: Fn(usize, usize, &[i64]) -> Vec<i64>,
    {
        let lookup: Vec<HashMap<&[i64], usize>> = names
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(x, n)| (n.as_slice(), x))
                    .collect()
            })
            .collect();
        let find = |p: usize, name: &[i64]| {
            lookup[p]
                .get(name)
                .copied()
                .ok_or_else(|| invalid(format!("{name:?} is not a {p}-simplex")))
        };
        let mut faces = Vec::with_capacity(truncation + 1);
        let mut degeneracies = Vec::with_capacity(truncation + 1);
        for p in 0..=truncation {
            let mut fl = Vec::with_capacity(names[p].len());
            let mut sl = Vec::with_capacity(names[p].len());
            for name in &names[p] {
                let f = if p == 0 {
                    Vec::new()
                } else {
                    (0..=p)
                        .map(|i| find(p - 1, &face(p, i, name)))
                        .collect::<Result<Vec<_>>>()?
                };
                let s = if p < truncation {
                    (0..=p)
                        .map(|i| find(p + 1, &degeneracy(p, i, name)))
                        .collect::<Result<Vec<_>>>()?
                } else {
                    Vec::new()
                };
                fl.push(f);
                sl.push(s);
            }
            faces.push(fl);
            degeneracies.push(sl);
        }
        Self::new(truncation, names, faces, degeneracies)
    }

    fn check_identities(&self) -> Result<()> {
        let d = |p: usize, i: usize, x: usize| self.faces[p][x][i];
        let s = |p: usize, i: usize, x: usize| self.degeneracies[p][x][i];
        let fail = |what: &str, p: usize, x: usize| {
            Err(invalid(format!("{what} fails on {:?}", self.names[p][x])))
        };
        for p in 2..=self.truncation {
            for x in 0..self.count(p) {
                for j in 1..=p {
                    for i in 0..j {
                        if d(p - 1, i, d(p, j, x)) != d(p - 1, j - 1, d(p, i, x)) {
                            return fail("d_i d_j = d_{j-1} d_i", p, x);
                        }
                    }
                }
            }
        }
        for p in 0..self.truncation {
            for x in 0..self.count(p) {
                for j in 0..=p {
                    let y = s(p, j, x);
                    for i in 0..=p + 1 {
                        let lhs = d(p + 1, i, y);
                        let rhs = if i == j || i == j + 1 {
                            x
                        } else if i < j {
                            s(p - 1, j - 1, d(p, i, x))
                        } else {
                            s(p - 1, j, d(p, i - 1, x))
                        };
                        if lhs != rhs {
                            return fail("d_i s_j", p, x);
                        }
                    }
                }
            }
        }
        for p in 0..self.truncation.saturating_sub(1) {
            for x in 0..self.count(p) {
                for j in 0..=p {
                    for i in 0..=j {
                        if s(p + 1, i, s(p, j, x)) != s(p + 1, j + 1, s(p, i, x)) {
                            return fail("s_i s_j = s_{j+1} s_i", p, x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn count(&self, p: usize) -> usize {
        self.names[p].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.truncation)
            .map(|p| self.nondegenerate(p).count())
            .collect()
    }

    pub fn name(&self, p: usize, x: usize) -> &[i64] {
        &self.names[p][x]
    }

    pub fn names(&self, p: usize) -> &[Vec<i64>] {
        &self.names[p]
    }

    pub fn index_of(&self, p: usize, name: &[i64]) -> Option<usize> {
        self.lookup.get(p)?.get(name).copied()
    }

    /// `d_i x` for a `p`-simplex `x`, `p ≥ 1`.
    pub fn face(&self, p: usize, i: usize, x: usize) -> usize {
        self.faces[p][x][i]
    }

    /// `s_i x` for a `p`-simplex `x`, `p < D`.
    pub fn degeneracy(&self, p: usize, i: usize, x: usize) -> usize {
        self.degeneracies[p][x][i]
    }

    pub fn is_degenerate(&self, p: usize, x: usize) -> bool {
        self.degenerate[p][x]
    }

    pub fn nondegenerate(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.count(p)).filter(move |&x| !self.degenerate[p][x])
    }

    /// `θ*(x)` for `θ : [q] → [p]`: the faces `d_j` for the values `j` that
    /// `θ` misses (largest first), then the degeneracies `s_k` for the
    /// repeated positions `k` (smallest first).
    pub fn apply_operator(&self, p: usize, x: usize, theta: &Monotone) -> usize {
        assert_eq!(
            theta.target(),
            p,
            "operator target must be the simplex degree"
        );
        let mut deg = p;
        let mut cur = x;
        for &j in theta.missed_values().iter().rev() {
            cur = self.face(deg, j, cur);
            deg -= 1;
        }
        for k in theta.degeneracy_indices() {
            cur = self.degeneracy(deg, k, cur);
            deg += 1;
        }
        cur
    }

    /// The `k`-th vertex of a `p`-simplex.
    pub fn vertex(&self, p: usize, x: usize, k: usize) -> usize {
        self.apply_operator(p, x, &Monotone::constant(0, k, p))
    }

    /// The same simplicial set cut down to degrees `0..=d`.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.truncation {
            return Err(Error::TruncationMismatch(d, self.truncation));
        }
        let mut degeneracies = self.degeneracies[..=d].to_vec();
        for s in &mut degeneracies[d] {
            s.clear();
        }
        Self::new(
            d,
            self.names[..=d].to_vec(),
            self.faces[..=d].to_vec(),
            degeneracies,
        )
    }
}

pub(crate) fn same_sset(a: &Arc<SimplicialTruncation>, b: &Arc<SimplicialTruncation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn to_names(tuples: impl IntoIterator<Item = Vec<usize>>) -> Vec<Vec<i64>> {
    tuples
        .into_iter()
        .map(|t| t.into_iter().map(|v| v as i64).collect())
        .collect()
}

fn delete_at(name: &[i64], i: usize) -> Vec<i64> {
    name.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

fn repeat_at(name: &[i64], i: usize) -> Vec<i64> {
    let mut out = name.to_vec();
    out.insert(i, name[i]);
    out
}

fn from_tuples(d: usize, keep: impl Fn(&Monotone) -> bool, m: usize) -> SimplicialTruncation {
    let names = (0..=d)
        .map(|p| {
            to_names(
                Monotone::all(p, m)
                    .into_iter()
                    .filter(|t| keep(t))
                    .map(|t| t.values().to_vec()),
            )
        })
        .collect();
    SimplicialTruncation::from_named(
        d,
        names,
        |_, i, n| delete_at(n, i),
        |_, i, n| repeat_at(n, i),
    )
    .expect("tuple sets closed under deletion and repetition")
}

/// `Δ^m` truncated at `D`: `p`-simplices are the monotone tuples in `[0,m]`
/// of length `p + 1`, in lexicographic order.
pub fn standard_simplex(m: usize, d: usize) -> SimplicialTruncation {
    from_tuples(d, |_| true, m)
}

/// `∂Δ^m`: the monotone tuples that miss at least one vertex.
pub fn boundary_of_simplex(m: usize, d: usize) -> SimplicialTruncation {
    from_tuples(d, |t| !t.is_surjective(), m)
}

pub fn point(d: usize) -> SimplicialTruncation {
    standard_simplex(0, d)
}

pub fn empty(d: usize) -> SimplicialTruncation {
    SimplicialTruncation::new(
        d,
        vec![Vec::new(); d + 1],
        vec![Vec::new(); d + 1],
        vec![Vec::new(); d + 1],
    )
    .expect("empty simplicial set")
}

/// Names for pairs: the concatenation of the component names, unless that
/// is ambiguous in some degree, in which case the index pair is used there.
fn pair_names(
    pairs: &[(usize, usize)],
    x: &SimplicialTruncation,
    y: &SimplicialTruncation,
    p: usize,
) -> Vec<Vec<i64>> {
    let concat: Vec<Vec<i64>> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut n = x.name(p, a).to_vec();
            n.extend_from_slice(y.name(p, b));
            n
        })
        .collect();
    let mut seen = std::collections::HashSet::with_capacity(concat.len());
    if concat.iter().all(|n| seen.insert(n.as_slice())) {
        concat
    } else {
        pairs
            .iter()
            .map(|&(a, b)| vec![a as i64, b as i64])
            .collect()
    }
}

fn from_pairs(
    d: usize,
    pairs: Vec<Vec<(usize, usize)>>,
    x: &SimplicialTruncation,
    y: &SimplicialTruncation,
) -> (SimplicialTruncation, Vec<HashMap<(usize, usize), usize>>) {
    let index: Vec<HashMap<(usize, usize), usize>> = pairs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &pr)| (pr, i)).collect())
        .collect();
    let names = (0..=d).map(|p| pair_names(&pairs[p], x, y, p)).collect();
    let mut faces = Vec::with_capacity(d + 1);
    let mut degeneracies = Vec::with_capacity(d + 1);
    for p in 0..=d {
        faces.push(
            pairs[p]
                .iter()
                .map(|&(a, b)| {
                    if p == 0 {
                        Vec::new()
                    } else {
                        (0..=p)
                            .map(|i| index[p - 1][&(x.face(p, i, a), y.face(p, i, b))])
                            .collect()
                    }
                })
                .collect(),
        );
        degeneracies.push(
            pairs[p]
                .iter()
                .map(|&(a, b)| {
                    if p == d {
                        Vec::new()
                    } else {
                        (0..=p)
                            .map(|i| index[p + 1][&(x.degeneracy(p, i, a), y.degeneracy(p, i, b))])
                            .collect()
                    }
                })
                .collect(),
        );
    }
    let obj = SimplicialTruncation::new(d, names, faces, degeneracies)
        .expect("pairs of simplices form a simplicial set");
    (obj, index)
}

/// `X × Y`. The `p`-simplex `(x, y)` has index `x · |Y_p| + y`.
pub fn product(x: &SimplicialTruncation, y: &SimplicialTruncation) -> Result<SimplicialTruncation> {
    if x.truncation != y.truncation {
        return Err(Error::TruncationMismatch(x.truncation, y.truncation));
    }
    let d = x.truncation;
    let pairs = (0..=d)
        .map(|p| {
            (0..x.count(p))
                .flat_map(|a| (0..y.count(p)).map(move |b| (a, b)))
                .collect()
        })
        .collect();
    Ok(from_pairs(d, pairs, x, y).0)
}

/// Index of `(a, b)` in `X × Y` (see [`product`]).
pub fn product_index(y: &SimplicialTruncation, p: usize, a: usize, b: usize) -> usize {
    a * y.count(p) + b
}

/// Components of a simplex of `X × Y`.
pub fn product_components(y: &SimplicialTruncation, p: usize, xy: usize) -> (usize, usize) {
    let n = y.count(p);
    (xy / n, xy % n)
}

/// A map of truncated simplicial sets, given levelwise on simplex indices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialTruncation>,
    target: Arc<SimplicialTruncation>,
    levels: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
            && same_sset(&self.source, &other.source)
            && same_sset(&self.target, &other.target)
    }
}

impl SimplicialMap {
    /// Validates shape and commutation with every face and degeneracy.
    pub fn new(
        source: Arc<SimplicialTruncation>,
        target: Arc<SimplicialTruncation>,
        levels: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = source.truncation;
        if target.truncation != d {
            return Err(Error::TruncationMismatch(d, target.truncation));
        }
        if levels.len() != d + 1 {
            return Err(Error::InvalidMorphism(format!("expected {} levels", d + 1)));
        }
        for p in 0..=d {
            if levels[p].len() != source.count(p) || levels[p].iter().any(|&y| y >= target.count(p))
            {
                return Err(Error::InvalidMorphism(format!(
                    "level {p} has the wrong shape"
                )));
            }
        }
        let f = Self {
            source,
            target,
            levels,
        };
        if let Some(msg) = f.violation() {
            return Err(Error::InvalidMorphism(msg));
        }
        Ok(f)
    }

    pub fn from_fn<F>(
        source: Arc<SimplicialTruncation>,
        target: Arc<SimplicialTruncation>,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<usize>,
    {
        let levels = (0..=source.truncation)
            .map(|p| {
                (0..source.count(p))
                    .map(|x| f(p, x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, levels)
    }

    /// As [`SimplicialMap::from_fn`], with images given by target names.
    pub fn from_names<F>(
        source: Arc<SimplicialTruncation>,
        target: Arc<SimplicialTruncation>,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, &[i64]) -> Vec<i64>,
    {
        let t = target.clone();
        let s = source.clone();
        Self::from_fn(source, target, |p, x| {
            let image = f(p, s.name(p, x));
            t.index_of(p, &image)
                .ok_or_else(|| Error::InvalidMorphism(format!("{image:?} is not a {p}-simplex")))
        })
    }

    fn violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        for p in 0..=s.truncation {
            for x in 0..s.count(p) {
                let fx = self.levels[p][x];
                if p > 0 {
                    for i in 0..=p {
                        if self.levels[p - 1][s.face(p, i, x)] != t.face(p, i, fx) {
                            return Some(format!(
                                "does not commute with d_{i} on {:?}",
                                s.name(p, x)
                            ));
                        }
                    }
                }
                if p < s.truncation {
                    for i in 0..=p {
                        if self.levels[p + 1][s.degeneracy(p, i, x)] != t.degeneracy(p, i, fx) {
                            return Some(format!(
                                "does not commute with s_{i} on {:?}",
                                s.name(p, x)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn identity(x: Arc<SimplicialTruncation>) -> Self {
        let levels = (0..=x.truncation)
            .map(|p| (0..x.count(p)).collect())
            .collect();
        Self {
            source: x.clone(),
            target: x,
            levels,
        }
    }

    pub fn source(&self) -> &Arc<SimplicialTruncation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialTruncation> {
        &self.target
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn apply(&self, p: usize, x: usize) -> usize {
        self.levels[p][x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_sset(inner.target(), self.source()) {
            return Err(Error::ShapeMismatch(
                "composite of non-composable simplicial maps".into(),
            ));
        }
        let levels = inner
            .levels
            .iter()
            .enumerate()
            .map(|(p, l)| l.iter().map(|&x| self.levels[p][x]).collect())
            .collect();
        Ok(Self {
            source: inner.source.clone(),
            target: self.target.clone(),
            levels,
        })
    }

    /// First simplex on which two parallel maps differ.
    pub fn first_difference(&self, other: &SimplicialMap) -> Option<(usize, usize)> {
        (0..self.levels.len())
            .flat_map(|p| (0..self.levels[p].len()).map(move |x| (p, x)))
            .find(|&(p, x)| self.levels[p][x] != other.levels[p][x])
    }

    pub fn is_isomorphism(&self) -> bool {
        self.levels.iter().enumerate().all(|(p, l)| {
            let mut hit = vec![false; self.target.count(p)];
            l.len() == hit.len() && l.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        })
    }

    /// `f × g : X × Y → X' × Y'`.
    pub fn product(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        let source = Arc::new(product(f.source(), g.source())?);
        let target = Arc::new(product(f.target(), g.target())?);
        let (ys, yt) = (g.source().clone(), g.target().clone());
        let levels = (0..=source.truncation)
            .map(|p| {
                (0..source.count(p))
                    .map(|xy| {
                        let (a, b) = product_components(&ys, p, xy);
                        product_index(&yt, p, f.apply(p, a), g.apply(p, b))
                    })
                    .collect()
            })
            .collect();
        Ok(SimplicialMap {
            source,
            target,
            levels,
        })
    }

    /// The projections `X × Y → X` and `X × Y → Y` for a product built by
    /// [`product`].
    pub fn projections(
        xy: Arc<SimplicialTruncation>,
        x: Arc<SimplicialTruncation>,
        y: Arc<SimplicialTruncation>,
    ) -> Result<(SimplicialMap, SimplicialMap)> {
        let yy = y.clone();
        let p1 = Self::from_fn(xy.clone(), x, |p, s| Ok(product_components(&yy, p, s).0))?;
        let yy = y.clone();
        let p2 = Self::from_fn(xy, y, |p, s| Ok(product_components(&yy, p, s).1))?;
        Ok((p1, p2))
    }
}

/// The map `Δ^m → X` classifying an `m`-simplex `x`: `θ ↦ θ*(x)`.
pub fn representable(
    x: Arc<SimplicialTruncation>,
    m: usize,
    simplex: usize,
) -> Result<SimplicialMap> {
    if m > x.truncation {
        return Err(Error::OutOfRange {
            requested: m,
            reliable: x.truncation,
        });
    }
    let delta = Arc::new(standard_simplex(m, x.truncation));
    let xx = x.clone();
    let dd = delta.clone();
    SimplicialMap::from_fn(delta, x, move |p, t| {
        let theta = Monotone::new(dd.name(p, t).iter().map(|&v| v as usize).collect(), m)?;
        Ok(xx.apply_operator(m, simplex, &theta))
    })
}

/// `Δ^a → Δ^b` induced by a monotone `θ : [a] → [b]` (postcomposition).
pub fn simplex_map(theta: &Monotone, d: usize) -> SimplicialMap {
    let source = Arc::new(standard_simplex(theta.source(), d));
    let target = Arc::new(standard_simplex(theta.target(), d));
    SimplicialMap::from_names(source, target, |_, n| {
        n.iter().map(|&v| theta.apply(v as usize) as i64).collect()
    })
    .expect("postcomposition is simplicial")
}

/// The pullback `X ×_Z Y` of `f : X → Z` and `g : Y → Z` with its two
/// projections. Simplices are pairs `(x, y)` with `f x = g y`, ordered by
/// `x` then `y`.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub object: Arc<SimplicialTruncation>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    index: Vec<HashMap<(usize, usize), usize>>,
}

impl FiberProduct {
    pub fn index_of(&self, p: usize, x: usize, y: usize) -> Option<usize> {
        self.index[p].get(&(x, y)).copied()
    }

    /// The map `W → X ×_Z Y` induced by `a : W → X` and `b : W → Y`.
    pub fn lift(&self, a: &SimplicialMap, b: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_sset(a.source(), b.source())
            || !same_sset(a.target(), self.left.target())
            || !same_sset(b.target(), self.right.target())
        {
            return Err(Error::ShapeMismatch(
                "cone legs do not match the fiber product".into(),
            ));
        }
        let w = a.source().clone();
        SimplicialMap::from_fn(w.clone(), self.object.clone(), |p, s| {
            self.index_of(p, a.apply(p, s), b.apply(p, s))
                .ok_or_else(|| {
                    Error::NotCommuting(format!(
                        "cone legs disagree over the base on {:?}",
                        w.name(p, s)
                    ))
                })
        })
    }
}

pub fn fiber_product(f: &SimplicialMap, g: &SimplicialMap) -> Result<FiberProduct> {
    if !same_sset(f.target(), g.target()) {
        return Err(Error::ShapeMismatch(
            "fiber product of maps with different targets".into(),
        ));
    }
    let (x, y) = (f.source().clone(), g.source().clone());
    if x.truncation != y.truncation {
        return Err(Error::TruncationMismatch(x.truncation, y.truncation));
    }
    let d = x.truncation;
    let mut pairs = Vec::with_capacity(d + 1);
    for p in 0..=d {
        let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in 0..y.count(p) {
            over.entry(g.apply(p, b)).or_default().push(b);
        }
        let mut level = Vec::new();
        for a in 0..x.count(p) {
            if let Some(bs) = over.get(&f.apply(p, a)) {
                level.extend(bs.iter().map(|&b| (a, b)));
            }
        }
        pairs.push(level);
    }
    let components: Vec<Vec<(usize, usize)>> = pairs.clone();
    let (obj, index) = from_pairs(d, pairs, &x, &y);
    let object = Arc::new(obj);
    let left = SimplicialMap {
        source: object.clone(),
        target: x,
        levels: components
            .iter()
            .map(|l| l.iter().map(|pr| pr.0).collect())
            .collect(),
    };
    let right = SimplicialMap {
        source: object.clone(),
        target: y,
        levels: components
            .iter()
            .map(|l| l.iter().map(|pr| pr.1).collect())
            .collect(),
    };
    Ok(FiberProduct {
        object,
        left,
        right,
        index,
    })
}
