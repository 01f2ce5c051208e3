//! Independent oracles: the classical nerve of a finite category from
//! composable strings, and the Dold–Kan model of `K(M, n)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::nerves::monoid::MonoidSpec;
use crate::nerves::street::LabelingNerve;
use crate::operator::Monotone;
use crate::simplicial::{SimplicialMap, SimplicialTruncation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category. `compose[g][f]` is `g ∘ f`, defined when
/// `target(f) = source(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategorySpec {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCategory(msg.into())
}

impl FiniteCategorySpec {
    /// Validates typing, unit and associativity laws.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let (no, na) = (objects.len(), arrows.len());
        if arrows.iter().any(|a| a.source >= no || a.target >= no) {
            return Err(invalid("arrow endpoints must be objects"));
        }
        if identities.len() != no
            || identities
                .iter()
                .enumerate()
                .any(|(o, &i)| i >= na || arrows[i].source != o || arrows[i].target != o)
        {
            return Err(invalid("every object needs an identity endomorphism"));
        }
        if compose.len() != na || compose.iter().any(|r| r.len() != na) {
            return Err(invalid("composition table must be square over the arrows"));
        }
        for g in 0..na {
            for f in 0..na {
                let composable = arrows[f].target == arrows[g].source;
                match (composable, compose[g][f]) {
                    (true, Some(h))
                        if h < na
                            && arrows[h].source == arrows[f].source
                            && arrows[h].target == arrows[g].target => {}
                    (false, None) => {}
                    _ => {
                        return Err(invalid(format!(
                            "composite {} ∘ {} is mistyped",
                            arrows[g].name, arrows[f].name
                        )))
                    }
                }
            }
        }
        for f in 0..na {
            let (s, t) = (arrows[f].source, arrows[f].target);
            if compose[f][identities[s]] != Some(f) || compose[identities[t]][f] != Some(f) {
                return Err(invalid(format!("unit law fails at {}", arrows[f].name)));
            }
        }
        for f in 0..na {
            for g in 0..na {
                let Some(gf) = compose[g][f] else { continue };
                for h in 0..na {
                    if let Some(hg) = compose[h][g] {
                        if compose[h][gf] != compose[hg][f] {
                            return Err(invalid("composition is not associative"));
                        }
                    }
                }
            }
        }
        Ok(Self {
            objects,
            arrows,
            identities,
            compose,
        })
    }

    /// The one-object category with endomorphisms `M` and composition `+`.
    pub fn one_object(m: &MonoidSpec) -> Result<Self> {
        if m.is_window() {
            return Err(invalid("one-object categories need a finite table"));
        }
        let vals = m.values();
        let arrows = vals
            .iter()
            .map(|&a| Arrow {
                name: m.label(a),
                source: 0,
                target: 0,
            })
            .collect();
        let compose = vals
            .iter()
            .map(|&g| vals.iter().map(|&f| Some(m.add(g, f) as usize)).collect())
            .collect();
        Self::new(vec!["*".into()], arrows, vec![m.unit() as usize], compose)
    }

    /// A finite poset as a category, given `leq[a][b]` for `a ≤ b`.
    pub fn poset(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = names.len();
        let mut arrows = Vec::new();
        let mut at = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] {
                    at.insert((a, b), arrows.len());
                    arrows.push(Arrow {
                        name: format!("{}≤{}", names[a], names[b]),
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let identities = (0..n)
            .map(|a| {
                at.get(&(a, a))
                    .copied()
                    .ok_or_else(|| invalid("order is not reflexive"))
            })
            .collect::<Result<_>>()?;
        let compose = arrows
            .iter()
            .map(|g| {
                arrows
                    .iter()
                    .map(|f| {
                        (f.target == g.source)
                            .then(|| at.get(&(f.source, g.target)).copied())
                            .flatten()
                    })
                    .collect()
            })
            .collect();
        Self::new(names, arrows, identities, compose)
    }

    /// The totally ordered window of an ordered monoid.
    pub fn window_poset(m: &MonoidSpec) -> Result<Self> {
        let vals = m.values();
        let leq = vals
            .iter()
            .map(|&a| {
                vals.iter()
                    .map(|&b| m.leq(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::poset(vals.iter().map(|&v| m.label(v)).collect(), &leq)
    }

    /// `k` objects and only identities.
    pub fn discrete(k: usize) -> Result<Self> {
        let leq: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| a == b).collect()).collect();
        Self::poset((0..k).map(|i| i.to_string()).collect(), &leq)
    }

    pub fn arrow_between(&self, source: usize, target: usize) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.source == source && a.target == target)
    }
}

/// The classical nerve through degree `D`. A `0`-simplex is named by its
/// object, a `p`-simplex (`p ≥ 1`) by its string of `p` composable arrows.
pub fn classical_nerve(c: &FiniteCategorySpec, d: usize) -> SimplicialTruncation {
    let mut names: Vec<Vec<Vec<i64>>> =
        vec![(0..c.objects.len() as i64).map(|o| vec![o]).collect()];
    for p in 1..=d {
        let mut level = Vec::new();
        for prev in &names[p - 1] {
            let end = if p == 1 {
                prev[0] as usize
            } else {
                c.arrows[*prev.last().unwrap() as usize].target
            };
            for (a, arrow) in c.arrows.iter().enumerate() {
                if p == 1 && arrow.source == prev[0] as usize {
                    level.push(vec![a as i64]);
                } else if p > 1 && arrow.source == end {
                    let mut s = prev.clone();
                    s.push(a as i64);
                    level.push(s);
                }
            }
        }
        names.push(level);
    }
    let face = |p: usize, i: usize, s: &[i64]| -> Vec<i64> {
        let arrow = |k: usize| &c.arrows[s[k] as usize];
        if p == 1 {
            return vec![if i == 0 {
                arrow(0).target
            } else {
                arrow(0).source
            } as i64];
        }
        let mut out = s.to_vec();
        if i == 0 {
            out.remove(0);
        } else if i == p {
            out.pop();
        } else {
            let gf = c.compose[s[i] as usize][s[i - 1] as usize].expect("composable string");
            out.splice(i - 1..=i, [gf as i64]);
        }
        out
    };
    let degeneracy = |p: usize, i: usize, s: &[i64]| -> Vec<i64> {
        if p == 0 {
            return vec![c.identities[s[0] as usize] as i64];
        }
        let object = if i == 0 {
            c.arrows[s[0] as usize].source
        } else {
            c.arrows[s[i - 1] as usize].target
        };
        let mut out = s.to_vec();
        out.insert(i, c.identities[object] as i64);
        out
    };
    SimplicialTruncation::from_named(d, names, face, degeneracy)
        .expect("nerves of categories are simplicial")
}

/// The simplicial set `Γ(M[n])` through degree `D`: `p`-simplices are the
/// functions from surjections `[p] ↠ [n]` to `M`, and `θ*` sums over the
/// surjections `σ` with `σθ = τ`.
pub fn dold_kan_em(m: &MonoidSpec, n: usize, d: usize) -> Result<SimplicialTruncation> {
    if !m.is_finite_group() {
        return Err(Error::InvalidMonoid(format!(
            "{} is not a finite abelian group",
            m.name
        )));
    }
    let surj: Vec<Vec<Monotone>> = (0..=d.max(n))
        .map(|p| Monotone::surjections(p, n))
        .collect();
    let index: Vec<HashMap<Monotone, usize>> = surj
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut names: Vec<Vec<Vec<i64>>> = Vec::with_capacity(d + 1);
    for p in 0..=d {
        let mut level: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..surj[p].len() {
            level = level
                .into_iter()
                .flat_map(|v| {
                    m.values()
                        .into_iter()
                        .map(move |a| [v.clone(), vec![a]].concat())
                })
                .collect();
        }
        names.push(level);
    }
    let act = |theta: &Monotone, a: &[i64]| -> Vec<i64> {
        let (q, p) = (theta.source(), theta.target());
        let mut out = vec![m.unit(); surj[q].len()];
        for (s, sigma) in surj[p].iter().enumerate() {
            if let Some(&t) = index[q].get(&sigma.compose(theta)) {
                out[t] = m.add(out[t], a[s]);
            }
        }
        out
    };
    SimplicialTruncation::from_named(
        d,
        names,
        |p, i, a| act(&Monotone::coface(p, i), a),
        |p, i, a| act(&Monotone::codegeneracy(p, i), a),
    )
}

/// The comparison `N(K(M, 1)) → N(BM)`, reading off the spine labels
/// `(g(01), g(12), …)`.
pub fn kmn_to_classical(
    kmn: &LabelingNerve,
    classical: &Arc<SimplicialTruncation>,
) -> Result<SimplicialMap> {
    if kmn.levels[0].level != 1 {
        return Err(Error::ShapeMismatch(
            "the classical comparison needs n = 1".into(),
        ));
    }
    let spine: Vec<Vec<usize>> = kmn
        .levels
        .iter()
        .enumerate()
        .map(|(p, l)| {
            (0..p)
                .map(|i| {
                    l.keys
                        .iter()
                        .position(|k| k.vertices() == [i, i + 1])
                        .expect("spine edge")
                })
                .collect()
        })
        .collect();
    SimplicialMap::from_names(kmn.object.clone(), classical.clone(), |p, x| {
        if p == 0 {
            vec![0]
        } else {
            spine[p].iter().map(|&e| x[e]).collect()
        }
    })
}

/// The comparison from the `n = 1` slice nerve to the nerve of the window
/// poset, reading off consecutive vertex labels.
pub fn slice_to_poset(
    slice: &LabelingNerve,
    poset: &FiniteCategorySpec,
    nerve: &Arc<SimplicialTruncation>,
) -> Result<SimplicialMap> {
    let m = slice.monoid();
    let vals = m.values();
    let object = |v: i64| vals.iter().position(|&w| w == v).expect("window value");
    let order: Vec<Vec<usize>> = slice
        .levels
        .iter()
        .map(|l| {
            (0..l.keys.len())
                .map(|i| {
                    l.keys
                        .iter()
                        .position(|k| k.vertices() == [i])
                        .expect("vertex")
                })
                .collect()
        })
        .collect();
    SimplicialMap::from_names(slice.object.clone(), nerve.clone(), |p, x| {
        let at = |i: usize| object(x[order[p][i]]);
        if p == 0 {
            vec![at(0) as i64]
        } else {
            (0..p)
                .map(|i| {
                    poset
                        .arrow_between(at(i), at(i + 1))
                        .map_or(-1, |a| a as i64)
                })
                .collect()
        }
    })
}
