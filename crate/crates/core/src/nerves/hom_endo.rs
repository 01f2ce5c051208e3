//! Explicit globular tables for `K(M, n)`, the endomorphism hom
//! `Hom(∗, ∗)` obtained by shifting degrees down by one, and a search for
//! an isomorphism with `K(M, n-1)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nerves::monoid::MonoidSpec;

/// A finite strict `d`-category given by its cells in each dimension,
/// source/target maps, identities and every composition `∘_j` of
/// `k`-cells along `j`-cells (`j < k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobularCategory {
    pub cells: Vec<Vec<String>>,
    /// `source[k][x]`, `target[k][x]` for `k ≥ 1`, a `(k-1)`-cell.
    pub source: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
    /// `identity[k][x]`: the identity `(k+1)`-cell on the `k`-cell `x`.
    pub identity: Vec<Vec<usize>>,
    /// `compose[k][j][(x, y)]` is `x ∘_j y` for composable `k`-cells.
    pub compose: Vec<Vec<HashMap<(usize, usize), usize>>>,
}

impl GlobularCategory {
    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Iterated source/target down to dimension `j`.
    fn boundary_to(&self, k: usize, x: usize, j: usize, use_target: bool) -> usize {
        (j + 1..=k).rev().fold(x, |c, l| {
            if use_target {
                self.target[l][c]
            } else {
                self.source[l][c]
            }
        })
    }
}

/// `K(M, n)`: one cell below `n`, the elements of `M` in dimension `n`,
/// identities the unit and every composite the sum. `K(M, 0)` is `M` as a set.
pub fn kmn_globular(m: &MonoidSpec, n: usize) -> Result<GlobularCategory> {
    if m.is_window() {
        return Err(Error::InvalidMonoid(
            "globular tables need a finite table".into(),
        ));
    }
    let vals = m.values();
    let mut cells: Vec<Vec<String>> = (0..n).map(|_| vec!["*".to_string()]).collect();
    cells.push(vals.iter().map(|&v| m.label(v)).collect());
    let mut source = vec![Vec::new()];
    let mut target = vec![Vec::new()];
    let mut identity = Vec::new();
    let mut compose = vec![Vec::new()];
    for k in 1..=n {
        source.push(vec![0; cells[k].len()]);
        target.push(vec![0; cells[k].len()]);
    }
    for k in 0..n {
        identity.push(if k + 1 == n {
            vec![m.unit() as usize]
        } else {
            vec![0]
        });
    }
    identity.push(Vec::new());
    for k in 1..=n {
        let table: HashMap<(usize, usize), usize> = if k == n {
            vals.iter()
                .flat_map(|&a| {
                    vals.iter()
                        .map(move |&b| ((a as usize, b as usize), m.add(a, b) as usize))
                })
                .collect()
        } else {
            [((0, 0), 0)].into_iter().collect()
        };
        compose.push(vec![table; k]);
    }
    Ok(GlobularCategory {
        cells,
        source,
        target,
        identity,
        compose,
    })
}

/// `Hom(a, b)` of a globular category with `d ≥ 1`: its `k`-cells are the
/// `(k+1)`-cells from `a` to `b`, and `∘_j` is the ambient `∘_{j+1}`.
pub fn hom_category(c: &GlobularCategory, a: usize, b: usize) -> GlobularCategory {
    let d = c.dimension();
    // reindex the cells of each dimension k+1 that lie over (a, b)
    let mut keep: Vec<Vec<usize>> = Vec::new();
    let mut renumber: Vec<HashMap<usize, usize>> = Vec::new();
    for k in 1..=d {
        let list: Vec<usize> = (0..c.cells[k].len())
            .filter(|&x| c.boundary_to(k, x, 0, false) == a && c.boundary_to(k, x, 0, true) == b)
            .collect();
        renumber.push(list.iter().enumerate().map(|(i, &x)| (x, i)).collect());
        keep.push(list);
    }
    let cells = keep
        .iter()
        .enumerate()
        .map(|(k, l)| l.iter().map(|&x| c.cells[k + 1][x].clone()).collect())
        .collect();
    let mut source = vec![Vec::new()];
    let mut target = vec![Vec::new()];
    for k in 1..d {
        source.push(
            keep[k]
                .iter()
                .map(|&x| renumber[k - 1][&c.source[k + 1][x]])
                .collect(),
        );
        target.push(
            keep[k]
                .iter()
                .map(|&x| renumber[k - 1][&c.target[k + 1][x]])
                .collect(),
        );
    }
    let mut identity: Vec<Vec<usize>> = (0..d - 1)
        .map(|k| {
            keep[k]
                .iter()
                .map(|&x| renumber[k + 1][&c.identity[k + 1][x]])
                .collect()
        })
        .collect();
    identity.push(Vec::new());
    let mut compose = vec![Vec::new()];
    for k in 1..d {
        let tables = (0..k)
            .map(|j| {
                c.compose[k + 1][j + 1]
                    .iter()
                    .filter_map(|(&(x, y), &z)| {
                        Some((
                            (*renumber[k].get(&x)?, *renumber[k].get(&y)?),
                            *renumber[k].get(&z)?,
                        ))
                    })
                    .collect()
            })
            .collect();
        compose.push(tables);
    }
    GlobularCategory {
        cells,
        source,
        target,
        identity,
        compose,
    }
}

/// Checks that the per-dimension maps `f[k]` form an isomorphism.
pub fn is_isomorphism(c: &GlobularCategory, e: &GlobularCategory, f: &[Vec<usize>]) -> bool {
    if c.counts() != e.counts() || f.len() != c.cells.len() {
        return false;
    }
    for (k, fk) in f.iter().enumerate() {
        let mut hit = vec![false; e.cells[k].len()];
        if fk.len() != c.cells[k].len()
            || fk
                .iter()
                .any(|&y| y >= hit.len() || std::mem::replace(&mut hit[y], true))
        {
            return false;
        }
        for x in 0..fk.len() {
            if k >= 1
                && (f[k - 1][c.source[k][x]] != e.source[k][fk[x]]
                    || f[k - 1][c.target[k][x]] != e.target[k][fk[x]])
            {
                return false;
            }
            if k < c.dimension() && f[k + 1][c.identity[k][x]] != e.identity[k][fk[x]] {
                return false;
            }
        }
        for j in 0..k {
            let (ct, et) = (&c.compose[k][j], &e.compose[k][j]);
            if ct.len() != et.len()
                || ct
                    .iter()
                    .any(|(&(x, y), &z)| et.get(&(fk[x], fk[y])) != Some(&fk[z]))
            {
                return false;
            }
        }
    }
    true
}

/// Outcome of the hom-endo comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomEndoReport {
    pub monoid: String,
    pub level: usize,
    /// Cell counts of `Hom_{K(M,n)}(∗, ∗)` per dimension.
    pub hom_counts: Vec<usize>,
    /// What the hom was compared with: `K(M,n-1)`, or `M` as a set.
    pub compared_with: String,
    pub isomorphic: bool,
    pub terminal: bool,
    /// The bijection in each dimension, as `(hom cell, cell)` names.
    pub bijection: Vec<Vec<(String, String)>>,
}

/// Searches dimension by dimension for an isomorphism, trying the degree
/// shift first and then every bijection of the top cells.
pub fn hom_endo(m: &MonoidSpec, n: usize) -> Result<HomEndoReport> {
    if n == 0 {
        return Err(Error::InvalidMonoid("hom_endo needs n ≥ 1".into()));
    }
    let hom = hom_category(&kmn_globular(m, n)?, 0, 0);
    let lower = kmn_globular(m, n - 1)?;
    let mut found = None;
    if hom.counts() == lower.counts() {
        let low: Vec<Vec<usize>> = (0..n - 1).map(|_| vec![0]).collect();
        for top in permutations(lower.cells[n - 1].len()) {
            let mut f = low.clone();
            f.push(top);
            if is_isomorphism(&hom, &lower, &f) {
                found = Some(f);
                break;
            }
        }
    }
    let bijection = found
        .as_ref()
        .map(|f| {
            f.iter()
                .enumerate()
                .map(|(k, fk)| {
                    fk.iter()
                        .enumerate()
                        .map(|(x, &y)| (hom.cells[k][x].clone(), lower.cells[k][y].clone()))
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(HomEndoReport {
        monoid: m.name.clone(),
        level: n,
        hom_counts: hom.counts(),
        compared_with: if n == 1 {
            format!("{} as a set", m.name)
        } else {
            format!("K({},{})", m.name, n - 1)
        },
        isomorphic: found.is_some(),
        terminal: hom.counts().iter().all(|&c| c == 1),
        bijection,
    })
}

/// All permutations of `0..n`, identity first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    let mut i = 0;
    while i < out.len() && out.len() < 40320 {
        let cur = out[i].clone();
        i += 1;
        // next lexicographic permutation
        let mut next = cur.clone();
        let Some(k) = (0..n.saturating_sub(1))
            .rev()
            .find(|&k| next[k] < next[k + 1])
        else {
            break;
        };
        let l = (k + 1..n)
            .rev()
            .find(|&l| next[k] < next[l])
            .expect("pivot");
        next.swap(k, l);
        next[k + 1..].reverse();
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts() {
        for (k, n) in [(2, 2), (3, 2), (2, 3), (3, 1), (4, 3)] {
            let r = hom_endo(&MonoidSpec::cyclic(k).unwrap(), n).unwrap();
            assert!(r.isomorphic, "Z/{k}, n = {n}");
            assert_eq!(r.hom_counts.last(), Some(&k));
            assert!(r.bijection.last().unwrap().iter().all(|(a, b)| a == b));
        }
        let r = hom_endo(&MonoidSpec::cyclic(3).unwrap(), 1).unwrap();
        assert_eq!(r.hom_counts, vec![3]);
        assert_eq!(r.compared_with, "Z/3 as a set");
        let t = hom_endo(&MonoidSpec::trivial(), 3).unwrap();
        assert!(t.isomorphic && t.terminal);
    }

    #[test]
    fn detects_non_isomorphisms() {
        let c = kmn_globular(&MonoidSpec::cyclic(3).unwrap(), 2).unwrap();
        let hom = hom_category(&c, 0, 0);
        let lower = kmn_globular(&MonoidSpec::cyclic(3).unwrap(), 1).unwrap();
        // swapping 0 and 1 does not preserve the unit
        assert!(!is_isomorphism(&hom, &lower, &[vec![0], vec![1, 0, 2]]));
        // negation is an automorphism
        assert!(is_isomorphism(&hom, &lower, &[vec![0], vec![0, 2, 1]]));
        let z4 = kmn_globular(&MonoidSpec::cyclic(4).unwrap(), 1).unwrap();
        assert!(!is_isomorphism(&hom, &z4, &[vec![0], vec![0, 1, 2]]));
    }

    #[test]
    fn permutation_order() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
