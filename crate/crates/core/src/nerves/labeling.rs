//! Labelings of basis elements by monoid values and the constraint solver
//! that enumerates `ω`-functors `ν(K) → K(M, n)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::adc::{split_boundary, AdcComplex, ChainMorphism};
use crate::chain::{BasisKey, GradedChain};
use crate::error::{Error, Result};
use crate::nerves::monoid::MonoidSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `Σ ∂⁻y = Σ ∂⁺y` at every basis element one degree up.
    Equality,
    /// `Σ ∂⁻y ≤ Σ ∂⁺y`.
    Inequality,
}

/// One labeling: a value for every degree-`level` basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub level: usize,
    pub values: BTreeMap<BasisKey, i64>,
}

/// A positive chain as `(variable, multiplicity)` pairs.
type Weighted = Vec<(usize, u64)>;

#[derive(Clone, Debug)]
struct Constraint {
    minus: Weighted,
    plus: Weighted,
}

fn weighted(chain: &GradedChain, index: &HashMap<BasisKey, usize>) -> Weighted {
    chain
        .terms()
        .map(|(k, c)| {
            (
                index[k],
                c.to_u64()
                    .expect("positive chains have small multiplicities"),
            )
        })
        .collect()
}

fn sum(m: &MonoidSpec, terms: &Weighted, values: &[i64]) -> i64 {
    terms
        .iter()
        .fold(m.unit(), |acc, &(v, c)| m.add(acc, m.times(c, values[v])))
}

/// The full solution set of the labeling constraints on `K`, in
/// lexicographic order of the value vectors (variables in basis order).
#[derive(Clone, Debug)]
pub struct LabelingSet {
    pub complex: Arc<AdcComplex>,
    pub monoid: MonoidSpec,
    pub level: usize,
    pub mode: Mode,
    pub keys: Vec<BasisKey>,
    pub rows: Vec<Vec<i64>>,
}

impl LabelingSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn labeling(&self, i: usize) -> Labeling {
        Labeling {
            level: self.level,
            values: self
                .keys
                .iter()
                .cloned()
                .zip(self.rows[i].iter().copied())
                .collect(),
        }
    }

    pub fn position(&self, key: &BasisKey) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }
}

/// Enumerates labelings of the degree-`level` basis of `K` by values of `M`,
/// subject to one constraint per degree-`(level+1)` basis element `y`
/// comparing the sums over `∂⁻y` and `∂⁺y` with multiplicities.
pub fn functor_labelings(
    k: &Arc<AdcComplex>,
    m: &MonoidSpec,
    level: usize,
    mode: Mode,
) -> Result<LabelingSet> {
    if mode == Mode::Inequality && !m.is_ordered() {
        return Err(Error::Unordered);
    }
    let keys: Vec<BasisKey> = k.basis(level).to_vec();
    let index: HashMap<BasisKey, usize> = keys
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    // constraints grouped by the last variable they mention
    let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); keys.len()];
    let mut constant = Vec::new();
    for y in k.basis(level + 1) {
        let (minus, plus) = split_boundary(&GradedChain::basis(level + 1, y.clone()), k)?;
        let c = Constraint {
            minus: weighted(&minus, &index),
            plus: weighted(&plus, &index),
        };
        match c.minus.iter().chain(&c.plus).map(|&(v, _)| v).max() {
            Some(last) => by_last[last].push(c),
            None => constant.push(c),
        }
    }
    let holds = |c: &Constraint, values: &[i64]| -> bool {
        let (a, b) = (sum(m, &c.minus, values), sum(m, &c.plus, values));
        match mode {
            Mode::Equality => a == b,
            Mode::Inequality => m.leq(a, b).expect("ordered"),
        }
    };
    let rows = if !constant.iter().all(|c| holds(c, &[])) {
        Vec::new()
    } else if keys.is_empty() {
        vec![Vec::new()]
    } else {
        let domain = m.values();
        let search = |first: i64| {
            let mut out = Vec::new();
            let mut cur = vec![first];
            if by_last[0].iter().all(|c| holds(c, &cur)) {
                extend(&mut cur, &domain, &by_last, &holds, &mut out);
            }
            out
        };
        domain
            .par_iter()
            .map(|&v| search(v))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    Ok(LabelingSet {
        complex: k.clone(),
        monoid: m.clone(),
        level,
        mode,
        keys,
        rows,
    })
}

fn extend<F>(
    cur: &mut Vec<i64>,
    domain: &[i64],
    by_last: &[Vec<Constraint>],
    holds: &F,
    out: &mut Vec<Vec<i64>>,
) where
    F: Fn(&Constraint, &[i64]) -> bool,
{
    let k = cur.len();
    if k == by_last.len() {
        out.push(cur.clone());
        return;
    }
    for &v in domain {
        cur.push(v);
        if by_last[k].iter().all(|c| holds(c, cur)) {
            extend(cur, domain, by_last, holds, out);
        }
        cur.pop();
    }
}

/// Precomposition of labelings with a chain map `f : K' → K` at a fixed
/// level: the label of `y` is the weighted sum of labels over `f(y)`; the
/// zero chain gets the unit.
#[derive(Clone, Debug)]
pub struct Pullback {
    rows: Vec<Weighted>,
}

impl Pullback {
    pub fn new(f: &ChainMorphism, level: usize) -> Result<Self> {
        let index: HashMap<&BasisKey, usize> = f
            .target()
            .basis(level)
            .iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let rows = f
            .source()
            .basis(level)
            .iter()
            .map(|y| {
                f.image(y)
                    .terms()
                    .map(|(k, c)| {
                        if c.is_negative() {
                            return Err(Error::Closure(format!("image of {y} is not positive")));
                        }
                        Ok((
                            index[k],
                            c.to_u64()
                                .ok_or_else(|| Error::Closure("multiplicity too large".into()))?,
                        ))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self { rows })
    }

    pub fn apply(&self, m: &MonoidSpec, values: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| sum(m, r, values)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::{chain_map_of_operator, simplex_complex};
    use crate::operator::Monotone;

    fn cn(p: usize) -> Arc<AdcComplex> {
        Arc::new(simplex_complex(p))
    }

    #[test]
    fn triangle_over_z2() {
        let s =
            functor_labelings(&cn(2), &MonoidSpec::cyclic(2).unwrap(), 1, Mode::Equality).unwrap();
        assert_eq!(s.len(), 4);
        let (a, b, c) = (
            s.position(&BasisKey::simplex([0, 1])).unwrap(),
            s.position(&BasisKey::simplex([0, 2])).unwrap(),
            s.position(&BasisKey::simplex([1, 2])).unwrap(),
        );
        for r in &s.rows {
            assert_eq!(r[b], (r[a] + r[c]) % 2);
        }
    }

    #[test]
    fn tetrahedron_level_two_brute_force() {
        let z2 = MonoidSpec::cyclic(2).unwrap();
        let s = functor_labelings(&cn(3), &z2, 2, Mode::Equality).unwrap();
        // one relation g(023)+g(012) = g(123)+g(013) on four unknowns
        let keys = &s.keys;
        let at = |r: &[i64], v: [usize; 3]| {
            r[keys
                .iter()
                .position(|k| *k == BasisKey::simplex(v))
                .unwrap()]
        };
        let brute = (0..16)
            .map(|bits| (0..4).map(|i| (bits >> i) & 1).collect::<Vec<i64>>())
            .filter(|r| {
                (at(r, [0, 2, 3]) + at(r, [0, 1, 2])) % 2
                    == (at(r, [1, 2, 3]) + at(r, [0, 1, 3])) % 2
            })
            .count();
        assert_eq!(brute, 8);
        assert_eq!(s.len(), brute);
    }

    #[test]
    fn monotone_pairs_in_a_window() {
        let w = MonoidSpec::window(0, 2).unwrap();
        assert_eq!(
            functor_labelings(&cn(1), &w, 0, Mode::Inequality)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            functor_labelings(&cn(1), &MonoidSpec::cyclic(2).unwrap(), 0, Mode::Inequality)
                .unwrap_err(),
            Error::Unordered
        );
    }

    #[test]
    fn below_the_level_there_is_one_labeling() {
        let s =
            functor_labelings(&cn(1), &MonoidSpec::cyclic(3).unwrap(), 2, Mode::Equality).unwrap();
        assert_eq!(s.rows, vec![Vec::<i64>::new()]);
    }

    #[test]
    fn pullback_along_a_degeneracy_uses_the_unit() {
        let z3 = MonoidSpec::cyclic(3).unwrap();
        let s = Monotone::codegeneracy(1, 0);
        let pb = Pullback::new(&chain_map_of_operator(&s), 1).unwrap();
        // cn(Δ^2) level 1 in basis order (01), (02), (12); σ = [0,0,1]
        assert_eq!(pb.apply(&z3, &[2]), vec![0, 2, 2]);
    }
}
