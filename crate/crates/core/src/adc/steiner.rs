use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::adc::complex::{split_boundary, AdcComplex};
use crate::chain::{BasisElement, BasisKey, GradedChain};
use crate::error::{Error, Result};

/// The atom `⟨x⟩` of a basis element: for every degree `q ≤ p` the pair
/// `(x_q⁻, x_q⁺)` of positive chains obtained by iterating the split
/// boundary from `x_p⁻ = x_p⁺ = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTable {
    top: BasisElement,
    rows: Vec<(GradedChain, GradedChain)>,
}

impl AtomTable {
    pub fn top(&self) -> &BasisElement {
        &self.top
    }

    pub fn top_degree(&self) -> usize {
        self.top.degree
    }

    /// `(x_q⁻, x_q⁺)`.
    pub fn row(&self, q: usize) -> &(GradedChain, GradedChain) {
        &self.rows[q]
    }

    pub fn source(&self, q: usize) -> &GradedChain {
        &self.rows[q].0
    }

    pub fn target(&self, q: usize) -> &GradedChain {
        &self.rows[q].1
    }

    /// Checks the defining recursion: for `1 ≤ q ≤ p` both `x_q⁻` and `x_q⁺`
    /// split to `(x_{q-1}⁻, x_{q-1}⁺)`, and every chain is positive.
    pub fn violation(&self, k: &AdcComplex) -> Option<String> {
        let p = self.top_degree();
        if self.rows[p].0 != self.rows[p].1 {
            return Some("top row is not a single chain".into());
        }
        for (q, (neg, pos)) in self.rows.iter().enumerate() {
            if !neg.is_positive() || !pos.is_positive() {
                return Some(format!("row {q} is not positive"));
            }
            if q == 0 {
                continue;
            }
            let expected = &self.rows[q - 1];
            for (sign, chain) in [("-", neg), ("+", pos)] {
                let split = split_boundary(chain, k).ok()?;
                if &split != expected {
                    return Some(format!(
                        "∂ of x_{q}^{sign} splits as ({}, {}) instead of ({}, {})",
                        split.0, split.1, expected.0, expected.1
                    ));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "key": self.top.key.to_json(),
            "degree": self.top.degree,
            "rows": self.rows.iter().enumerate().map(|(q, (neg, pos))| serde_json::json!({
                "degree": q,
                "source": neg.to_json(),
                "target": pos.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Computes `⟨x⟩` by the descending recursion `x_{q-1}⁻ = ∂⁻(x_q⁻)`,
/// `x_{q-1}⁺ = ∂⁺(x_q⁺)`.
pub fn atom_table(x: &BasisKey, k: &AdcComplex) -> Result<AtomTable> {
    let p = k
        .degree_of(x)
        .ok_or_else(|| Error::NotInBasis(x.to_string()))?;
    let top = GradedChain::basis(p, x.clone());
    let mut rows = vec![(top.clone(), top)];
    for _ in (1..=p).rev() {
        let (neg, pos) = rows.last().unwrap().clone();
        let next_neg = split_boundary(&neg, k)?.0;
        let next_pos = split_boundary(&pos, k)?.1;
        rows.push((next_neg, next_pos));
    }
    rows.reverse();
    Ok(AtomTable {
        top: BasisElement::new(p, x.clone()),
        rows,
    })
}

/// Result of [`check_steiner_strong`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerReport {
    pub unital: bool,
    pub strongly_loop_free: bool,
    /// A cycle of the basis preorder when strong loop-freeness fails.
    pub cycle: Option<Vec<BasisElement>>,
    /// First basis element whose atom has augmentation different from 1.
    pub non_unital_at: Option<BasisElement>,
}

impl SteinerReport {
    pub fn passed(&self) -> bool {
        self.unital && self.strongly_loop_free
    }
}

/// Unitality (`ε(⟨x⟩_0^±) = 1` for every basis element) and strong
/// loop-freeness: the graph with an edge `a → b` whenever `a` is in the
/// support of `∂⁻b` or `b` is in the support of `∂⁺a` must be acyclic.
pub fn check_steiner_strong(k: &AdcComplex) -> SteinerReport {
    let mut non_unital_at = None;
    for e in k.elements() {
        let atom = atom_table(&e.key, k).expect("basis element");
        let (neg, pos) = atom.row(0);
        if k.augment(neg) != BigInt::one() || k.augment(pos) != BigInt::one() {
            non_unital_at = Some(e);
            break;
        }
    }

    let nodes: Vec<BasisElement> = k.elements().collect();
    let index: HashMap<&BasisKey, usize> =
        nodes.iter().enumerate().map(|(i, e)| (&e.key, i)).collect();
    let mut edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in nodes.iter().enumerate() {
        if e.degree == 0 {
            continue;
        }
        let (neg, pos) = k.boundary_of(&e.key).split_signs();
        for a in neg.support() {
            edges.entry(index[a]).or_default().push(i);
        }
        for b in pos.support() {
            edges.entry(i).or_default().push(index[b]);
        }
    }
    let cycle =
        find_cycle(nodes.len(), &edges).map(|c| c.into_iter().map(|i| nodes[i].clone()).collect());
    SteinerReport {
        unital: non_unital_at.is_none(),
        strongly_loop_free: cycle.is_none(),
        cycle,
        non_unital_at,
    }
}

/// Iterative three-colour DFS returning one directed cycle, if any.
fn find_cycle(n: usize, edges: &BTreeMap<usize, Vec<usize>>) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        White,
        Grey,
        Black,
    }
    let empty = Vec::new();
    let mut colour = vec![Colour::White; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if colour[start] != Colour::White {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = Colour::Grey;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let out = edges.get(&v).unwrap_or(&empty);
            if *next < out.len() {
                let w = out[*next];
                *next += 1;
                match colour[w] {
                    Colour::White => {
                        colour[w] = Colour::Grey;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    Colour::Grey => {
                        let mut cycle = vec![w];
                        let mut cur = v;
                        while cur != w {
                            cycle.push(cur);
                            cur = parent[cur];
                        }
                        cycle.reverse();
                        cycle.rotate_right(1);
                        return Some(cycle);
                    }
                    Colour::Black => {}
                }
            } else {
                colour[v] = Colour::Black;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::complex::{simplex_complex, tensor};

    fn k(v: &[usize]) -> BasisKey {
        BasisKey::simplex(v.iter().copied())
    }

    fn ch(p: usize, keys: &[&[usize]]) -> GradedChain {
        GradedChain::from_small(p, keys.iter().map(|v| (k(v), 1)))
    }

    #[test]
    fn atom_of_triangle() {
        let c = simplex_complex(2);
        let a = atom_table(&k(&[0, 1, 2]), &c).unwrap();
        assert_eq!(a.row(2), &(ch(2, &[&[0, 1, 2]]), ch(2, &[&[0, 1, 2]])));
        assert_eq!(a.row(1), &(ch(1, &[&[0, 2]]), ch(1, &[&[0, 1], &[1, 2]])));
        assert_eq!(a.row(0), &(ch(0, &[&[0]]), ch(0, &[&[2]])));
        assert_eq!(a.violation(&c), None);
    }

    #[test]
    fn atom_of_tetrahedron() {
        let c = simplex_complex(3);
        let a = atom_table(&k(&[0, 1, 2, 3]), &c).unwrap();
        assert_eq!(
            a.row(2),
            &(
                ch(2, &[&[0, 2, 3], &[0, 1, 2]]),
                ch(2, &[&[1, 2, 3], &[0, 1, 3]])
            )
        );
        assert_eq!(
            a.row(1),
            &(ch(1, &[&[0, 3]]), ch(1, &[&[0, 1], &[1, 2], &[2, 3]]))
        );
        assert_eq!(a.row(0), &(ch(0, &[&[0]]), ch(0, &[&[3]])));
        assert_eq!(a.violation(&c), None);
    }

    #[test]
    fn atom_of_vertex_and_missing_key() {
        let c = simplex_complex(4);
        let a = atom_table(&k(&[0]), &c).unwrap();
        assert_eq!(a.top_degree(), 0);
        assert_eq!(a.row(0), &(ch(0, &[&[0]]), ch(0, &[&[0]])));
        assert!(matches!(
            atom_table(&k(&[7]), &c),
            Err(Error::NotInBasis(_))
        ));
    }

    #[test]
    fn orientals_and_cylinders_are_strong_steiner() {
        for m in 0..=5 {
            let r = check_steiner_strong(&simplex_complex(m));
            assert!(r.passed(), "cn(Δ^{m}): {r:?}");
        }
        for m in 0..=4 {
            let r = check_steiner_strong(&tensor(&simplex_complex(1), &simplex_complex(m)));
            assert!(r.passed(), "cylinder {m}: {r:?}");
        }
    }

    #[test]
    fn atoms_satisfy_recursion_on_cylinders() {
        for m in 0..=3 {
            let c = tensor(&simplex_complex(1), &simplex_complex(m));
            for e in c.elements() {
                let a = atom_table(&e.key, &c).unwrap();
                assert_eq!(a.violation(&c), None, "{}", e.key);
            }
        }
    }

    #[test]
    fn cancelling_boundary_is_not_unital() {
        // ∂a = b − b = 0 with ε(b) = 1
        let a = k(&[1, 1]);
        let b = k(&[1]);
        let mut d = GradedChain::basis(0, b.clone());
        d.add_term(b.clone(), BigInt::from(-1));
        let cx = AdcComplex::new(
            vec![vec![b.clone()], vec![a.clone()]],
            HashMap::from([(a.clone(), d)]),
            HashMap::from([(b, BigInt::one())]),
        )
        .unwrap();
        let r = check_steiner_strong(&cx);
        assert!(!r.unital);
        assert_eq!(r.non_unital_at, Some(BasisElement::new(1, a)));
    }

    #[test]
    fn loop_is_witnessed() {
        // two edges a: u → v and b: v → u form a 2-cycle u → a → v → b → u
        let u = k(&[100]);
        let v = k(&[101]);
        let a = k(&[200]);
        let b = k(&[201]);
        let edge = |s: &BasisKey, t: &BasisKey| {
            GradedChain::from_small(0, [(t.clone(), 1), (s.clone(), -1)])
        };
        let cx = AdcComplex::new(
            vec![vec![u.clone(), v.clone()], vec![a.clone(), b.clone()]],
            HashMap::from([(a.clone(), edge(&u, &v)), (b.clone(), edge(&v, &u))]),
            HashMap::from([(u, BigInt::one()), (v, BigInt::one())]),
        )
        .unwrap();
        let r = check_steiner_strong(&cx);
        assert!(r.unital);
        assert!(!r.strongly_loop_free);
        assert_eq!(r.cycle.as_ref().unwrap().len(), 4);
    }
}
