//! Monotone maps `[q] → [p]` of the simplex category.

use crate::error::{Error, Result};

/// A monotone map `[source] → [target]`, stored as its value sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monotone {
    target: usize,
    values: Vec<usize>,
}

impl Monotone {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > target)
        {
            return Err(Error::NotMonotone(values));
        }
        Ok(Self { target, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn constant(source: usize, value: usize, target: usize) -> Self {
        assert!(value <= target);
        Self {
            target,
            values: vec![value; source + 1],
        }
    }

    /// The coface `δ_i : [n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        Self {
            target: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    /// The codegeneracy `σ_i : [n+1] → [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        Self {
            target: n,
            values: (0..=n + 1)
                .map(|v| if v <= i { v } else { v - 1 })
                .collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Monotone) -> Monotone {
        assert_eq!(inner.target, self.source(), "composable monotone maps");
        Monotone {
            target: self.target,
            values: inner.values.iter().map(|&i| self.values[i]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Indices `k` with `θ(k) = θ(k+1)`, increasing. Applying `s_k` in this
    /// order realises the surjective part of the map.
    pub fn degeneracy_indices(&self) -> Vec<usize> {
        (0..self.source())
            .filter(|&k| self.values[k] == self.values[k + 1])
            .collect()
    }

    /// Target values not hit by the map, increasing. Applying `d_j` in
    /// decreasing order realises the injective part.
    pub fn missed_values(&self) -> Vec<usize> {
        (0..=self.target)
            .filter(|v| !self.values.contains(v))
            .collect()
    }

    /// All monotone maps `[source] → [target]` in lexicographic order.
    pub fn all(source: usize, target: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(source + 1);
        fn rec(
            cur: &mut Vec<usize>,
            len: usize,
            lo: usize,
            target: usize,
            out: &mut Vec<Monotone>,
        ) {
            if cur.len() == len {
                out.push(Monotone {
                    target,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=target {
                cur.push(v);
                rec(cur, len, v, target, out);
                cur.pop();
            }
        }
        rec(&mut cur, source + 1, 0, target, &mut out);
        out
    }

    /// All surjective monotone maps `[source] ↠ [target]`, lexicographic.
    pub fn surjections(source: usize, target: usize) -> Vec<Monotone> {
        Monotone::all(source, target)
            .into_iter()
            .filter(Monotone::is_surjective)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(Monotone::new(vec![1, 0], 1).is_err());
        assert!(Monotone::new(vec![0, 3], 2).is_err());
        assert!(Monotone::new(vec![], 2).is_err());
    }

    #[test]
    fn counts() {
        for p in 0..5 {
            for m in 0..5 {
                assert_eq!(Monotone::all(p, m).len(), binom(p + m + 1, p + 1));
                assert_eq!(Monotone::surjections(p, m).len(), binom(p, m));
            }
        }
    }

    #[test]
    fn cosimplicial_identities() {
        // δ_j δ_i = δ_i δ_{j-1} for i < j
        for n in 2..6 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = Monotone::coface(n, j).compose(&Monotone::coface(n - 1, i));
                    let rhs = Monotone::coface(n, i).compose(&Monotone::coface(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // σ_j σ_i = σ_i σ_{j+1} for i ≤ j
        for n in 1..5 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs =
                        Monotone::codegeneracy(n, j).compose(&Monotone::codegeneracy(n + 1, i));
                    let rhs =
                        Monotone::codegeneracy(n, i).compose(&Monotone::codegeneracy(n + 1, j + 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
