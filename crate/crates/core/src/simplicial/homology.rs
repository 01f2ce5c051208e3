use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::sset::{SimplicialMap, SimplicialTruncation};
use crate::snf::{smith_invariants, SmithInvariants, SparseMatrix};

/// One integral homology group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "torsion_json")]
    pub torsion: Vec<BigInt>,
}

fn torsion_json<S: serde::Serializer>(t: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|v| v.to_string()))
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(rank: usize, torsion: &[u64]) -> Self {
        Self {
            rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Homology in degrees `0..=d`. Degrees from `unreliable_from` on are not
/// reported because the truncation does not carry enough chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
    pub unreliable_from: usize,
}

impl HomologyResult {
    pub fn degree(&self, k: usize) -> &HomologyGroup {
        &self.groups[k]
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "H_{k} = {g}")?;
        }
        write!(
            f,
            "(degrees ≥ {} unreliable under truncation)",
            self.unreliable_from
        )
    }
}

/// A finite free chain complex `C_0 ← C_1 ← …` given by ranks and boundary
/// matrices; `boundaries[k]` is `∂_k : C_k → C_{k-1}` (`boundaries[0]` is
/// the zero map to nothing).
#[derive(Clone, Debug)]
pub struct ChainMatrices {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainMatrices {
    /// Homology in degrees `0..=d`; needs `∂_{d+1}`.
    pub fn homology(&self, d: usize) -> Vec<HomologyGroup> {
        assert!(
            d + 1 < self.dims.len(),
            "chains through degree d+1 are required"
        );
        let smith: Vec<SmithInvariants> = (0..=d + 1)
            .into_par_iter()
            .map(|k| smith_invariants(&self.boundaries[k]))
            .collect();
        (0..=d)
            .map(|k| HomologyGroup {
                rank: self.dims[k] - smith[k].rank - smith[k + 1].rank,
                torsion: smith[k + 1].torsion.clone(),
            })
            .collect()
    }
}

fn nondegenerate_index(x: &SimplicialTruncation, p: usize) -> (Vec<usize>, HashMap<usize, usize>) {
    let list: Vec<usize> = x.nondegenerate(p).collect();
    let index = list.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    (list, index)
}

/// Normalized chain complex of `X` through degree `top ≤ D`.
pub fn normalized_matrices(x: &SimplicialTruncation, top: usize) -> ChainMatrices {
    let indexed: Vec<_> = (0..=top).map(|p| nondegenerate_index(x, p)).collect();
    let dims: Vec<usize> = indexed.iter().map(|(l, _)| l.len()).collect();
    let mut boundaries = vec![SparseMatrix::new(0, dims[0])];
    for p in 1..=top {
        let mut m = SparseMatrix::new(dims[p - 1], dims[p]);
        for (col, &s) in indexed[p].0.iter().enumerate() {
            for i in 0..=p {
                if let Some(&row) = indexed[p - 1].1.get(&x.face(p, i, s)) {
                    m.add(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainMatrices { dims, boundaries }
}

/// Integral homology of the normalized chains of `X` in degrees `0..=d`.
pub fn homology(x: &SimplicialTruncation, d: usize) -> Result<HomologyResult> {
    let reliable = x.truncation().checked_sub(1).ok_or(Error::OutOfRange {
        requested: d,
        reliable: 0,
    })?;
    if d > reliable || x.truncation() == 0 {
        return Err(Error::OutOfRange {
            requested: d,
            reliable,
        });
    }
    let groups = normalized_matrices(x, d + 1).homology(d);
    Ok(HomologyResult {
        groups,
        unreliable_from: x.truncation(),
    })
}

/// Comparison of the map induced by `f` on homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedReport {
    pub source: Vec<HomologyGroup>,
    pub target: Vec<HomologyGroup>,
    pub cone: Vec<HomologyGroup>,
    /// Smallest degree in which `f_*` fails to be an isomorphism.
    pub first_failure: Option<usize>,
}

impl InducedReport {
    pub fn is_iso(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Whether `f_* : H_k(X) → H_k(Y)` is an isomorphism for `k ≤ d`.
///
/// Uses the mapping cone `C_k = Y_k ⊕ X_{k-1}`, `∂(y, x) = (∂y + f x, −∂x)`.
/// From the long exact sequence, `f_*` is an isomorphism in degrees `≤ k`
/// iff `H_j(C) = 0` for `j ≤ k` (surjective through `k`, injective below
/// `k`) and `H_k(X) ≅ H_k(Y)` abstractly, since a surjection between
/// isomorphic finitely generated abelian groups is an isomorphism.
pub fn induced_isomorphism(f: &SimplicialMap, d: usize) -> Result<InducedReport> {
    let (x, y) = (f.source(), f.target());
    let reliable = x.truncation().saturating_sub(1);
    if d > reliable || x.truncation() == 0 {
        return Err(Error::OutOfRange {
            requested: d,
            reliable,
        });
    }
    let top = d + 1;
    let cx = normalized_matrices(x, top);
    let cy = normalized_matrices(y, top);
    let xi: Vec<_> = (0..=top).map(|p| nondegenerate_index(x, p)).collect();
    let yi: Vec<_> = (0..=top).map(|p| nondegenerate_index(y, p)).collect();

    let xdim = |k: isize| if k < 0 { 0 } else { cx.dims[k as usize] };
    let dims: Vec<usize> = (0..=top)
        .map(|k| cy.dims[k] + xdim(k as isize - 1))
        .collect();
    let mut boundaries = vec![SparseMatrix::new(0, dims[0])];
    for k in 1..=top {
        let mut m = SparseMatrix::new(dims[k - 1], dims[k]);
        let (ny, ny1) = (cy.dims[k], cy.dims[k - 1]);
        for (row, entries) in cy.boundaries[k].entries.iter().enumerate() {
            for &(col, v) in entries {
                m.add(row, col, v);
            }
        }
        // f on X_{k-1} lands in Y_{k-1}
        for (col, &s) in xi[k - 1].0.iter().enumerate() {
            if let Some(&row) = yi[k - 1].1.get(&f.apply(k - 1, s)) {
                m.add(row, ny + col, 1);
            }
        }
        if k >= 2 {
            for (row, entries) in cx.boundaries[k - 1].entries.iter().enumerate() {
                for &(col, v) in entries {
                    m.add(ny1 + row, ny + col, -v);
                }
            }
        }
        boundaries.push(m);
    }
    let cone = ChainMatrices { dims, boundaries }.homology(d);
    let source = cx.homology(d);
    let target = cy.homology(d);
    let first_failure = (0..=d).find(|&k| !cone[k].is_zero() || source[k] != target[k]);
    Ok(InducedReport {
        source,
        target,
        cone,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_of_simplex, point, product, standard_simplex};
    use std::sync::Arc;

    fn z() -> HomologyGroup {
        HomologyGroup::free(1)
    }

    fn zero() -> HomologyGroup {
        HomologyGroup::free(0)
    }

    #[test]
    fn spheres_and_balls() {
        assert_eq!(
            homology(&boundary_of_simplex(2, 2), 1).unwrap().groups,
            vec![z(), z()]
        );
        assert_eq!(
            homology(&standard_simplex(3, 3), 2).unwrap().groups,
            vec![z(), zero(), zero()]
        );
        assert_eq!(
            homology(&boundary_of_simplex(3, 3), 2).unwrap().groups,
            vec![z(), zero(), z()]
        );
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            homology(&standard_simplex(1, 2), 2),
            Err(Error::OutOfRange { .. })
        ));
        assert!(homology(&point(0), 0).is_err());
    }

    #[test]
    fn product_with_interval_is_invariant() {
        for x in [
            boundary_of_simplex(2, 3),
            boundary_of_simplex(3, 3),
            standard_simplex(1, 3),
        ] {
            let p = product(&x, &standard_simplex(1, 3)).unwrap();
            assert_eq!(
                homology(&p, 2).unwrap().groups,
                homology(&x, 2).unwrap().groups
            );
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            HomologyGroup::with_torsion(2, &[2, 4]).to_string(),
            "Z^2 ⊕ Z/2 ⊕ Z/4"
        );
        assert_eq!(zero().to_string(), "0");
    }

    #[test]
    fn induced_maps() {
        let c = Arc::new(boundary_of_simplex(2, 3));
        let id = SimplicialMap::identity(c.clone());
        assert!(induced_isomorphism(&id, 2).unwrap().is_iso());
        let pt = Arc::new(point(3));
        let collapse = SimplicialMap::from_fn(c.clone(), pt, |_, _| Ok(0)).unwrap();
        let r = induced_isomorphism(&collapse, 2).unwrap();
        assert_eq!(r.first_failure, Some(1));
        // the inclusion of a vertex into an interval is an iso on homology
        let d1 = Arc::new(standard_simplex(1, 2));
        let v = crate::simplicial::representable(d1, 0, 1).unwrap();
        assert!(induced_isomorphism(&v, 1).unwrap().is_iso());
    }

    #[test]
    fn zero_map_on_circle_is_not_injective() {
        // a degree-zero self-map of the circle: H_1 is abstractly iso but f_* = 0
        let c = Arc::new(boundary_of_simplex(2, 3));
        let constant = SimplicialMap::from_fn(c.clone(), c.clone(), |_, _| Ok(0)).unwrap();
        let r = induced_isomorphism(&constant, 1).unwrap();
        assert_eq!(r.source, r.target);
        assert_eq!(r.first_failure, Some(1));
    }
}
