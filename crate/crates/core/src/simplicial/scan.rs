use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::simplicial::homology::{induced_isomorphism, HomologyGroup};
use crate::simplicial::sset::{fiber_product, representable, SimplicialMap};

/// One `(simplex, vertex)` comparison of a fiber scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    pub degree: usize,
    pub simplex: Vec<i64>,
    pub vertex: usize,
    pub vertex_fiber: Vec<HomologyGroup>,
    pub simplex_fiber: Vec<HomologyGroup>,
    pub iso: bool,
}

/// Result of [`fiber_scan`]. A pass is a necessary-condition proxy only; it
/// never decides that a map is a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub homology_degree: usize,
    pub rows: Vec<FiberRow>,
    pub verdict: &'static str,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.iso)
    }

    pub fn first_failure(&self) -> Option<&FiberRow> {
        self.rows.iter().find(|r| !r.iso)
    }
}

/// For every nondegenerate `m`-simplex `y : Δ^m → Y` (`m ≥ 1`) and every
/// vertex `i` of it, compares the fiber of `p : X → Y` over the vertex with
/// the fiber over the whole simplex, through the inclusion between them, in
/// homology degrees `≤ d`.
pub fn fiber_scan(p: &SimplicialMap, d: usize) -> Result<ScanReport> {
    let y = p.target().clone();
    let mut rows = Vec::new();
    for m in 1..=y.truncation() {
        for s in y.nondegenerate(m) {
            let over = fiber_product(p, &representable(y.clone(), m, s)?)?;
            let simplex = Arc::new(crate::simplicial::standard_simplex(m, y.truncation()));
            for i in 0..=m {
                let vertex = representable(simplex.clone(), 0, i)?;
                let inner = fiber_product(&over.right, &vertex)?;
                let report = induced_isomorphism(&inner.left, d)?;
                rows.push(FiberRow {
                    degree: m,
                    simplex: y.name(m, s).to_vec(),
                    vertex: i,
                    vertex_fiber: report.source.clone(),
                    simplex_fiber: report.target.clone(),
                    iso: report.is_iso(),
                });
            }
        }
    }
    let verdict = if rows.iter().all(|r| r.iso) {
        "proxy-pass"
    } else {
        "proxy-fail"
    };
    Ok(ScanReport {
        homology_degree: d,
        rows,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_of_simplex, product, standard_simplex, SimplicialMap as Map};

    #[test]
    fn product_projection_passes() {
        let x = Arc::new(boundary_of_simplex(2, 2));
        let dm = Arc::new(standard_simplex(1, 2));
        let xy = Arc::new(product(&x, &dm).unwrap());
        let (_, p2) = Map::projections(xy, x, dm).unwrap();
        let r = fiber_scan(&p2, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.verdict, "proxy-pass");
        assert_eq!(r.rows.len(), 2);
    }

    #[test]
    fn vertex_inclusion_fails_at_the_far_end() {
        let d1 = Arc::new(standard_simplex(1, 2));
        let v0 = representable(d1, 0, 0).unwrap();
        let r = fiber_scan(&v0, 1).unwrap();
        assert_eq!(r.verdict, "proxy-fail");
        let bad = r.first_failure().unwrap();
        assert_eq!((bad.simplex.as_slice(), bad.vertex), (&[0i64, 1][..], 1));
        assert!(bad.vertex_fiber[0].is_zero());
        assert_eq!(bad.simplex_fiber[0], HomologyGroup::free(1));
        // the other vertex is fine
        assert!(r.rows.iter().find(|row| row.vertex == 0).unwrap().iso);
    }
}
