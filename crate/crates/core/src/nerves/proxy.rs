use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::{induced_isomorphism, InducedReport, SimplicialMap};

/// Homology-range stand-in for a Thomason equivalence. A pass says only
/// that `f_*` is an isomorphism on `H_0..H_d` (so on path components too).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProxyReport {
    pub homology_degree: usize,
    pub components: (usize, usize),
    pub induced: InducedReport,
    pub verdict: &'static str,
}

impl ProxyReport {
    pub fn passed(&self) -> bool {
        self.verdict == "proxy-pass"
    }
}

pub fn thomason_proxy(f: &SimplicialMap, d: usize) -> Result<ProxyReport> {
    let reliable = f.source().truncation().saturating_sub(1);
    if f.source().truncation() == 0 || d > reliable {
        return Err(Error::OutOfRange {
            requested: d,
            reliable,
        });
    }
    let induced = induced_isomorphism(f, d)?;
    let components = (induced.source[0].rank, induced.target[0].rank);
    let verdict = if induced.is_iso() {
        "proxy-pass"
    } else {
        "proxy-fail"
    };
    Ok(ProxyReport {
        homology_degree: d,
        components,
        induced,
        verdict,
    })
}
