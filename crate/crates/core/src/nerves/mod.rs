//! Street nerves of computable strict ω-categories: `K(M, n)`, its slices,
//! lax cylinders and commas, with the classical-nerve and Dold–Kan oracles
//! and the homology proxy for Thomason equivalences.
//!
//! An ω-functor `ν(K) → K(M, n)` is encoded as a labeling of the
//! degree-`n` basis of `K` by values of `M` such that, at every degree-
//! `(n+1)` basis element, the sums over `∂⁻` and `∂⁺` agree.

mod classical;
mod hom_endo;
mod labeling;
mod monoid;
mod proxy;
mod street;

pub use classical::{
    classical_nerve, dold_kan_em, kmn_to_classical, slice_to_poset, Arrow, FiniteCategorySpec,
};
pub use hom_endo::{
    hom_category, hom_endo, is_isomorphism, kmn_globular, GlobularCategory, HomEndoReport,
};
pub use labeling::{functor_labelings, Labeling, LabelingSet, Mode, Pullback};
pub use monoid::{parse_window, MonoidKind, MonoidSpec, MONOID_SCHEMA};
pub use proxy::{thomason_proxy, ProxyReport};
pub use street::{
    base_point, comma_nerve, cylinder_nerve, homomorphism_map, kmn_nerve, slice_nerve,
    slice_projection, under_slice, under_slice_to_slice, CommaNerve, CylinderNerve, LabelingNerve,
};
