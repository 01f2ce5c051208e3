//! Truncated simplicial sets and maps between them, products and fiber
//! products, strong deformation retracts, integral homology and the fiber
//! scan.

mod homology;
mod json;
mod retract;
mod scan;
mod sset;

pub use homology::{
    homology, induced_isomorphism, normalized_matrices, ChainMatrices, HomologyGroup,
    HomologyResult, InducedReport,
};
pub use json::{
    smap_from_json, smap_to_json, sset_from_json, sset_to_json, SMAP_SCHEMA, SSET_SCHEMA,
};
pub use retract::{
    check_sdr, cylinder_map, cylinder_object, cylinder_projection, end_inclusion,
    fiber_product_sdr, homotopy_k, homotopy_k_value, random_vertex_instance,
    seeded_vertex_instances, vertex_instance, RandomInstance, SdrTriple, Side,
};
pub use scan::{fiber_scan, FiberRow, ScanReport};
pub use sset::{
    boundary_of_simplex, empty, fiber_product, point, product, product_components, product_index,
    representable, simplex_map, standard_simplex, FiberProduct, SimplicialMap,
    SimplicialTruncation,
};
