//! Augmented directed complexes with a distinguished basis: chains,
//! morphisms, homotopies, tensor products and Steiner atoms.

mod complex;
mod json;
mod morphism;
mod steiner;

pub use complex::{
    normalized_chains, simplex_complex, split_boundary, tensor, validate_complex, AdcComplex,
    ValidationReport,
};
pub use json::{complex_from_json, complex_to_json};
pub use morphism::{
    chain_map_of_operator, chain_map_of_operator_between, check_homotopy, collapse_to_zero,
    contraction_h, strict_simplex_chain, tensor_morphism, tensor_morphism_between, zero_morphism,
    ChainHomotopy, ChainMorphism, HomotopyFailure,
};
pub use steiner::{atom_table, check_steiner_strong, AtomTable, SteinerReport};
