//! Exact computations with augmented directed complexes, orientals and
//! Street nerves of small strict ω-categories.
//!
//! The crate is organised bottom-up:
//!
//! * [`chain`], [`operator`]: graded chains with big-integer coefficients and
//!   monotone maps of the simplex category.
//! * [`adc`]: augmented directed complexes, their morphisms, homotopies,
//!   tensor products and Steiner atoms.
//! * [`simplicial`]: truncated simplicial sets, fiber products, strong
//!   deformation retracts and integral homology (via [`snf`]).
//! * [`orientals`]: `cn(Δ^n)`, the cylinder `cn(Δ^1) ⊗ cn(Δ^m)` and the
//!   chain-level contraction square.
//! * [`nerves`]: nerves of `K(M,n)`, slices, lax cylinders and commas, plus
//!   the classical and Dold–Kan oracles.

pub mod adc;
pub mod chain;
pub mod error;
pub mod nerves;
pub mod operator;
pub mod orientals;
pub mod simplicial;
pub mod snf;

pub use error::{Error, Result};

/// Library version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
