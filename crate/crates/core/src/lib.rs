//! Counting homomorphisms and epimorphisms from finitely presented groups to
//! finite solvable groups by lifting through chief series.

pub mod arith;
pub mod error;
pub mod linalg;
pub mod presentations;
pub mod groups;
pub mod cohomology;

pub use error::{Error, Result};
pub mod counting;
pub mod lattice;
pub mod subgrowth;
