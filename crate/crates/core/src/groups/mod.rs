//! Finite solvable groups as extension towers, multiplication tables and the
//! group-spec catalog.

mod aut;
mod catalog;
mod chief;
mod families;
pub mod matrix;
mod table;
mod tower;

pub use aut::{aut_order, count_isomorphisms, is_isomorphic, DEFAULT_AUT_WORK};
pub use catalog::{groups_of_order, NILPOTENT_CATALOG, SOLVABLE_CATALOG};
pub use chief::{chief_series, chief_series_with_map, minimal_normal_subgroup, DEFAULT_ORDER_CAP};
pub use families::{
    binary_dihedral_layers, builtin_group, builtin_group_order, builtin_group_with_cap,
    cyclic_layers, dihedral_layers, direct_product, group_families, GroupFamily,
};
pub use table::FiniteGroupTable;
pub use tower::{ElementaryLayer, ExtensionTower, GroupElement, LayerConstants};
