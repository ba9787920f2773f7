//! The lifting engine: Hom and Epi counts through extension towers, Hall
//! invariants, automorphism counts and closed-form cross-checks.

mod closed;
mod engine;
mod eulerian;
mod recursion;
mod strategy;

pub use closed::{closed_form_delta, closed_form_eulerian, DeltaFamily, EulerianFamily};
pub(crate) use closed::exact_div;
pub use engine::{
    aut_count, aut_via_lifting, delta, epi_count, epi_lift, epi_maps, epi_total, hom_count,
    table_presentation, CountConfig, CountReport, GeneratorImageMap, LevelReport,
    DEFAULT_FRONTIER_CAP, DEFAULT_HOM_CAP,
};
pub use eulerian::{gaschutz_eulerian, module_types, ModuleType};
pub use recursion::{
    delta_s4, epi_binary_dihedral_recursion, epi_count_q2p, epi_dihedral_recursion,
};
pub use strategy::{epi_strategies, epi_strategy, EpiStrategy};
