//! Twisted cocycle systems: lifting equations through an elementary layer,
//! their solution counts, solvability and first cohomology.

mod action;
mod finite;
mod system;

pub use action::{evaluate_ring_element, AbelianTarget, EndoMatrix, TwistedAction};
pub use finite::finite_source_z1;
pub use system::{
    build_system, check_homomorphism, cohomology_report, epsilon_and_witness, h1_dim,
    homogeneous_count, solve, twisted_jacobian, CocycleSystem, CohomologyReport, SignConvention,
    SolvedSystem,
};
pub(crate) use system::build_system_unchecked;
