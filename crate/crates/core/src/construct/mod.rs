//! Radical generator constructions and the arithmetical-rank decision tree.

pub mod ara;
pub mod combine;
pub mod frame;
pub mod sv;
pub mod triples;

pub use combine::{combine_intersection, combine_sum, cone_reduce, strip_indeg_one, ConeStep, Stripped};
pub use frame::{h14_system, h17_system, h1_systems, FrameVars};
pub use sv::{diagonal_system, sv_check, sv_generators, SvReport, SvSystem};
pub use triples::{case1_triple, case2_triple, generic_triple, specialize_generators, Specialization};
pub use ara::{ara, pd_value, AraResult, Justification};
