//! Chip-firing divisor theory, harmonic indexed morphisms, gonality and
//! hyperelliptic criteria for weighted multigraphs.

pub mod cli;
pub mod corpus;
pub mod divisor;
pub mod fixtures;
pub mod gonality;
pub mod graph;
pub mod hurwitz;
pub mod hyperelliptic;
pub mod morphism;

pub use divisor::{canonical_divisor, Divisor, DivisorError, DivisorTheory, PicardClass};
pub use graph::{are_isomorphic, GraphBuilder, GraphError, WeightedGraph};
pub use hurwitz::{is_hurwitz_type, HurwitzWitness, PartitionSet, RhGenus};
pub use morphism::{EdgeAction, HarmonicCertificate, IndexedMorphism, MorphismError};
pub use gonality::{find_divisorial_refinement, find_harmonic_to_tree, is_geometrically_gonal, GonalityReport};
pub use hyperelliptic::{is_hyperelliptic, stable_curve_hyperelliptic_locus, GraphInvolution};
