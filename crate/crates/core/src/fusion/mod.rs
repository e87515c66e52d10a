//! Fusion rings, built-in tables, and the extension machinery.

pub mod bounds;
pub mod grading;
pub mod ring;
pub mod solver;
pub mod tables;
pub mod verlinde;

pub use bounds::{check_branching_bounds, BoundReport, BoundShape, Branching, Evidence, EvidenceSet};
pub use grading::{
    build_automorphism, check_grading, enumerate_gradings, AutomorphismDescriptor, DecomposedSpace, GradingAssignment,
    GradingEnumeration, GradingGroup, Multiplicity,
};
pub use ring::{AxiomCheck, AxiomReport, Flavor, FusionRing, Label};
pub use solver::{determine_extension_ring, ExtensionOutcome, Propagation, Undetermined};
pub use tables::builtin_table;
pub use verlinde::{central_charge, kac_table, kac_weight, unitary_model_for, verlinde_minimal};
