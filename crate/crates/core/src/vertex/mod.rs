//! Lattice vertex algebra over `sqrt(2) A_2` and its cosets.

pub mod conformal;
pub mod engine;
pub mod evidence;
pub mod fock;
pub mod lattice;

pub use conformal::{
    conformal_check, conformal_triple_search, griess_product, highest_weight_check, ising_seeds, l0_eigentriple,
    pairwise_orthogonal, virasoro_spot_check, virasoro_vector, ConformalVector,
};
pub use engine::{binomial, FockSpace};
pub use evidence::{
    a0_eigenvalues, evidence_set, fusion_evidence, m1_exponents, run_evidence, standard_evidence, standard_vectors,
    EvidenceItem, EvidenceOutcome, GradedPiece, SpectralDecomposition,
};
pub use fock::{colored_partitions, graded_basis, FockState, FockVector, Mode};
pub use lattice::{coset_index, sqrt2_a2_cosets, Coset, CosetVector, Lattice};
