//! End-to-end runs shared by the command line and the test suites.

use alloc::vec::Vec;

use crate::characters::{branch_solver, graded_dim_module, triple_candidates, BranchOutcome, Candidate, TRIPLE_SCALE};
use crate::error::Result;
use crate::fusion::tables::{b_ext, c_full};
use crate::fusion::{
    determine_extension_ring, Branching, EvidenceSet, ExtensionOutcome, FusionRing, GradingAssignment, Propagation,
};
use crate::scalar::{int, CycScalar, Scalar};
use crate::vertex::{
    conformal_triple_search, evidence_set, run_evidence, standard_evidence, ConformalVector, CosetVector,
    EvidenceOutcome, FockSpace, Lattice,
};

/// Default degree cutoff for the Fock-space computations.
pub fn default_cutoff() -> Scalar {
    int(3)
}

/// Fock space of `sqrt(2) A_2` with the given cutoff.
pub fn lattice_space(cutoff: Scalar) -> FockSpace {
    FockSpace::new(Lattice::sqrt2_a2(), cutoff)
}

/// Everything produced while deriving the extension ring.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub triple: [ConformalVector; 3],
    pub outcomes: Vec<EvidenceOutcome>,
    pub evidence: EvidenceSet,
    pub result: ExtensionOutcome,
}

/// Computes the evidence catalog (minus the `drop`ped ids), feeds it with
/// the branching bounds into the extension solver, and returns the result.
pub fn derive_extension(space: &FockSpace, drop: &[&str], mode: Propagation) -> Result<Derivation> {
    let triple = conformal_triple_search(space)?;
    let outcomes = run_evidence(space, &triple, &standard_evidence(), drop)?;
    let evidence = evidence_set(&outcomes);
    let (b, c) = (b_ext(), c_full());
    let br = Branching::potts_extension(b.labels(), &c)?;
    let result = determine_extension_ring(b.labels(), b.duals(), &br, &c, &evidence, mode)?;
    Ok(Derivation { triple, outcomes, evidence, result })
}

/// Whether a derived ring has exactly the structure constants of `expected`.
pub fn same_table(derived: &FusionRing, expected: &FusionRing) -> bool {
    derived.len() == expected.len() && derived.structure_constants() == expected.structure_constants()
}

/// `(1, 1, w, w, w^2, w^2)` on the extension labels, `w = exp(2 pi i / 3)`.
pub fn triality_grading() -> GradingAssignment {
    let w = |k| CycScalar::root_of_unity(3, k);
    GradingAssignment::new(alloc::vec![w(0), w(0), w(1), w(1), w(2), w(2)]).expect("roots of unity")
}

/// `-1` on the weights `3` and `2/5` of the sigma-fixed subring, `1` on
/// `0` and `7/5`.
pub fn mu_t_grading() -> GradingAssignment {
    let s = |k| CycScalar::root_of_unity(2, k);
    GradingAssignment::new(alloc::vec![s(0), s(1), s(1), s(0)]).expect("roots of unity")
}

/// `-1` on the weights `1/8, 13/8, 1/40, 21/40` of the full table.
pub fn sigma_grading(ring: &FusionRing) -> GradingAssignment {
    let values = ring
        .labels()
        .iter()
        .map(|l| CycScalar::root_of_unity(2, i64::from(["1/8", "13/8", "1/40", "21/40"].contains(&l.name.as_str()))))
        .collect();
    GradingAssignment::new(values).expect("roots of unity")
}

/// Decomposes the graded dimension of `rep + L` into triple products.
pub fn coset_branching(rep: &CosetVector, cutoff: &Scalar) -> Result<(Vec<Candidate>, BranchOutcome)> {
    let candidates = triple_candidates(cutoff)?;
    let target = graded_dim_module(&Lattice::sqrt2_a2(), rep, cutoff, TRIPLE_SCALE)?;
    let out = branch_solver(&target, &candidates)?;
    Ok((candidates, out))
}
