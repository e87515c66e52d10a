use triality_core::fusion::tables::{a_sub, b_ext, c_full, sigma_fixed_sub};
use triality_core::fusion::{
    check_branching_bounds, check_grading, determine_extension_ring, enumerate_gradings, verlinde_minimal, AxiomCheck,
    Branching, EvidenceSet, ExtensionOutcome, GradingAssignment, Propagation,
};
use triality_core::CycScalar;

/// Nonvanishing statements as produced by the lattice computations.
fn lattice_evidence() -> EvidenceSet {
    let mut ev = EvidenceSet::new();
    for (id, i, j, k) in [
        ("E1", "W(2/5)", "W(2/5)", "W(0)"),
        ("E1", "W(2/3)+", "W(2/3)-", "W(0)"),
        ("E1", "W(1/15)+", "W(1/15)-", "W(0)"),
        ("E2", "W(2/5)", "W(2/5)", "W(2/5)"),
        ("E3", "W(2/5)", "W(2/3)+", "W(1/15)+"),
        ("E4", "W(2/5)", "W(1/15)+", "W(1/15)+"),
        ("E5", "W(2/5)", "W(1/15)+", "W(2/3)+"),
        ("E5", "W(2/5)", "W(2/3)-", "W(1/15)-"),
        ("E6", "W(2/5)", "W(1/15)-", "W(1/15)-"),
        ("E7", "W(2/3)+", "W(2/3)+", "W(2/3)-"),
        ("E7", "W(2/3)-", "W(2/3)-", "W(2/3)+"),
        ("E8", "W(1/15)+", "W(1/15)+", "W(2/3)-"),
        ("E8", "W(2/3)+", "W(1/15)+", "W(1/15)-"),
        ("E8", "W(2/3)-", "W(1/15)-", "W(1/15)+"),
        ("E9", "W(1/15)+", "W(1/15)+", "W(1/15)-"),
        ("E9", "W(1/15)-", "W(1/15)-", "W(1/15)+"),
    ] {
        ev.push(id, i, j, k, "");
    }
    ev
}

#[test]
fn verlinde_reproduces_table_c() {
    let v = verlinde_minimal(5, 6).unwrap();
    let c = c_full();
    let map = c.match_by_weight(&v).unwrap();
    assert!(c.differences(&v, &map).is_empty());
}

#[test]
fn verlinde_rings_pass_axioms() {
    for (p, q) in [(2, 3), (3, 4), (4, 5), (5, 6), (6, 7)] {
        assert!(verlinde_minimal(p, q).unwrap().check_axioms().passed(), "({p},{q})");
    }
}

#[test]
fn mutated_table_c_fails_associativity() {
    let c = c_full();
    let i = c.index_of("2/5").unwrap();
    let bad = c.with_coefficient(i, i, c.identity(), 0);
    assert!(matches!(bad.check_axioms().associativity, AxiomCheck::Fail(_)));
}

#[test]
fn evidence_pins_table_b() {
    let (b, c) = (b_ext(), c_full());
    let br = Branching::potts_extension(b.labels(), &c).unwrap();
    let out =
        determine_extension_ring(b.labels(), b.duals(), &br, &c, &lattice_evidence(), Propagation::Sandwich).unwrap();
    let ExtensionOutcome::Unique(ring) = out else { panic!("expected a unique ring, got {out:?}") };
    assert_eq!(ring.structure_constants(), b.structure_constants());
    assert!(check_branching_bounds(&ring, &c, &br).unwrap().passed());
}

#[test]
fn reduced_evidence_is_ambiguous_until_associativity() {
    let (b, c) = (b_ext(), c_full());
    let br = Branching::potts_extension(b.labels(), &c).unwrap();
    let ev = lattice_evidence().without("E7");
    let out = determine_extension_ring(b.labels(), b.duals(), &br, &c, &ev, Propagation::Sandwich).unwrap();
    let ExtensionOutcome::Ambiguous(open) = out else { panic!("expected ambiguity") };
    let plus = b.index_of("W(2/3)+").unwrap();
    let minus = b.index_of("W(2/3)-").unwrap();
    assert!(!open.is_empty());
    for u in &open {
        assert!([plus, minus].contains(&u.left) && [plus, minus].contains(&u.right), "{u:?}");
    }
    let out = determine_extension_ring(b.labels(), b.duals(), &br, &c, &ev, Propagation::WithAssociativity).unwrap();
    let ExtensionOutcome::Unique(ring) = out else { panic!("associativity should resolve the rest") };
    assert_eq!(ring.structure_constants(), b.structure_constants());
}

#[test]
fn grading_groups() {
    let c = c_full();
    let sigma: Vec<CycScalar> = c
        .labels()
        .iter()
        .map(|l| {
            let twisted = ["1/8", "13/8", "1/40", "21/40"].contains(&l.name.as_str());
            CycScalar::root_of_unity(2, i64::from(twisted))
        })
        .collect();
    let sigma = GradingAssignment::new(sigma).unwrap();
    assert!(check_grading(&c, &sigma).is_ok());
    let all = enumerate_gradings(&c, 6).unwrap();
    assert!(all.gradings.contains(&sigma));
    assert_eq!(all.gradings.len(), 2);

    let s = enumerate_gradings(&sigma_fixed_sub(), 6).unwrap();
    assert_eq!(s.gradings.len(), 2);
    let a = enumerate_gradings(&a_sub(), 6).unwrap();
    assert_eq!(a.gradings.len(), 1);
}
