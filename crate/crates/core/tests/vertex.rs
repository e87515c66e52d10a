use num_traits::Zero;
use proptest::prelude::*;
use triality_core::scalar::{int, rat};
use triality_core::vertex::{
    binomial, graded_basis, sqrt2_a2_cosets, virasoro_vector, FockSpace, FockState, FockVector, Lattice,
};
use triality_core::Scalar;

fn space(cutoff: i64) -> FockSpace {
    FockSpace::new(Lattice::sqrt2_a2(), int(cutoff))
}

/// Basis states of one coset up to degree `max_thirds / 3`.
fn states(coset: usize, max_thirds: i64) -> Vec<FockState> {
    let lat = Lattice::sqrt2_a2();
    let rep = sqrt2_a2_cosets()[coset].rep.clone();
    (0..=max_thirds).flat_map(|k| graded_basis(&lat, &rep, &rat(k, 3))).collect()
}

fn vector(pool: &[FockState], picks: &[(usize, i64)]) -> FockVector {
    let mut v = FockVector::zero();
    for &(i, c) in picks {
        v.add_term(pool[i % pool.len()].clone(), int(c));
    }
    v
}

/// Homogeneous pieces of `v`.
fn pieces(lat: &Lattice, v: &FockVector) -> Vec<FockVector> {
    let mut by_degree: Vec<(Scalar, FockVector)> = Vec::new();
    for (s, c) in v.terms() {
        let d = s.degree(lat);
        match by_degree.iter_mut().find(|(e, _)| *e == d) {
            Some((_, w)) => w.add_term(s.clone(), c.clone()),
            None => by_degree.push((d, FockVector::from_term(s.clone(), c.clone()))),
        }
    }
    by_degree.into_iter().map(|(_, w)| w).collect()
}

/// `L(-1)^j v / j!`.
fn translate(s: &FockSpace, omega: &FockVector, v: &FockVector, j: i64) -> FockVector {
    let mut out = v.clone();
    for k in 1..=j {
        out = s.vertex_mode(omega, &int(0), &out).unwrap().scale(&rat(1, k));
    }
    out
}

fn primes_in(x: &Scalar) -> Vec<u64> {
    let mut d: u64 = x.denom().try_into().expect("small denominator");
    let mut out = Vec::new();
    let mut p = 2;
    while d > 1 {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    out
}

#[test]
fn skew_symmetry_on_low_degree_pairs() {
    let s = space(3);
    let omega = virasoro_vector(s.lattice());
    let pool = states(0, 3);
    for a in &pool {
        for b in &pool {
            let u = FockVector::from_state(a.clone());
            let v = FockVector::from_state(b.clone());
            let du = a.degree(s.lattice());
            let dv = b.degree(s.lattice());
            for n in -1..=2i64 {
                if du.clone() + dv.clone() - int(n) - int(1) > int(3) {
                    continue;
                }
                let lhs = s.vertex_mode(&u, &int(n), &v).unwrap();
                let mut rhs = FockVector::zero();
                let mut j = 0;
                while du.clone() + dv.clone() - int(n + j) - int(1) >= Scalar::zero() {
                    let t = translate(&s, &omega, &s.vertex_mode(&v, &int(n + j), &u).unwrap(), j);
                    let sign = if (n + j + 1) % 2 == 0 { int(1) } else { int(-1) };
                    rhs = rhs.add(&t.scale(&sign));
                    j += 1;
                }
                assert_eq!(lhs, rhs, "{a:?} {b:?} n={n}");
            }
        }
    }
}

#[test]
fn commutator_formula_on_every_coset() {
    let s = space(3);
    let gens = states(0, 3);
    for coset in 0..3 {
        let targets = states(coset, 2);
        for a in gens.iter().filter(|st| st.degree(s.lattice()) <= int(1)) {
            for b in gens.iter().filter(|st| st.degree(s.lattice()) <= int(1)) {
                let (u, v) = (FockVector::from_state(a.clone()), FockVector::from_state(b.clone()));
                let (du, dv) = (a.degree(s.lattice()), b.degree(s.lattice()));
                for w in &targets {
                    let w = FockVector::from_state(w.clone());
                    let dw = w.degree(s.lattice()).unwrap();
                    for m in 0..=2i64 {
                        for n in 0..=2i64 {
                            if dw.clone() + dv.clone() + du.clone() > int(3) {
                                continue;
                            }
                            let lhs = s
                                .vertex_mode(&u, &int(m), &s.vertex_mode(&v, &int(n), &w).unwrap())
                                .unwrap()
                                .sub(&s.vertex_mode(&v, &int(n), &s.vertex_mode(&u, &int(m), &w).unwrap()).unwrap());
                            let mut rhs = FockVector::zero();
                            let mut j = 0;
                            while du.clone() + dv.clone() - int(j) - int(1) >= Scalar::zero() {
                                let uv = s.vertex_mode(&u, &int(j), &v).unwrap();
                                let c = binomial(m, j);
                                rhs.add_scaled(&s.vertex_mode(&uv, &int(m + n - j), &w).unwrap(), &c);
                                j += 1;
                            }
                            assert_eq!(lhs, rhs, "{a:?} {b:?} m={m} n={n}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn denominators_stay_in_two_and_three() {
    let s = space(3);
    let pools: Vec<Vec<FockState>> = (0..3).map(|c| states(c, 4)).collect();
    for (cu, pu) in pools.iter().enumerate() {
        for (cv, pv) in pools.iter().enumerate() {
            for a in pu {
                for b in pv {
                    let ip = s.lattice().inner(a.exponent(), b.exponent());
                    let (u, v) = (FockVector::from_state(a.clone()), FockVector::from_state(b.clone()));
                    // modes between these cosets live in -<a,b> + Z
                    for k in -2..=2i64 {
                        let n = int(k) - ip.clone();
                        let Ok(r) = s.vertex_mode(&u, &n, &v) else { continue };
                        for (_, c) in r.terms() {
                            assert!(primes_in(c).iter().all(|p| *p <= 3), "{cu}{cv} {c}");
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modes_respect_degree_and_cosets(
        cu in 0usize..3,
        cv in 0usize..3,
        pu in proptest::collection::vec((0usize..64, -3i64..4), 1..3),
        pv in proptest::collection::vec((0usize..64, -3i64..4), 1..3),
        k in -6i64..4,
    ) {
        let s = space(3);
        let lat = s.lattice().clone();
        let u = vector(&states(cu, 4), &pu);
        let v = vector(&states(cv, 4), &pv);
        let cosets = sqrt2_a2_cosets();
        let sum_rep = cosets[cu].rep.add(&cosets[cv].rep);
        for up in pieces(&lat, &u) {
            for vp in pieces(&lat, &v) {
                let n = rat(k, 3);
                let expected = up.degree(&lat).unwrap() + vp.degree(&lat).unwrap() - &n - int(1);
                let Ok(r) = s.vertex_mode(&up, &n, &vp) else {
                    prop_assert!(expected > int(3));
                    continue;
                };
                if !r.is_zero() {
                    prop_assert_eq!(r.degree(&lat), Some(expected));
                }
                for (st, _) in r.terms() {
                    prop_assert!(st.exponent().sub(&sum_rep).is_integral());
                }
            }
        }
    }

    #[test]
    fn modes_are_bilinear(
        pu in proptest::collection::vec((0usize..64, -3i64..4), 1..4),
        pv in proptest::collection::vec((0usize..64, -3i64..4), 1..4),
        pw in proptest::collection::vec((0usize..64, -3i64..4), 1..4),
        n in -1i64..3,
    ) {
        let s = space(4);
        let pool = states(0, 3);
        let (u, v, w) = (vector(&pool, &pu), vector(&pool, &pv), vector(&pool, &pw));
        let n = int(n);
        let lhs = s.vertex_mode(&u.add(&w), &n, &v).unwrap();
        let rhs = s.vertex_mode(&u, &n, &v).unwrap().add(&s.vertex_mode(&w, &n, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = s.vertex_mode(&u, &n, &v.add(&w)).unwrap();
        let rhs = s.vertex_mode(&u, &n, &v).unwrap().add(&s.vertex_mode(&u, &n, &w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn vacuum_creation_and_translation() {
    let s = space(3);
    let omega = virasoro_vector(s.lattice());
    let vac = FockVector::vacuum(2);
    assert!(s.vertex_mode(&omega, &int(0), &vac).unwrap().is_zero());
    for st in states(1, 3) {
        let v = FockVector::from_state(st);
        assert_eq!(s.vertex_mode(&v, &int(-1), &vac).unwrap(), v);
    }
}
