use proptest::prelude::*;
use triality_core::fusion::tables::{a_sub, b_ext, c_full, sigma_fixed_sub};
use triality_core::fusion::{check_grading, enumerate_gradings, verlinde_minimal, FusionRing};
use triality_core::scalar::{int, rat};
use triality_core::{CycScalar, FracSeries};

fn cyc(order: u64, coeffs: &[(i64, i64)]) -> CycScalar {
    let mut out = CycScalar::zero(order);
    for (k, &(n, d)) in coeffs.iter().enumerate() {
        let term = &CycScalar::root_of_unity(order, k as i64) * &CycScalar::from_rational(order, rat(n, d));
        out = &out + &term;
    }
    out
}

fn series(scale: u64, cutoff: i64, terms: &[(i64, i64)]) -> FracSeries {
    let s = scale as i64;
    FracSeries::from_terms(scale, int(cutoff), terms.iter().map(|&(k, c)| (rat(k, s), int(c)))).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-5i64..6, 1i64..4), 0..6)
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((0i64..40, -4i64..5), 0..8)
}

proptest! {
    #[test]
    fn cyclotomic_ring_axioms(
        n1 in prop::sample::select(vec![1u64, 2, 3, 4, 6, 12]),
        n2 in prop::sample::select(vec![1u64, 2, 3, 4, 6, 12]),
        a in coeffs(), b in coeffs(), c in coeffs(),
    ) {
        let (x, y, z) = (cyc(n1, &a), cyc(n2, &b), cyc(12, &c));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, CycScalar::zero(n1));
        prop_assert_eq!(x.lift(12), x);
    }

    #[test]
    fn roots_of_unity_have_their_order(n in 1u64..13, k in -30i64..30) {
        let z = CycScalar::root_of_unity(n, k);
        prop_assert!(z.pow(n).is_one());
        let expected = n / num_integer::gcd(n, k.rem_euclid(n as i64) as u64);
        prop_assert_eq!(z.multiplicative_order(), Some(expected));
    }

    #[test]
    fn series_arithmetic(
        sa in prop::sample::select(vec![1u64, 2, 3, 5, 6, 120]),
        sb in prop::sample::select(vec![1u64, 2, 3, 5, 6, 120]),
        ta in terms(), tb in terms(), tc in terms(),
    ) {
        let (a, b, c) = (series(sa, 4, &ta), series(sb, 4, &tb), series(6, 4, &tc));
        let cut = int(4);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b, &cut).unwrap(), b.mul(&a, &cut).unwrap());
        let left = a.mul(&b, &cut).unwrap().mul(&c, &cut).unwrap();
        let right = a.mul(&b.mul(&c, &cut).unwrap(), &cut).unwrap();
        prop_assert_eq!(left.truncate(right.cutoff()), right.truncate(left.cutoff()));
        let dist = a.mul(&b.add(&c).unwrap(), &cut).unwrap();
        let sum = a.mul(&b, &cut).unwrap().add(&a.mul(&c, &cut).unwrap()).unwrap();
        prop_assert_eq!(dist.truncate(sum.cutoff()), sum.truncate(dist.cutoff()));
    }

    #[test]
    fn coefficients_above_cutoff_are_errors(ta in terms(), k in 121i64..400) {
        let a = series(30, 4, &ta);
        prop_assert!(a.coeff(&rat(k, 30)).is_err());
        prop_assert!(a.coeff(&rat(k % 121, 30)).is_ok());
    }

    #[test]
    fn products_of_gradings_are_gradings(i in 0usize..3, j in 0usize..3) {
        let b = b_ext();
        let all = enumerate_gradings(&b, 6).unwrap().gradings;
        let g = all[i % all.len()].pointwise_mul(&all[j % all.len()]);
        prop_assert!(check_grading(&b, &g).is_ok());
        prop_assert!(all.contains(&g));
    }
}

fn rings() -> Vec<FusionRing> {
    let mut out = vec![c_full(), a_sub(), b_ext(), sigma_fixed_sub()];
    for (p, q) in [(3, 4), (4, 5), (5, 6)] {
        out.push(verlinde_minimal(p, q).unwrap());
    }
    out
}

#[test]
fn every_builtin_ring_satisfies_the_axioms() {
    for r in rings() {
        let report = r.check_axioms();
        assert!(report.passed(), "{}: {report:?}", r.name());
    }
}
