//! Exact scalars: arbitrary-precision rationals and cyclotomic numbers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn rat(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(alloc::format!("not a rational number: `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Returns `floor(x)` as an `i64`.
pub fn floor_i64(x: &Scalar) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Distinct rational roots of `sum_i c_i t^i` (constant term first), in
/// increasing order. `None` if the polynomial is zero or its extreme
/// integer coefficients are too large to factor by trial division.
pub fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let lead = c.iter().position(|x| !x.is_zero()).expect("nonzero polynomial");
    if lead > 0 {
        roots.push(Scalar::zero());
        c.drain(..lead);
    }
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Scalar::from_integer(den.clone())).to_integer()).collect();
    const LIMIT: u64 = 1 << 44;
    let a0 = ints[0].abs().to_u64().filter(|v| *v <= LIMIT)?;
    let an = ints[ints.len() - 1].abs().to_u64().filter(|v| *v <= LIMIT)?;
    let eval = |t: &Scalar| c.iter().rev().fold(Scalar::zero(), |acc, x| acc * t + x);
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let t = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if eval(&t).is_zero() && !roots.contains(&t) {
                    roots.push(t);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> Option<u64> {
    (a / gcd_u64(a, b)).checked_mul(b)
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term
/// first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quot
}

/// Element of the `order`-th cyclotomic field, stored in the power basis
/// `1, z, ..., z^(phi(order)-1)` and reduced modulo the cyclotomic
/// polynomial.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u64,
    coeffs: Vec<Scalar>,
}

impl CycScalar {
    pub fn zero(order: u64) -> Self {
        let deg = cyclotomic_polynomial(order).len() - 1;
        CycScalar { order, coeffs: vec![Scalar::zero(); deg] }
    }

    pub fn from_rational(order: u64, value: Scalar) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Scalar::one())
    }

    /// `z^k` with `z = exp(2 pi i / order)`.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Scalar::zero(); k + 1];
        raw[k] = Scalar::one();
        Self::reduce(order, raw)
    }

    fn reduce(order: u64, mut raw: Vec<Scalar>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        while raw.len() > deg {
            let top = raw.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - deg;
            for (j, c) in phi.iter().take(deg).enumerate() {
                raw[shift + j] -= &top * int(*c);
            }
        }
        raw.resize(deg, Scalar::zero());
        CycScalar { order, coeffs: raw }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.order)
    }

    /// Re-expresses the element in the field of order `target`, which must be
    /// a multiple of the current order.
    pub fn lift(&self, target: u64) -> Self {
        assert!(target.is_multiple_of(self.order), "lift target must be a multiple of the order");
        let step = (target / self.order) as usize;
        let mut raw = vec![Scalar::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::reduce(target, raw)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = lcm_u64(self.order, other.order).expect("cyclotomic order overflow");
        (self.lift(m), other.lift(m))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u64> {
        // Roots of unity in Q(z_n) have order dividing 2n.
        let bound = 2 * self.order;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        let (a, b) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycScalar { order: a.order, coeffs }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        let (a, b) = self.common(rhs);
        let mut raw = vec![Scalar::zero(); (a.coeffs.len() + b.coeffs.len()).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        CycScalar::reduce(a.order, raw)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.order)?,
                _ => write!(f, "({c})z{}^{i}", self.order)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots_of_small_polynomials() {
        // (2t - 1)(t + 3) t = 2t^3 + 5t^2 - 3t
        let p = [int(0), int(-3), int(5), int(2)];
        assert_eq!(rational_roots(&p), Some(vec![int(-3), int(0), rat(1, 2)]));
        assert_eq!(rational_roots(&[int(-2), int(0), int(1)]), Some(vec![]));
        assert_eq!(rational_roots(&[rat(1, 4), int(-1), int(1)]), Some(vec![rat(1, 2)]));
        assert_eq!(rational_roots(&[int(0)]), None);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let w = CycScalar::root_of_unity(3, 1);
        let sum = &(&CycScalar::one(3) + &w) + &w.pow(2);
        assert!(sum.is_zero());
        assert!(w.pow(3).is_one());
        assert_eq!(w.multiplicative_order(), Some(3));
    }

    #[test]
    fn lifting_preserves_values() {
        let w = CycScalar::root_of_unity(3, 1);
        assert_eq!(w, CycScalar::root_of_unity(6, 2));
        assert_eq!(CycScalar::root_of_unity(2, 1), CycScalar::from_rational(7, int(-1)));
        assert_eq!(CycScalar::root_of_unity(6, 1).multiplicative_order(), Some(6));
        assert_eq!(CycScalar::from_rational(5, int(-1)).multiplicative_order(), Some(2));
        assert_eq!(CycScalar::from_rational(3, int(2)).multiplicative_order(), None);
    }

    #[test]
    fn parse_and_sqrt() {
        assert_eq!(parse_scalar("-7/14").unwrap(), rat(-1, 2));
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
