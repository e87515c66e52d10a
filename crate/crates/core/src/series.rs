//! Truncated formal series with exponents in `(1/N)Z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{floor_i64, is_integer, lcm_u64, Scalar};

/// Default exponent scale: the lcm of the denominators of the Potts weights.
pub const DEFAULT_SCALE: u64 = 120;

/// A series `sum c_k q^(k/scale)` known exactly for every exponent up to
/// `cutoff`. Exponents above the cutoff are unknown, never implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracSeries {
    scale: u64,
    cutoff: Scalar,
    terms: BTreeMap<i64, Scalar>,
}

impl FracSeries {
    pub fn zero(scale: u64, cutoff: Scalar) -> Self {
        assert!(scale > 0, "series scale must be positive");
        FracSeries { scale, cutoff, terms: BTreeMap::new() }
    }

    pub fn one(scale: u64, cutoff: Scalar) -> Self {
        let mut s = Self::zero(scale, cutoff);
        if !s.cutoff.is_negative() {
            s.terms.insert(0, Scalar::one());
        }
        s
    }

    /// `coeff * q^exponent`, or the zero series if the exponent lies above
    /// the cutoff.
    pub fn monomial(scale: u64, cutoff: Scalar, exponent: &Scalar, coeff: Scalar) -> Result<Self> {
        let mut s = Self::zero(scale, cutoff);
        s.add_term(exponent, coeff)?;
        Ok(s)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; terms above the
    /// cutoff are dropped.
    pub fn from_terms<I>(scale: u64, cutoff: Scalar, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        let mut s = Self::zero(scale, cutoff);
        for (e, c) in terms {
            s.add_term(&e, c)?;
        }
        Ok(s)
    }

    /// Adds `coeff * q^exponent`; silently ignores exponents above the cutoff.
    pub fn add_term(&mut self, exponent: &Scalar, coeff: Scalar) -> Result<()> {
        if exponent > &self.cutoff {
            return Ok(());
        }
        let key = self.key_of(exponent)?;
        let entry = self.terms.entry(key).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    fn key_of(&self, exponent: &Scalar) -> Result<i64> {
        let scaled = exponent * BigRational::from_integer(BigInt::from(self.scale));
        if !is_integer(&scaled) {
            return Err(Error::OffScale { exponent: exponent.clone(), scale: self.scale });
        }
        Ok(floor_i64(&scaled))
    }

    fn exponent_of(&self, key: i64) -> Scalar {
        BigRational::new(BigInt::from(key), BigInt::from(self.scale))
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn cutoff(&self) -> &Scalar {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Scalar, &Scalar)> + '_ {
        self.terms.iter().map(move |(k, c)| (self.exponent_of(*k), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Scalar, Scalar)> {
        self.terms.iter().next().map(|(k, c)| (self.exponent_of(*k), c.clone()))
    }

    /// Coefficient of `q^exponent`. Exponents above the cutoff are an error,
    /// exponents off the scale grid have coefficient zero.
    pub fn coeff(&self, exponent: &Scalar) -> Result<Scalar> {
        if exponent > &self.cutoff {
            return Err(Error::out_of_range(exponent.clone(), self.cutoff.clone()));
        }
        match self.key_of(exponent) {
            Ok(k) => Ok(self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)),
            Err(_) => Ok(Scalar::zero()),
        }
    }

    /// Same series on a finer grid; `scale` must be a multiple of the
    /// current scale.
    pub fn rescale(&self, scale: u64) -> Result<Self> {
        if !scale.is_multiple_of(self.scale) {
            return Err(Error::ScaleMismatch { left: self.scale, right: scale });
        }
        let f = (scale / self.scale) as i64;
        let terms = self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect();
        Ok(FracSeries { scale, cutoff: self.cutoff.clone(), terms })
    }

    /// Lowers the cutoff, dropping the terms above it.
    pub fn truncate(&self, cutoff: &Scalar) -> Self {
        let cutoff = if cutoff < &self.cutoff { cutoff.clone() } else { self.cutoff.clone() };
        let mut out = FracSeries { scale: self.scale, cutoff, terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            if self.exponent_of(*k) <= out.cutoff {
                out.terms.insert(*k, c.clone());
            }
        }
        out
    }

    fn common_scale(a: &Self, b: &Self) -> Result<u64> {
        lcm_u64(a.scale, b.scale).ok_or(Error::ScaleMismatch { left: a.scale, right: b.scale })
    }

    /// Coefficient-wise sum at the common scale; the result cutoff is the
    /// smaller of the two.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -Scalar::one())
    }

    fn combine(&self, other: &Self, factor: Scalar) -> Result<Self> {
        let scale = Self::common_scale(self, other)?;
        let cutoff = if self.cutoff < other.cutoff { self.cutoff.clone() } else { other.cutoff.clone() };
        let a = self.rescale(scale)?.truncate(&cutoff);
        let b = other.rescale(scale)?.truncate(&cutoff);
        let mut out = a;
        for (k, c) in b.terms {
            let e = out.terms.entry(k).or_insert_with(Scalar::zero);
            *e += c * &factor;
            if e.is_zero() {
                out.terms.remove(&k);
            }
        }
        Ok(out)
    }

    pub fn scale_by(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.scale, self.cutoff.clone());
        if factor.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, c)| (*k, c * factor)).collect();
        out
    }

    /// Convolution product, keeping exponents up to `cutoff`.
    ///
    /// A product coefficient is only known when both factors are known at
    /// the contributing exponents, so the effective cutoff is also bounded by
    /// `min(cut_a + low_b, cut_b + low_a)`.
    pub fn mul(&self, other: &Self, cutoff: &Scalar) -> Result<Self> {
        let scale = Self::common_scale(self, other)?;
        let a = self.rescale(scale)?;
        let b = other.rescale(scale)?;
        let mut cut = cutoff.clone();
        if let (Some((la, _)), Some((lb, _))) = (a.leading(), b.leading()) {
            let bound_a = &a.cutoff + &lb;
            let bound_b = &b.cutoff + &la;
            if bound_a < cut {
                cut = bound_a;
            }
            if bound_b < cut {
                cut = bound_b;
            }
        }
        let mut out = Self::zero(scale, cut);
        let max_key = floor_i64(&(&out.cutoff * BigRational::from_integer(BigInt::from(scale))));
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if k > max_key {
                    // b is sorted: later keys only grow.
                    break;
                }
                let e = out.terms.entry(k).or_insert_with(Scalar::zero);
                *e += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// True iff every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| is_integer(c) && !c.is_negative())
    }
}

/// Prints one `q^{a/b}: c` line per nonzero term, in increasing exponent
/// order.
impl fmt::Display for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            writeln!(f, "q^{{{e}}}: {c}")?;
        }
        Ok(())
    }
}

/// Collects exponents of several series into one sorted list.
pub fn union_of_exponents<'a, I>(series: I) -> Vec<Scalar>
where
    I: IntoIterator<Item = &'a FracSeries>,
{
    let mut all: Vec<Scalar> = series.into_iter().flat_map(|s| s.terms().map(|(e, _)| e)).collect();
    all.sort();
    all.dedup();
    all
}
