//! Graded dimensions: lattice theta series, Heisenberg series, minimal-model
//! characters, and decomposition of a graded dimension into characters.
//!
//! All characters are unshifted: `sum dim V_d q^d`, no `q^{-c/24}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fusion::{central_charge, kac_table, kac_weight};
use crate::linalg::Matrix;
use crate::scalar::{floor_i64, int, is_integer, rat, Scalar};
use crate::series::FracSeries;
use crate::vertex::{CosetVector, Lattice};

/// Scale fine enough for products of `c = 1/2, 7/10, 4/5` characters.
pub const TRIPLE_SCALE: u64 = 240;

/// Where a character series came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Lattice,
    MinimalModel,
    Product,
}

/// A graded dimension with nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub series: FracSeries,
    pub provenance: Provenance,
}

impl CharacterSeries {
    pub fn new(series: FracSeries, provenance: Provenance) -> Result<Self> {
        if !series.is_nonnegative_integral() {
            return Err(Error::InvalidParameter("character coefficients must be nonnegative integers".into()));
        }
        Ok(CharacterSeries { series, provenance })
    }

    pub fn product(&self, other: &CharacterSeries, cutoff: &Scalar) -> Result<CharacterSeries> {
        CharacterSeries::new(self.series.mul(&other.series, cutoff)?, Provenance::Product)
    }
}

impl fmt::Display for CharacterSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.series.fmt(f)
    }
}

/// `sum q^{<l,l>/2}` over `l` in `rep + L` with `<l,l>/2 <= cutoff`.
pub fn theta_series(lat: &Lattice, rep: &CosetVector, cutoff: &Scalar, scale: u64) -> Result<CharacterSeries> {
    let mut s = FracSeries::zero(scale, cutoff.clone());
    for v in lat.coset_vectors(rep, cutoff) {
        s.add_term(&(lat.norm(&v) / int(2)), int(1))?;
    }
    CharacterSeries::new(s, Provenance::Lattice)
}

/// Integer coefficients of `prod_{n>=1} (1 - q^n)^{-colors}` up to `q^max`.
pub fn colored_partition_counts(colors: usize, max: usize) -> Vec<u64> {
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for _ in 0..colors {
        for n in 1..=max {
            for k in n..=max {
                c[k] += c[k - n];
            }
        }
    }
    c
}

/// `prod_{n>=1} (1 - q^n)^{-rank}` up to `cutoff`.
pub fn heisenberg_series(rank: usize, cutoff: &Scalar, scale: u64) -> Result<CharacterSeries> {
    let mut s = FracSeries::zero(scale, cutoff.clone());
    if cutoff.is_negative() {
        return CharacterSeries::new(s, Provenance::Lattice);
    }
    let max = floor_i64(cutoff).to_usize().expect("cutoff fits in usize");
    for (n, c) in colored_partition_counts(rank, max).into_iter().enumerate() {
        s.add_term(&int(n as i64), int(c as i64))?;
    }
    CharacterSeries::new(s, Provenance::Lattice)
}

/// Graded dimension of `M(1) (x) C[rep + L]`.
pub fn graded_dim_module(lat: &Lattice, rep: &CosetVector, cutoff: &Scalar, scale: u64) -> Result<CharacterSeries> {
    let theta = theta_series(lat, rep, cutoff, scale)?;
    let heis = heisenberg_series(lat.rank(), cutoff, scale)?;
    theta.product(&heis, cutoff)
}

/// Character of `L(c_{p,q}, h_{r,s})` from the alternating sum over the
/// embedding diagram, divided by the partition function.
pub fn minimal_char(p: i64, q: i64, r: i64, s: i64, cutoff: &Scalar, scale: u64) -> Result<CharacterSeries> {
    if p < 2 || q <= p || !(1..p).contains(&r) || !(1..q).contains(&s) {
        return Err(Error::InvalidParameter(format!("no label ({r},{s}) in the ({p},{q}) model")));
    }
    let exponent = |a: i64| rat(a * a - (p - q) * (p - q), 4 * p * q);
    let mut numer = FracSeries::zero(scale, cutoff.clone());
    let h = kac_weight(p, q, r, s);
    // Both exponent families grow quadratically in |n|; stop once both
    // are beyond the cutoff in a given direction.
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { 0 } else { -1 };
        loop {
            let plus = exponent(2 * p * q * n + q * r - p * s);
            let minus = exponent(2 * p * q * n + q * r + p * s);
            if &plus > cutoff && &minus > cutoff && (n * dir) > 0 {
                break;
            }
            numer.add_term(&plus, int(1))?;
            numer.add_term(&minus, int(-1))?;
            n += dir;
        }
    }
    let part = heisenberg_series(1, cutoff, scale)?;
    let series = numer.mul(&part.series, cutoff)?;
    if &h <= cutoff && series.leading() != Some((h, int(1))) {
        return Err(Error::InvalidParameter(format!("character of ({r},{s}) does not start at its weight")));
    }
    CharacterSeries::new(series, Provenance::MinimalModel)
}

/// Characters of one minimal model, keyed by weight, in increasing order.
pub fn model_characters(p: i64, q: i64, cutoff: &Scalar, scale: u64) -> Result<Vec<(Scalar, CharacterSeries)>> {
    let mut out = Vec::new();
    for (r, s) in kac_table(p, q) {
        out.push((kac_weight(p, q, r, s), minimal_char(p, q, r, s, cutoff, scale)?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// A candidate summand with its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    pub weights: Vec<Scalar>,
    pub character: CharacterSeries,
}

/// All products `chi_{h1} chi_{h2} chi_{h3}` for the models `(3,4)`,
/// `(4,5)`, `(5,6)`, sorted by total weight then lexicographically.
pub fn triple_candidates(cutoff: &Scalar) -> Result<Vec<Candidate>> {
    let models = [(3, 4), (4, 5), (5, 6)].map(|(p, q)| model_characters(p, q, cutoff, TRIPLE_SCALE));
    let [a, b, c] = models;
    let (a, b, c) = (a?, b?, c?);
    let mut out = Vec::new();
    for (h1, c1) in &a {
        for (h2, c2) in &b {
            let c12 = c1.product(c2, cutoff)?;
            for (h3, c3) in &c {
                out.push(Candidate {
                    label: format!("({h1},{h2},{h3})"),
                    weights: vec![h1.clone(), h2.clone(), h3.clone()],
                    character: c12.product(c3, cutoff)?,
                });
            }
        }
    }
    out.sort_by(|x, y| {
        let sx: Scalar = x.weights.iter().sum();
        let sy: Scalar = y.weights.iter().sum();
        sx.cmp(&sy).then_with(|| x.weights.cmp(&y.weights))
    });
    Ok(out)
}

/// Total central charge of the three models used by [`triple_candidates`].
pub fn triple_central_charge() -> Scalar {
    central_charge(3, 4) + central_charge(4, 5) + central_charge(5, 6)
}

/// Outcome of [`branch_solver`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchOutcome {
    /// The only nonnegative integer solution.
    Unique(Vec<u64>),
    /// Several nonnegative integer solutions exist.
    Ambiguous(Vec<Vec<u64>>),
    /// No nonnegative integer solution.
    Inconsistent(String),
}

const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Nonnegative integer multiplicities `m` with `sum m_c chi_c = target` on
/// every exponent up to the common cutoff.
///
/// Candidates that would put weight where the target vanishes are fixed to
/// zero first. The rest is an exact linear solve; if it has free directions,
/// the bounded nonnegative integer points are enumerated.
pub fn branch_solver(target: &CharacterSeries, candidates: &[Candidate]) -> Result<BranchOutcome> {
    let mut cutoff = target.series.cutoff().clone();
    for c in candidates {
        if c.character.series.cutoff() < &cutoff {
            cutoff = c.character.series.cutoff().clone();
        }
    }
    let t = target.series.truncate(&cutoff);
    let chars: Vec<FracSeries> = candidates.iter().map(|c| c.character.series.truncate(&cutoff)).collect();
    for (c, s) in candidates.iter().zip(&chars) {
        if s.is_zero() {
            // its multiplicity would be unconstrained
            return Err(Error::truncation(c.weights.iter().sum(), cutoff));
        }
    }
    let mut exps = crate::series::union_of_exponents(chars.iter().chain([&t]));
    exps.retain(|e| e <= &cutoff);
    let tv: Vec<Scalar> = exps.iter().map(|e| t.coeff(e)).collect::<Result<_>>()?;
    let cols: Vec<Vec<Scalar>> =
        chars.iter().map(|s| exps.iter().map(|e| s.coeff(e)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;

    let active: Vec<usize> = (0..candidates.len())
        .filter(|&c| exps.iter().enumerate().all(|(i, _)| !(tv[i].is_zero() && !cols[c][i].is_zero())))
        .collect();
    // m_c <= t(e) / chi_c(e) at every exponent where chi_c is positive
    let bounds: Vec<u64> = active
        .iter()
        .map(|&c| {
            (0..exps.len())
                .filter(|&i| !cols[c][i].is_zero())
                .map(|i| floor_i64(&(&tv[i] / &cols[c][i])).max(0) as u64)
                .min()
                .unwrap_or(0)
        })
        .collect();
    let a = Matrix::from_columns(&active.iter().map(|&c| cols[c].clone()).collect::<Vec<_>>(), exps.len());
    let Some((x0, kernel)) = a.solve(&tv) else {
        return Ok(BranchOutcome::Inconsistent("no rational solution".into()));
    };
    let expand = |x: &[Scalar]| -> Option<Vec<u64>> {
        let mut m = vec![0u64; candidates.len()];
        for (k, &c) in active.iter().enumerate() {
            if !is_integer(&x[k]) || x[k].is_negative() {
                return None;
            }
            m[c] = x[k].to_integer().to_u64()?;
        }
        Some(m)
    };
    if kernel.is_empty() {
        return Ok(match expand(&x0) {
            Some(m) => BranchOutcome::Unique(m),
            None => BranchOutcome::Inconsistent(format!(
                "the unique rational solution is not a nonnegative integer vector: {x0:?}"
            )),
        });
    }
    // Free columns are the non-pivot columns of the echelon form.
    let pivots = a.echelon().pivots;
    let free: Vec<usize> = (0..active.len()).filter(|k| !pivots.contains(k)).collect();
    let total: u64 =
        free.iter().map(|&k| bounds[k] + 1).try_fold(1u64, |acc, b| acc.checked_mul(b)).unwrap_or(u64::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(Error::InvalidParameter(format!("{total} points to enumerate in the branching solve")));
    }
    let mut solutions = Vec::new();
    let mut cur = vec![0u64; free.len()];
    'outer: loop {
        // fix free variables, solve for the pivots
        let mut fixed = a.clone();
        let mut rhs = tv.clone();
        for (f, &k) in free.iter().enumerate() {
            let val = int(cur[f] as i64);
            for i in 0..exps.len() {
                rhs[i] -= &a[(i, k)] * &val;
                fixed[(i, k)] = Scalar::zero();
            }
        }
        if let Some((mut x, _)) = fixed.solve(&rhs) {
            for (f, &k) in free.iter().enumerate() {
                x[k] = int(cur[f] as i64);
            }
            if a.mul_vec(&x) == tv {
                if let Some(m) = expand(&x) {
                    solutions.push(m);
                }
            }
        }
        for f in 0..free.len() {
            if cur[f] < bounds[free[f]] {
                cur[f] += 1;
                continue 'outer;
            }
            cur[f] = 0;
        }
        break;
    }
    Ok(match solutions.len() {
        0 => BranchOutcome::Inconsistent("no nonnegative integer solution".into()),
        1 => BranchOutcome::Unique(solutions.pop().expect("one solution")),
        _ => BranchOutcome::Ambiguous(solutions),
    })
}

/// Recombines multiplicities into a series.
pub fn recombine(candidates: &[Candidate], mult: &[u64], cutoff: &Scalar) -> Result<FracSeries> {
    let mut out = FracSeries::zero(TRIPLE_SCALE, cutoff.clone());
    for (c, &m) in candidates.iter().zip(mult) {
        if m > 0 {
            out = out.add(&c.character.series.scale_by(&int(m as i64)))?;
        }
    }
    Ok(out)
}

/// Nonzero multiplicities by label, in candidate order.
pub fn nonzero_multiplicities<'a>(candidates: &'a [Candidate], mult: &[u64]) -> Vec<(&'a str, u64)> {
    candidates.iter().zip(mult).filter(|(_, m)| **m > 0).map(|(c, m)| (c.label.as_str(), *m)).collect()
}

/// Multiplicity of the candidate with the given weights.
pub fn multiplicity_of(candidates: &[Candidate], mult: &[u64], weights: &[Scalar]) -> Option<u64> {
    candidates.iter().position(|c| c.weights == weights).map(|i| mult[i])
}
