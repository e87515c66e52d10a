//! Root-of-unity gradings compatible with fusion, and the diagonal
//! automorphisms they define on decomposed spaces.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::ring::FusionRing;
use crate::error::{Error, Result};
use crate::scalar::CycScalar;

/// A root of unity per label, in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingAssignment {
    values: Vec<CycScalar>,
}

impl GradingAssignment {
    /// Fails unless every value is a root of unity.
    pub fn new(values: Vec<CycScalar>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.multiplicative_order().is_none()) {
            return Err(Error::InvalidParameter(format!("{v} is not a root of unity")));
        }
        Ok(GradingAssignment { values })
    }

    /// `zeta_modulus^exponents[i]` on label `i`.
    pub fn from_exponents(modulus: u64, exponents: &[u64]) -> Self {
        let values = exponents
            .iter()
            .map(|&e| {
                let g = e.gcd(&modulus);
                CycScalar::root_of_unity(modulus / g, (e / g) as i64)
            })
            .collect();
        GradingAssignment { values }
    }

    pub fn trivial(len: usize) -> Self {
        GradingAssignment { values: vec![CycScalar::one(1); len] }
    }

    pub fn values(&self) -> &[CycScalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &CycScalar {
        &self.values[i]
    }

    /// Smallest `n` with every value an `n`-th root of unity.
    pub fn order(&self) -> u64 {
        self.values.iter().map(|v| v.multiplicative_order().expect("roots of unity")).fold(1, |a, b| a.lcm(&b))
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        GradingAssignment { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }
}

/// Checks `N^k_{ij} != 0 => g(i) g(j) = g(k)`; on failure returns the first
/// violating `(i, j, k)`.
pub fn check_grading(ring: &FusionRing, g: &GradingAssignment) -> core::result::Result<(), (usize, usize, usize)> {
    assert_eq!(g.values.len(), ring.len(), "grading has the wrong number of values");
    let len = ring.len();
    if !g.values[ring.identity()].is_one() {
        let id = ring.identity();
        return Err((id, id, id));
    }
    for i in 0..len {
        for j in 0..len {
            let prod = &g.values[i] * &g.values[j];
            for (k, _) in ring.multiply(i, j) {
                if prod != g.values[k] {
                    return Err((i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Abelian group formed by the compatible gradings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingGroup {
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub invariant_factors: Vec<u64>,
}

impl GradingGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

impl core::fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("trivial");
        }
        for (n, d) in self.invariant_factors.iter().enumerate() {
            if n > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingEnumeration {
    /// Common modulus `M`: every grading is `zeta_M^e` on each label.
    pub modulus: u64,
    pub exponents: Vec<Vec<u64>>,
    pub gradings: Vec<GradingAssignment>,
    pub group: GradingGroup,
}

/// All gradings with values of order dividing `lcm(1..=max_order)`, found by
/// propagating `e_i + e_j = e_k (mod M)` from the identity with
/// backtracking over free labels. The solutions are checked to be closed
/// under pointwise product and inverse.
pub fn enumerate_gradings(ring: &FusionRing, max_order: u64) -> Result<GradingEnumeration> {
    if max_order == 0 {
        return Err(Error::InvalidParameter("max order must be at least 1".into()));
    }
    let modulus = (1..=max_order).fold(1u64, |a, b| a.lcm(&b));
    let len = ring.len();
    let mut triples = Vec::new();
    for i in 0..len {
        for j in i..len {
            for (k, _) in ring.multiply(i, j) {
                triples.push((i, j, k));
            }
        }
    }
    let mut start = vec![None; len];
    start[ring.identity()] = Some(0u64);
    let mut found = Vec::new();
    search(&triples, modulus, start, &mut found);
    found.sort();

    let set: alloc::collections::BTreeSet<Vec<u64>> = found.iter().cloned().collect();
    for a in &found {
        let inv: Vec<u64> = a.iter().map(|&x| (modulus - x) % modulus).collect();
        if !set.contains(&inv) {
            return Err(Error::InvalidTable("gradings are not closed under inverse".into()));
        }
        for b in &found {
            let p: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % modulus).collect();
            if !set.contains(&p) {
                return Err(Error::InvalidTable("gradings are not closed under products".into()));
            }
        }
    }
    let group = group_structure(&found, modulus);
    let gradings = found.iter().map(|e| GradingAssignment::from_exponents(modulus, e)).collect();
    Ok(GradingEnumeration { modulus, exponents: found, gradings, group })
}

fn propagate(triples: &[(usize, usize, usize)], m: u64, e: &mut [Option<u64>]) -> bool {
    loop {
        let mut changed = false;
        for &(i, j, k) in triples {
            match (e[i], e[j], e[k]) {
                (Some(a), Some(b), Some(c)) => {
                    if (a + b) % m != c {
                        return false;
                    }
                }
                (Some(a), Some(b), None) => {
                    e[k] = Some((a + b) % m);
                    changed = true;
                }
                (Some(a), None, Some(c)) => {
                    e[j] = Some((c + m - a) % m);
                    changed = true;
                }
                (None, Some(b), Some(c)) => {
                    e[i] = Some((c + m - b) % m);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(triples: &[(usize, usize, usize)], m: u64, mut e: Vec<Option<u64>>, out: &mut Vec<Vec<u64>>) {
    if !propagate(triples, m, &mut e) {
        return;
    }
    match e.iter().position(Option::is_none) {
        None => out.push(e.into_iter().map(|x| x.expect("assigned")).collect()),
        Some(free) => {
            for v in 0..m {
                let mut next = e.clone();
                next[free] = Some(v);
                search(triples, m, next, out);
            }
        }
    }
}

fn element_order(e: &[u64], m: u64) -> u64 {
    e.iter().map(|&x| m / x.gcd(&m)).fold(1, |a, b| a.lcm(&b))
}

/// Invariant factors from the number of elements of order dividing each
/// prime power.
fn group_structure(elements: &[Vec<u64>], m: u64) -> GradingGroup {
    let mut primes = Vec::new();
    let mut rest = m;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            primes.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    // Per prime, exponents e_1 >= e_2 >= ... of the cyclic p-factors.
    let mut factors: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut ranks = Vec::new();
        let mut pk = 1;
        loop {
            pk *= p;
            // log_p of #{g : g^{p^k} = 1} = sum_i min(k, e_i)
            let count = elements.iter().filter(|g| pk % element_order(g, m) == 0).count() as u64;
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            ranks.push(log);
            let prev = if ranks.len() >= 2 { ranks[ranks.len() - 2] } else { 0 };
            if log == prev || !m.is_multiple_of(pk) {
                break;
            }
        }
        // Number of cyclic factors of exponent >= k is ranks[k-1] - ranks[k-2].
        let mut exps = Vec::new();
        let diffs: Vec<u64> = ranks
            .iter()
            .scan(0, |prev, &r| {
                let d = r - *prev;
                *prev = r;
                Some(d)
            })
            .collect();
        for (k, &d) in diffs.iter().enumerate() {
            let next = diffs.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(d - next) {
                exps.push(k as u64 + 1);
            }
        }
        factors.push(exps.iter().map(|&e| p.pow(e as u32)).collect());
    }
    // Combine prime-power parts into invariant factors.
    let depth = factors.iter().map(Vec::len).max().unwrap_or(0);
    let mut invariant = vec![1u64; depth];
    for f in &factors {
        let mut sorted = f.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        for (n, q) in sorted.iter().enumerate() {
            invariant[n] *= q;
        }
    }
    invariant.sort_unstable();
    invariant.retain(|&d| d > 1);
    GradingGroup { invariant_factors: invariant }
}

/// Multiplicity of a component in a decomposed space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Countable,
}

/// A space written as a direct sum of irreducible modules of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedSpace {
    pub components: Vec<(usize, Multiplicity)>,
}

impl DecomposedSpace {
    pub fn from_keys(ring: &FusionRing, parts: &[(&str, Multiplicity)]) -> Result<Self> {
        let components = parts.iter().map(|(k, m)| Ok((ring.index_of(k)?, *m))).collect::<Result<_>>()?;
        Ok(DecomposedSpace { components })
    }
}

/// The diagonal operator acting by `g(label)` on each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismDescriptor {
    pub components: Vec<(usize, Multiplicity, CycScalar)>,
}

impl AutomorphismDescriptor {
    /// lcm of the orders of the eigenvalues on nonzero components.
    pub fn verify_order(&self) -> u64 {
        self.components
            .iter()
            .filter(|(_, m, _)| *m != Multiplicity::Finite(0))
            .map(|(_, _, v)| v.multiplicative_order().expect("roots of unity"))
            .fold(1, |a, b| a.lcm(&b))
    }
}

pub fn build_automorphism(
    ring: &FusionRing,
    space: &DecomposedSpace,
    g: &GradingAssignment,
) -> Result<AutomorphismDescriptor> {
    if g.values.len() != ring.len() {
        return Err(Error::InvalidParameter("grading does not match the ring".into()));
    }
    if let Err((i, j, k)) = check_grading(ring, g) {
        return Err(Error::InvalidParameter(format!(
            "grading is not compatible with {} x {} -> {}",
            ring.label(i),
            ring.label(j),
            ring.label(k)
        )));
    }
    if let Some((i, _)) = space.components.iter().find(|(i, _)| *i >= ring.len()) {
        return Err(Error::UnknownLabel(format!("component index {i}")));
    }
    let components = space.components.iter().map(|&(i, m)| (i, m, g.values[i].clone())).collect();
    Ok(AutomorphismDescriptor { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::tables::{a_sub, b_ext, c_full, sigma_fixed_sub};

    fn omega(k: i64) -> CycScalar {
        CycScalar::root_of_unity(3, k)
    }

    fn triality() -> GradingAssignment {
        GradingAssignment::new(vec![omega(0), omega(0), omega(1), omega(1), omega(2), omega(2)]).unwrap()
    }

    #[test]
    fn triality_grading_on_table_b() {
        let b = b_ext();
        assert!(check_grading(&b, &triality()).is_ok());
        let swapped = GradingAssignment::new(vec![omega(0), omega(0), omega(1), omega(2), omega(2), omega(1)]).unwrap();
        let (i, j, k) = check_grading(&b, &swapped).unwrap_err();
        assert_eq!(
            (b.label(i).key(), b.label(j).key(), b.label(k).key()),
            ("W(2/5)".into(), "W(2/3)+".into(), "W(1/15)+".into())
        );
    }

    #[test]
    fn enumeration_on_table_b() {
        let e = enumerate_gradings(&b_ext(), 6).unwrap();
        assert_eq!(e.gradings.len(), 3);
        assert_eq!(e.group.invariant_factors, [3]);
        assert!(e.gradings.contains(&triality()));
    }

    #[test]
    fn enumeration_on_subrings() {
        let s = enumerate_gradings(&sigma_fixed_sub(), 6).unwrap();
        assert_eq!(s.gradings.len(), 2);
        assert_eq!(s.group.invariant_factors, [2]);
        let a = enumerate_gradings(&a_sub(), 6).unwrap();
        assert_eq!(a.group.order() as usize, a.gradings.len());
        let c = enumerate_gradings(&c_full(), 6).unwrap();
        for g in &c.gradings {
            assert!(check_grading(&c_full(), g).is_ok());
        }
    }

    #[test]
    fn group_structure_of_products() {
        // Z2 x Z2 inside modulus 2, and Z6 inside modulus 6.
        let klein = [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(group_structure(&klein, 2).invariant_factors, [2, 2]);
        let z6: Vec<Vec<u64>> = (0..6).map(|k| vec![k]).collect();
        assert_eq!(group_structure(&z6, 6).invariant_factors, [6]);
        assert!(group_structure(&[vec![0]], 6).invariant_factors.is_empty());
    }

    #[test]
    fn automorphism_orders() {
        let b = b_ext();
        let g = triality();
        let mixed = DecomposedSpace::from_keys(
            &b,
            &[
                ("W(0)", Multiplicity::Finite(1)),
                ("W(2/3)+", Multiplicity::Finite(2)),
                ("W(2/3)-", Multiplicity::Finite(2)),
            ],
        )
        .unwrap();
        assert_eq!(build_automorphism(&b, &mixed, &g).unwrap().verify_order(), 3);
        let fixed =
            DecomposedSpace::from_keys(&b, &[("W(0)", Multiplicity::Finite(5)), ("W(2/5)", Multiplicity::Countable)])
                .unwrap();
        assert_eq!(build_automorphism(&b, &fixed, &g).unwrap().verify_order(), 1);
        let bad = GradingAssignment::new(vec![omega(0), omega(1), omega(1), omega(1), omega(2), omega(2)]).unwrap();
        assert!(build_automorphism(&b, &fixed, &bad).is_err());
    }
}
