//! Derivation of an extension fusion ring from branching upper bounds and
//! nonvanishing evidence.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bounds::{group_representatives, upper_bound, Branching, EvidenceSet};
use super::ring::{FusionRing, Label};
use crate::error::{Error, Result};

/// How far the solver propagates before giving up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Propagation {
    /// Identity row, symmetries, evidence lower bounds and branching upper
    /// bounds only.
    #[default]
    Sandwich,
    /// Additionally solves associativity equations with a single unknown
    /// entry, to a fixed point.
    WithAssociativity,
}

/// An entry `N^k_{ij}` left open, with its final bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undetermined {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub lower: u32,
    pub upper: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Unique(FusionRing),
    /// Open entries up to commutativity and Frobenius symmetry, one
    /// representative per orbit.
    Ambiguous(Vec<Undetermined>),
}

struct Orbits {
    len: usize,
    var_of: Vec<usize>,
    reps: Vec<(usize, usize, usize)>,
}

impl Orbits {
    fn new(len: usize, dual: &[usize]) -> Self {
        let total = len * len * len;
        let idx = |i: usize, j: usize, k: usize| (i * len + j) * len + k;
        let mut var_of = vec![usize::MAX; total];
        let mut reps = Vec::new();
        for i in 0..len {
            for j in 0..len {
                for k in 0..len {
                    if var_of[idx(i, j, k)] != usize::MAX {
                        continue;
                    }
                    let v = reps.len();
                    reps.push((i, j, k));
                    let mut stack = vec![(i, j, k)];
                    while let Some((a, b, c)) = stack.pop() {
                        if var_of[idx(a, b, c)] != usize::MAX {
                            continue;
                        }
                        var_of[idx(a, b, c)] = v;
                        stack.push((b, a, c));
                        stack.push((b, dual[c], dual[a]));
                    }
                }
            }
        }
        Orbits { len, var_of, reps }
    }

    fn var(&self, i: usize, j: usize, k: usize) -> usize {
        self.var_of[(i * self.len + j) * self.len + k]
    }
}

struct Bounds {
    lo: Vec<u32>,
    hi: Vec<u32>,
}

impl Bounds {
    fn fixed(&self, v: usize) -> Option<u32> {
        (self.lo[v] == self.hi[v]).then_some(self.lo[v])
    }

    fn raise(&mut self, v: usize, lo: u32) -> bool {
        if lo > self.lo[v] {
            self.lo[v] = lo;
            true
        } else {
            false
        }
    }

    fn lower(&mut self, v: usize, hi: u32) -> bool {
        if hi < self.hi[v] {
            self.hi[v] = hi;
            true
        } else {
            false
        }
    }
}

/// A group-sum constraint `sum_v count_v * N_v <= bound`.
struct SumConstraint {
    terms: Vec<(usize, u32)>,
    bound: u32,
    what: String,
}

/// Determines the structure constants of the extension with the given
/// labels and duality. Returns the unique ring when every entry is pinned,
/// otherwise the open entries.
pub fn determine_extension_ring(
    labels: &[Label],
    dual: &[usize],
    br: &Branching,
    base: &FusionRing,
    evidence: &EvidenceSet,
    mode: Propagation,
) -> Result<ExtensionOutcome> {
    let len = labels.len();
    if dual.len() != len || br.labels() != labels {
        return Err(Error::InvalidParameter("labels, duality and branching disagree".into()));
    }
    let identity = (0..len)
        .find(|&i| br.image(i).contains(&base.identity()))
        .ok_or_else(|| Error::InvalidParameter("no label restricts to the base identity".into()))?;
    let orbits = Orbits::new(len, dual);
    let nvars = orbits.reps.len();
    let mut b = Bounds { lo: vec![0; nvars], hi: vec![u32::MAX; nvars] };
    let key = |i: usize| labels[i].key();

    for j in 0..len {
        for k in 0..len {
            let v = orbits.var(identity, j, k);
            let want = u32::from(j == k);
            b.raise(v, want);
            b.lower(v, want);
        }
    }
    for e in evidence.items() {
        let (i, j, k) = (br.index_of(&e.left)?, br.index_of(&e.right)?, br.index_of(&e.target)?);
        b.raise(orbits.var(i, j, k), 1);
    }

    let reps = group_representatives(br);
    let mut constraints = Vec::new();
    for &i in &reps {
        for &j in &reps {
            for k in 0..len {
                let (_, bound) = upper_bound(br, base, i, j, k);
                let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
                for &a in &br.group(i) {
                    for &c in &br.group(j) {
                        *counts.entry(orbits.var(a, c, k)).or_insert(0) += 1;
                    }
                }
                constraints.push(SumConstraint {
                    terms: counts.into_iter().collect(),
                    bound,
                    what: format!("{} x {} -> {}", key(i), key(j), key(k)),
                });
            }
        }
    }

    loop {
        let mut changed = false;
        for c in &constraints {
            let sum_lo: u64 = c.terms.iter().map(|&(v, m)| u64::from(b.lo[v]) * u64::from(m)).sum();
            if sum_lo > u64::from(c.bound) {
                return Err(Error::Contradiction(format!(
                    "evidence forces {sum_lo} but the bound for {} is {}",
                    c.what, c.bound
                )));
            }
            for &(v, m) in &c.terms {
                let others = sum_lo - u64::from(b.lo[v]) * u64::from(m);
                let slack = (u64::from(c.bound) - others) / u64::from(m);
                changed |= b.lower(v, slack as u32);
            }
        }
        if let Some(v) = (0..nvars).find(|&v| b.lo[v] > b.hi[v]) {
            let (i, j, k) = orbits.reps[v];
            return Err(Error::Contradiction(format!(
                "N^{}_{{{},{}}} has lower bound {} above upper bound {}",
                key(k),
                key(i),
                key(j),
                b.lo[v],
                b.hi[v]
            )));
        }
        if mode == Propagation::WithAssociativity {
            changed |= associativity_step(&orbits, &mut b, labels)?;
        }
        if !changed {
            break;
        }
    }

    let open: Vec<Undetermined> = (0..nvars)
        .filter(|&v| b.fixed(v).is_none())
        .map(|v| {
            let (i, j, k) = orbits.reps[v];
            Undetermined { left: i, right: j, target: k, lower: b.lo[v], upper: b.hi[v] }
        })
        .collect();
    if !open.is_empty() {
        return Ok(ExtensionOutcome::Ambiguous(open));
    }
    let mut n = vec![0u32; len * len * len];
    for i in 0..len {
        for j in 0..len {
            for k in 0..len {
                n[(i * len + j) * len + k] = b.lo[orbits.var(i, j, k)];
            }
        }
    }
    let ring = FusionRing::from_parts("derived", labels.to_vec(), identity, dual.to_vec(), n);
    let report = ring.check_axioms();
    if !report.passed() {
        return Err(Error::InvalidTable(format!("pinned table fails the ring axioms: {report:?}")));
    }
    Ok(ExtensionOutcome::Unique(ring))
}

/// One sweep over `sum_m N^m_{ij} N^l_{mk} = sum_m N^m_{jk} N^l_{im}`,
/// fixing any entry that is the sole unknown of an equation in which it
/// appears linearly.
fn associativity_step(orbits: &Orbits, b: &mut Bounds, labels: &[Label]) -> Result<bool> {
    let len = orbits.len;
    let mut changed = false;
    for i in 0..len {
        for j in 0..len {
            for k in 0..len {
                for l in 0..len {
                    let mut products = Vec::with_capacity(2 * len);
                    for m in 0..len {
                        products.push((1i64, orbits.var(i, j, m), orbits.var(m, k, l)));
                        products.push((-1i64, orbits.var(j, k, m), orbits.var(i, m, l)));
                    }
                    let Some((x, coef, constant)) = linear_in_one(&products, b) else {
                        continue;
                    };
                    if coef == 0 {
                        if constant != 0 {
                            return Err(Error::Contradiction(format!(
                                "associativity fails for ({}, {}, {}, {})",
                                labels[i], labels[j], labels[k], labels[l]
                            )));
                        }
                        continue;
                    }
                    let value = -constant / coef;
                    if value * coef != -constant || value < i64::from(b.lo[x]) || value > i64::from(b.hi[x]) {
                        return Err(Error::Contradiction(format!(
                            "associativity for ({}, {}, {}, {}) has no admissible solution",
                            labels[i], labels[j], labels[k], labels[l]
                        )));
                    }
                    b.lo[x] = value as u32;
                    b.hi[x] = value as u32;
                    changed = true;
                }
            }
        }
    }
    Ok(changed)
}

/// Writes `sum sign * a * b` as `coef * x + constant` when at most one
/// undetermined variable `x` occurs, and only linearly.
fn linear_in_one(products: &[(i64, usize, usize)], b: &Bounds) -> Option<(usize, i64, i64)> {
    let mut unknown = None;
    let mut coef = 0i64;
    let mut constant = 0i64;
    for &(sign, p, q) in products {
        match (b.fixed(p), b.fixed(q)) {
            (Some(x), Some(y)) => constant += sign * i64::from(x) * i64::from(y),
            (Some(0), None) | (None, Some(0)) => {}
            (Some(c), None) | (None, Some(c)) => {
                let v = if b.fixed(p).is_none() { p } else { q };
                if *unknown.get_or_insert(v) != v {
                    return None;
                }
                coef += sign * i64::from(c);
            }
            (None, None) => return None,
        }
    }
    unknown.map(|x| (x, coef, constant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::ring::Flavor;
    use crate::fusion::tables::{b_ext, c_full};
    use crate::scalar::int;

    #[test]
    fn trivial_extension() {
        let base = FusionRing::new("one", vec![Label::new("0", int(0), Flavor::None)], &[(0, 0, 0, 1)]).unwrap();
        let labels = vec![Label::new("W(0)", int(0), Flavor::None)];
        let br = Branching::new(&labels, &base, &[("W(0)", &["0"])]).unwrap();
        let out =
            determine_extension_ring(&labels, &[0], &br, &base, &EvidenceSet::new(), Propagation::Sandwich).unwrap();
        let ExtensionOutcome::Unique(r) = out else { panic!("expected a unique ring") };
        assert_eq!(r.n(0, 0, 0), 1);
    }

    #[test]
    fn empty_evidence_leaves_entries_open() {
        let (b, c) = (b_ext(), c_full());
        let br = Branching::potts_extension(b.labels(), &c).unwrap();
        let out = determine_extension_ring(b.labels(), b.duals(), &br, &c, &EvidenceSet::new(), Propagation::Sandwich)
            .unwrap();
        assert!(matches!(out, ExtensionOutcome::Ambiguous(v) if !v.is_empty()));
    }

    #[test]
    fn evidence_above_a_zero_bound_is_a_contradiction() {
        let (b, c) = (b_ext(), c_full());
        let br = Branching::potts_extension(b.labels(), &c).unwrap();
        let mut ev = EvidenceSet::new();
        ev.push("bad", "W(2/5)", "W(2/3)+", "W(0)", "");
        let out = determine_extension_ring(b.labels(), b.duals(), &br, &c, &ev, Propagation::Sandwich);
        assert!(matches!(out, Err(Error::Contradiction(_))));
    }
}
