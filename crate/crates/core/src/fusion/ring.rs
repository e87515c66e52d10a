use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sign tag distinguishing a module from its contragredient partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    None,
    Plus,
    Minus,
}

impl Flavor {
    pub fn suffix(self) -> &'static str {
        match self {
            Flavor::None => "",
            Flavor::Plus => "+",
            Flavor::Minus => "-",
        }
    }

    pub fn opposite(self) -> Flavor {
        match self {
            Flavor::None => Flavor::None,
            Flavor::Plus => Flavor::Minus,
            Flavor::Minus => Flavor::Plus,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::None => "none",
            Flavor::Plus => "+",
            Flavor::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub name: String,
    /// Lowest conformal weight.
    pub weight: Scalar,
    pub flavor: Flavor,
}

impl Label {
    pub fn new(name: impl Into<String>, weight: Scalar, flavor: Flavor) -> Self {
        Label { name: name.into(), weight, flavor }
    }

    /// Name with the flavor suffix appended, e.g. `W(2/3)+`. Unique within a
    /// ring.
    pub fn key(&self) -> String {
        format!("{}{}", self.name, self.flavor.suffix())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A fusion ring with nonnegative integer structure constants `N^k_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    labels: Vec<Label>,
    identity: usize,
    dual: Vec<usize>,
    // n[(i * len + j) * len + k] = N^k_{ij}
    n: Vec<u32>,
}

/// Outcome of one axiom family. A failure carries the offending indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomCheck {
    Pass,
    Fail(Vec<usize>),
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomCheck::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// `N^k_{i,id} = delta_{ik}`; witness `[i, k]`.
    pub identity: AxiomCheck,
    /// `dual(id) = id` and `dual` is an involution; witness `[i]`.
    pub duality: AxiomCheck,
    /// Witness `[i, j, k]`.
    pub commutativity: AxiomCheck,
    /// `N^k_{ij} = N^{dual i}_{j, dual k}`; witness `[i, j, k]`.
    pub frobenius: AxiomCheck,
    /// Witness `[i, j, k, l]`.
    pub associativity: AxiomCheck,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.passed())
    }

    pub fn entries(&self) -> [(&'static str, &AxiomCheck); 5] {
        [
            ("identity", &self.identity),
            ("duality", &self.duality),
            ("commutativity", &self.commutativity),
            ("frobenius", &self.frobenius),
            ("associativity", &self.associativity),
        ]
    }
}

impl FusionRing {
    /// Builds a ring from explicit structure constants given as
    /// `(i, j, k, N^k_{ij})`; missing entries are zero. The identity and the
    /// duality are derived from the table: the identity is the unique label
    /// acting trivially, and `dual(i)` the unique `j` with `N^id_{ij} = 1`.
    pub fn new(name: impl Into<String>, labels: Vec<Label>, entries: &[(usize, usize, usize, u32)]) -> Result<Self> {
        let len = labels.len();
        if len == 0 {
            return Err(Error::InvalidTable("a ring needs at least one label".into()));
        }
        let mut keys: Vec<String> = labels.iter().map(Label::key).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTable("duplicate label".into()));
        }
        if let Some(l) = labels.iter().find(|l| l.weight.is_negative()) {
            return Err(Error::InvalidTable(format!("label {l} has negative weight")));
        }
        let mut n = vec![0u32; len * len * len];
        for &(i, j, k, m) in entries {
            if i >= len || j >= len || k >= len {
                return Err(Error::InvalidTable(format!("index out of range in ({i}, {j}, {k})")));
            }
            n[(i * len + j) * len + k] = m;
        }
        let at = |i: usize, j: usize, k: usize| n[(i * len + j) * len + k];
        let identity = (0..len)
            .find(|&e| (0..len).all(|j| (0..len).all(|k| at(e, j, k) == u32::from(j == k))))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let mut dual = Vec::with_capacity(len);
        for i in 0..len {
            let d: Vec<usize> = (0..len).filter(|&j| at(i, j, identity) != 0).collect();
            match d.as_slice() {
                [j] if at(i, *j, identity) == 1 => dual.push(*j),
                _ => {
                    return Err(Error::InvalidTable(format!("label {} has no unique dual", labels[i])));
                }
            }
        }
        Ok(FusionRing { name: name.into(), labels, identity, dual, n })
    }

    /// Builds a ring with explicit identity and duality, without deriving or
    /// validating anything. Used for deliberately mutated tables.
    pub fn from_parts(
        name: impl Into<String>,
        labels: Vec<Label>,
        identity: usize,
        dual: Vec<usize>,
        n: Vec<u32>,
    ) -> Self {
        let len = labels.len();
        assert_eq!(dual.len(), len, "dual has the wrong length");
        assert_eq!(n.len(), len * len * len, "structure constants have the wrong length");
        FusionRing { name: name.into(), labels, identity, dual, n }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn index_of(&self, key: &str) -> Result<usize> {
        self.labels.iter().position(|l| l.key() == key).ok_or_else(|| Error::UnknownLabel(key.to_string()))
    }

    /// `N^k_{ij}`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let len = self.len();
        self.n[(i * len + j) * len + k]
    }

    pub fn structure_constants(&self) -> &[u32] {
        &self.n
    }

    /// Copy of the ring with one structure constant replaced.
    pub fn with_coefficient(&self, i: usize, j: usize, k: usize, value: u32) -> FusionRing {
        let mut out = self.clone();
        let len = self.len();
        out.n[(i * len + j) * len + k] = value;
        out
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `{(k, N^k_{ij}) : N^k_{ij} > 0}` in basis order.
    pub fn multiply(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.len()).filter_map(|k| Some((k, self.n(i, j, k))).filter(|(_, m)| *m > 0)).collect()
    }

    pub fn multiply_keys(&self, i: &str, j: &str) -> Result<Vec<(&Label, u32)>> {
        let (i, j) = (self.index_of(i)?, self.index_of(j)?);
        Ok(self.multiply(i, j).into_iter().map(|(k, m)| (&self.labels[k], m)).collect())
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let len = self.len();
        let id = self.identity;
        let mut identity = AxiomCheck::Pass;
        'id: for i in 0..len {
            for k in 0..len {
                let want = u32::from(i == k);
                if self.n(i, id, k) != want || self.n(id, i, k) != want {
                    identity = AxiomCheck::Fail(vec![i, k]);
                    break 'id;
                }
            }
        }
        let duality = if self.dual[id] != id {
            AxiomCheck::Fail(vec![id])
        } else {
            match (0..len).find(|&i| self.dual[i] >= len || self.dual[self.dual[i]] != i) {
                Some(i) => AxiomCheck::Fail(vec![i]),
                None => AxiomCheck::Pass,
            }
        };
        if !duality.passed() {
            // Frobenius symmetry is meaningless without a valid duality.
            return AxiomReport {
                identity,
                frobenius: duality.clone(),
                duality,
                commutativity: self.check_commutativity(),
                associativity: self.check_associativity(),
            };
        }
        let mut frobenius = AxiomCheck::Pass;
        'fr: for i in 0..len {
            for j in 0..len {
                for k in 0..len {
                    if self.n(i, j, k) != self.n(j, self.dual[k], self.dual[i]) {
                        frobenius = AxiomCheck::Fail(vec![i, j, k]);
                        break 'fr;
                    }
                }
            }
        }
        AxiomReport {
            identity,
            duality,
            commutativity: self.check_commutativity(),
            frobenius,
            associativity: self.check_associativity(),
        }
    }

    fn check_commutativity(&self) -> AxiomCheck {
        let len = self.len();
        for i in 0..len {
            for j in i + 1..len {
                for k in 0..len {
                    if self.n(i, j, k) != self.n(j, i, k) {
                        return AxiomCheck::Fail(vec![i, j, k]);
                    }
                }
            }
        }
        AxiomCheck::Pass
    }

    fn check_associativity(&self) -> AxiomCheck {
        let len = self.len();
        for i in 0..len {
            for j in 0..len {
                for k in 0..len {
                    for l in 0..len {
                        let left: u64 = (0..len).map(|m| u64::from(self.n(i, j, m)) * u64::from(self.n(m, k, l))).sum();
                        let right: u64 =
                            (0..len).map(|m| u64::from(self.n(j, k, m)) * u64::from(self.n(i, m, l))).sum();
                        if left != right {
                            return AxiomCheck::Fail(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        AxiomCheck::Pass
    }

    /// The subring spanned by the given labels, which must be closed under
    /// multiplication and duality and contain the identity.
    pub fn restrict(&self, name: impl Into<String>, keys: &[&str]) -> Result<FusionRing> {
        let idx: Vec<usize> = keys.iter().map(|k| self.index_of(k)).collect::<Result<_>>()?;
        if !idx.contains(&self.identity) {
            return Err(Error::InvalidTable("subset does not contain the identity".into()));
        }
        let pos = |g: usize| idx.iter().position(|&x| x == g);
        let mut entries = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for (k, m) in self.multiply(i, j) {
                    let c = pos(k).ok_or_else(|| {
                        Error::InvalidTable(format!(
                            "subset not closed: {} x {} contains {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        ))
                    })?;
                    entries.push((a, b, c, m));
                }
            }
        }
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        FusionRing::new(name, labels, &entries)
    }

    /// Index map sending each label of `self` to the label of `other` with
    /// the same weight and flavor.
    pub fn match_by_weight(&self, other: &FusionRing) -> Result<Vec<usize>> {
        if self.len() != other.len() {
            return Err(Error::InvalidTable(format!("rings have {} and {} labels", self.len(), other.len())));
        }
        self.labels
            .iter()
            .map(|l| {
                let hits: Vec<usize> = (0..other.len())
                    .filter(|&j| other.labels[j].weight == l.weight && other.labels[j].flavor == l.flavor)
                    .collect();
                match hits.as_slice() {
                    [j] => Ok(*j),
                    _ => Err(Error::UnknownLabel(format!("no unique weight match for {l}"))),
                }
            })
            .collect()
    }

    /// Entries `(i, j, k)` (indices of `self`) where the two rings differ
    /// under the given label map.
    pub fn differences(&self, other: &FusionRing, map: &[usize]) -> Vec<(usize, usize, usize)> {
        let len = self.len();
        let mut out = Vec::new();
        for i in 0..len {
            for j in 0..len {
                for k in 0..len {
                    if self.n(i, j, k) != other.n(map[i], map[j], map[k]) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn z3() -> FusionRing {
        let labels = vec![
            Label::new("a", int(0), Flavor::None),
            Label::new("b", rat(2, 3), Flavor::Plus),
            Label::new("b", rat(2, 3), Flavor::Minus),
        ];
        let mut entries = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                entries.push((i, j, (i + j) % 3, 1));
            }
        }
        FusionRing::new("z3", labels, &entries).unwrap()
    }

    #[test]
    fn group_ring_axioms() {
        let r = z3();
        assert!(r.check_axioms().passed());
        assert_eq!(r.dual(1), 2);
        assert_eq!(r.index_of("b+").unwrap(), 1);
        assert_eq!(r.multiply(1, 1), vec![(2, 1)]);
        assert!(matches!(r.index_of("c"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn trivial_ring() {
        let r = FusionRing::new("one", vec![Label::new("0", int(0), Flavor::None)], &[(0, 0, 0, 1)]).unwrap();
        assert!(r.check_axioms().passed());
    }

    #[test]
    fn broken_commutativity_is_witnessed() {
        let r = z3().with_coefficient(1, 2, 1, 1);
        let report = r.check_axioms();
        assert!(!report.passed());
        assert_eq!(report.commutativity, AxiomCheck::Fail(vec![1, 2, 1]));
    }

    #[test]
    fn missing_identity_is_rejected() {
        let labels = vec![Label::new("a", int(0), Flavor::None)];
        assert!(FusionRing::new("bad", labels, &[(0, 0, 0, 2)]).is_err());
    }
}
