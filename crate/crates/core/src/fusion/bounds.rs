//! Restriction to the base model: branchings, the upper bounds they imply,
//! and nonvanishing evidence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ring::{Flavor, FusionRing, Label};
use crate::error::{Error, Result};

/// Decomposition of every extension label into base labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    ext: Vec<Label>,
    images: Vec<Vec<usize>>,
}

impl Branching {
    /// `images` pairs an extension label key with the keys of its base
    /// summands. Every extension label must appear exactly once.
    pub fn new(ext: &[Label], base: &FusionRing, images: &[(&str, &[&str])]) -> Result<Self> {
        let mut out = Vec::with_capacity(ext.len());
        for label in ext {
            let key = label.key();
            let hits: Vec<_> = images.iter().filter(|(k, _)| *k == key).collect();
            let [(_, parts)] = hits.as_slice() else {
                return Err(Error::UnknownLabel(format!("branching has no unique entry for {key}")));
            };
            if parts.is_empty() {
                return Err(Error::InvalidParameter(format!("empty branching for {key}")));
            }
            out.push(parts.iter().map(|p| base.index_of(p)).collect::<Result<Vec<_>>>()?);
        }
        if images.len() != ext.len() {
            return Err(Error::InvalidParameter("branching mentions labels outside the extension".into()));
        }
        if !out.iter().any(|img| img.contains(&base.identity())) {
            return Err(Error::InvalidParameter("no extension label contains the base identity".into()));
        }
        Ok(Branching { ext: ext.to_vec(), images: out })
    }

    /// W(0) = L(0)+L(3), W(2/5) = L(2/5)+L(7/5), W(h,+-) = L(h) for
    /// h = 2/3, 1/15.
    pub fn potts_extension(ext: &[Label], base: &FusionRing) -> Result<Self> {
        Branching::new(
            ext,
            base,
            &[
                ("W(0)", &["0", "3"]),
                ("W(2/5)", &["2/5", "7/5"]),
                ("W(2/3)+", &["2/3"]),
                ("W(1/15)+", &["1/15"]),
                ("W(2/3)-", &["2/3"]),
                ("W(1/15)-", &["1/15"]),
            ],
        )
    }

    pub fn labels(&self) -> &[Label] {
        &self.ext
    }

    pub fn image(&self, i: usize) -> &[usize] {
        &self.images[i]
    }

    /// Base summand of lowest weight.
    pub fn lowest(&self, i: usize, base: &FusionRing) -> usize {
        *self.images[i].iter().min_by(|a, b| base.label(**a).weight.cmp(&base.label(**b).weight)).expect("nonempty")
    }

    /// A flavored label together with its opposite-flavor partner, or the
    /// label alone.
    pub fn group(&self, i: usize) -> Vec<usize> {
        let l = &self.ext[i];
        if l.flavor == Flavor::None {
            return alloc::vec![i];
        }
        let partner = self.ext.iter().position(|m| m.name == l.name && m.flavor == l.flavor.opposite());
        match partner {
            Some(p) if l.flavor == Flavor::Plus => alloc::vec![i, p],
            Some(p) => alloc::vec![p, i],
            None => alloc::vec![i],
        }
    }

    pub fn index_of(&self, key: &str) -> Result<usize> {
        self.ext.iter().position(|l| l.key() == key).ok_or_else(|| Error::UnknownLabel(key.to_string()))
    }
}

/// The four inequality shapes: source modules are single plain labels or at
/// least one flavor pair; the target is plain or flavored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundShape {
    PlainToPlain,
    PlainToFlavored,
    PairedToPlain,
    PairedToFlavored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub target: usize,
    pub shape: BoundShape,
    /// Sum of the extension coefficients over the two groups.
    pub value: u32,
    pub bound: u32,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.value <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Upper bound on `sum_{a in group(i), b in group(j)} N^k_{ab}`: the base
/// fusion number of the lowest summands of `i` and `j` into all summands of
/// `k`.
pub fn upper_bound(br: &Branching, base: &FusionRing, i: usize, j: usize, k: usize) -> (BoundShape, u32) {
    let (li, lj) = (br.lowest(i, base), br.lowest(j, base));
    let bound = br.image(k).iter().map(|&c| base.n(li, lj, c)).sum();
    let paired = br.group(i).len() > 1 || br.group(j).len() > 1;
    let flavored = br.labels()[k].flavor != Flavor::None;
    let shape = match (paired, flavored) {
        (false, false) => BoundShape::PlainToPlain,
        (false, true) => BoundShape::PlainToFlavored,
        (true, false) => BoundShape::PairedToPlain,
        (true, true) => BoundShape::PairedToFlavored,
    };
    (shape, bound)
}

/// Group representatives: the first index of each group, in label order.
pub(crate) fn group_representatives(br: &Branching) -> Vec<usize> {
    (0..br.labels().len()).filter(|&i| br.group(i)[0] == i).collect()
}

/// Checks every upper bound against the structure constants of `ext`, whose
/// labels are matched to the branching by key.
pub fn check_branching_bounds(ext: &FusionRing, base: &FusionRing, br: &Branching) -> Result<BoundReport> {
    let map: Vec<usize> = br.labels().iter().map(|l| ext.index_of(&l.key())).collect::<Result<_>>()?;
    let reps = group_representatives(br);
    let mut checks = Vec::new();
    for &i in &reps {
        for &j in &reps {
            for k in 0..br.labels().len() {
                let (shape, bound) = upper_bound(br, base, i, j, k);
                let (gi, gj) = (br.group(i), br.group(j));
                let value = gi
                    .iter()
                    .flat_map(|&a| gj.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| ext.n(map[a], map[b], map[k]))
                    .sum();
                checks.push(BoundCheck { left: gi, right: gj, target: k, shape, value, bound });
            }
        }
    }
    Ok(BoundReport { checks })
}

/// A nonvanishing statement `N^target_{left,right} >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub id: String,
    pub left: String,
    pub right: String,
    pub target: String,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvidenceSet {
    items: Vec<Evidence>,
}

impl EvidenceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: &str, left: &str, right: &str, target: &str, note: &str) {
        self.items.push(Evidence {
            id: id.into(),
            left: left.into(),
            right: right.into(),
            target: target.into(),
            note: note.into(),
        });
    }

    pub fn items(&self) -> &[Evidence] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Copy without the items carrying the given id.
    pub fn without(&self, id: &str) -> EvidenceSet {
        EvidenceSet { items: self.items.iter().filter(|e| e.id != id).cloned().collect() }
    }

    pub fn ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.items.iter().map(|e| e.id.as_str()).collect();
        ids.dedup();
        ids
    }
}
