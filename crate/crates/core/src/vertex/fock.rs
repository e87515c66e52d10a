use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::lattice::{CosetVector, Lattice};
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

/// Heisenberg creation factor `e_index(-level)` with `level >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub level: u32,
    pub index: usize,
}

/// Basis state `e_{i1}(-n1) ... e_{ik}(-nk) e^beta`. Factors are kept sorted
/// by decreasing level, then increasing basis index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    modes: Vec<Mode>,
    exponent: CosetVector,
}

impl FockState {
    pub fn new(mut modes: Vec<Mode>, exponent: CosetVector) -> Self {
        assert!(modes.iter().all(|m| m.level >= 1), "creation modes need level >= 1");
        modes.sort_by(|a, b| b.level.cmp(&a.level).then(a.index.cmp(&b.index)));
        FockState { modes, exponent }
    }

    /// `e^beta` with no Heisenberg factors.
    pub fn exponential(exponent: CosetVector) -> Self {
        FockState { modes: Vec::new(), exponent }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn exponent(&self) -> &CosetVector {
        &self.exponent
    }

    pub fn level(&self) -> u32 {
        self.modes.iter().map(|m| m.level).sum()
    }

    pub fn max_level(&self) -> u32 {
        self.modes.first().map_or(0, |m| m.level)
    }

    /// Mode level sum plus `<beta,beta>/2`.
    pub fn degree(&self, lat: &Lattice) -> Scalar {
        int(i64::from(self.level())) + lat.norm(&self.exponent) / int(2)
    }

    pub(crate) fn with_mode(&self, m: Mode) -> Self {
        let mut modes = self.modes.clone();
        modes.push(m);
        FockState::new(modes, self.exponent.clone())
    }

    pub(crate) fn without(&self, pos: usize) -> Self {
        let mut modes = self.modes.clone();
        modes.remove(pos);
        FockState { modes, exponent: self.exponent.clone() }
    }

    pub(crate) fn with_exponent(&self, exponent: CosetVector) -> Self {
        FockState { modes: self.modes.clone(), exponent }
    }
}

/// Finite linear combination of basis states; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockVector {
    terms: BTreeMap<FockState, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_state(s: FockState) -> Self {
        Self::from_term(s, Scalar::one())
    }

    pub fn from_term(s: FockState, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(s, c);
        v
    }

    /// The vacuum `e^0`.
    pub fn vacuum(rank: usize) -> Self {
        Self::from_state(FockState::exponential(CosetVector::zero(rank)))
    }

    pub fn exponential(exponent: CosetVector) -> Self {
        Self::from_state(FockState::exponential(exponent))
    }

    /// `a(-1) e^0` for a vector `a` in the lattice basis.
    pub fn heisenberg_generator(a: &CosetVector) -> Self {
        let rank = a.rank();
        let mut v = Self::zero();
        for (i, c) in a.0.iter().enumerate() {
            v.add_term(FockState::new(alloc::vec![Mode { level: 1, index: i }], CosetVector::zero(rank)), c.clone());
        }
        v
    }

    pub fn add_term(&mut self, s: FockState, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &FockState) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self, lat: &Lattice) -> Option<Scalar> {
        let mut it = self.terms.keys().map(|s| s.degree(lat));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Multiple `c` with `self = c * other`, if any.
    pub fn ratio_to(&self, other: &FockVector) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        let (s, c) = other.terms.iter().next().expect("nonzero");
        let ratio = self.coeff(s) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Image under a lattice isometry `m` (columns are images of the basis).
    pub fn transform(&self, lat: &Lattice, m: &Matrix) -> FockVector {
        let rank = lat.rank();
        let mut out = FockVector::zero();
        for (s, c) in &self.terms {
            // Expand prod_f (sum_j m[j][i_f] e_j(-n_f)).
            let mut partial: Vec<(Vec<Mode>, Scalar)> = alloc::vec![(Vec::new(), c.clone())];
            for f in s.modes() {
                let mut next = Vec::new();
                for (modes, coef) in &partial {
                    for j in 0..rank {
                        let w = &m[(j, f.index)];
                        if w.is_zero() {
                            continue;
                        }
                        let mut nm = modes.clone();
                        nm.push(Mode { level: f.level, index: j });
                        next.push((nm, coef * w));
                    }
                }
                partial = next;
            }
            let exp = lat.apply(m, s.exponent());
            for (modes, coef) in partial {
                out.add_term(FockState::new(modes, exp.clone()), coef);
            }
        }
        out
    }

    /// Coefficients in a fixed list of states; `None` if some term lies
    /// outside the list.
    pub fn coordinates(&self, basis: &[FockState]) -> Option<Vec<Scalar>> {
        let mut out = alloc::vec![Scalar::zero(); basis.len()];
        for (s, c) in &self.terms {
            let i = basis.binary_search(s).ok()?;
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn from_coordinates(basis: &[FockState], coords: &[Scalar]) -> FockVector {
        let mut out = FockVector::zero();
        for (s, c) in basis.iter().zip(coords) {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

/// All basis states of the given degree with exponent in `rep + Z^rank`, in
/// sorted order.
pub fn graded_basis(lat: &Lattice, rep: &CosetVector, degree: &Scalar) -> Vec<FockState> {
    let mut out = Vec::new();
    for beta in lat.coset_vectors(rep, degree) {
        let rest = degree - lat.norm(&beta) / int(2);
        if !rest.is_integer() {
            continue;
        }
        let level = rest.to_integer();
        let level: u32 = num_traits::ToPrimitive::to_u32(&level).expect("level fits in u32");
        for modes in colored_partitions(level, lat.rank()) {
            out.push(FockState::new(modes, beta.clone()));
        }
    }
    out.sort();
    out
}

/// Multisets of modes with levels summing to `n`, each part colored by one
/// of `colors` basis indices.
pub fn colored_partitions(n: u32, colors: usize) -> Vec<Vec<Mode>> {
    fn go(n: u32, max: Mode, colors: usize, cur: &mut Vec<Mode>, out: &mut Vec<Vec<Mode>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        // parts in non-increasing (level, reversed index) order
        for level in (1..=n.min(max.level)).rev() {
            for index in 0..colors {
                let m = Mode { level, index };
                if level == max.level && index < max.index {
                    continue;
                }
                cur.push(m);
                go(n - level, m, colors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if colors == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, Mode { level: n, index: 0 }, colors, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn partition_counts() {
        // 2-colored partitions: 1, 2, 5, 10, 20
        let counts: Vec<usize> = (0..5).map(|n| colored_partitions(n, 2).len()).collect();
        assert_eq!(counts, [1, 2, 5, 10, 20]);
        assert_eq!(colored_partitions(3, 1).len(), 3);
    }

    #[test]
    fn graded_pieces_of_the_lattice() {
        let lat = Lattice::sqrt2_a2();
        let zero = CosetVector::zero(2);
        let dims: Vec<usize> = (0..3).map(|d| graded_basis(&lat, &zero, &int(d)).len()).collect();
        assert_eq!(dims, [1, 2, 11]);
        let m1 = CosetVector::from_fracs(&[(1, 3), (2, 3)]);
        assert_eq!(graded_basis(&lat, &m1, &rat(2, 3)).len(), 3);
        assert!(graded_basis(&lat, &m1, &rat(1, 3)).is_empty());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut v = FockVector::exponential(CosetVector::from_ints(&[1, 0]));
        v.add_term(FockState::exponential(CosetVector::from_ints(&[1, 0])), int(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn isometry_action() {
        let lat = Lattice::sqrt2_a2();
        let minus = Matrix::identity(2).scaled(&int(-1));
        let v = FockVector::heisenberg_generator(&CosetVector::from_ints(&[1, 2]));
        assert_eq!(v.transform(&lat, &minus), v.scale(&int(-1)));
    }
}
