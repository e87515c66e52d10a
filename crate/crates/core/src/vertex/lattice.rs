use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{floor_i64, int, is_integer, rat, Scalar};

/// A vector of `R L` written in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetVector(pub Vec<Scalar>);

impl CosetVector {
    pub fn zero(rank: usize) -> Self {
        CosetVector(vec![Scalar::zero(); rank])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        CosetVector(c.iter().map(|x| int(*x)).collect())
    }

    /// Coordinates `n_i / d`.
    pub fn from_fracs(c: &[(i64, i64)]) -> Self {
        CosetVector(c.iter().map(|(n, d)| rat(*n, *d)).collect())
    }

    /// Basis vector `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Scalar::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        CosetVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        CosetVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        CosetVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CosetVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }
}

impl fmt::Display for CosetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A positive-definite lattice given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Matrix,
    gram_inv: Matrix,
    names: Vec<String>,
}

impl Lattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        let r = gram.rows();
        if r == 0 || gram.cols() != r {
            return Err(Error::Lattice("gram matrix must be square and nonempty".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::Lattice("gram matrix is not symmetric".into()));
                }
            }
        }
        for k in 1..=r {
            let minor = Matrix::from_rows((0..k).map(|i| (0..k).map(|j| gram[(i, j)].clone()).collect()).collect());
            if !minor.determinant().is_positive() {
                return Err(Error::Lattice(format!("leading minor of size {k} is not positive")));
            }
        }
        let gram_inv = gram.inverse().ok_or_else(|| Error::Lattice("gram matrix is singular".into()))?;
        let names = if r == 2 { vec!["x".into(), "y".into()] } else { (1..=r).map(|i| format!("e{i}")).collect() };
        Ok(Lattice { gram, gram_inv, names })
    }

    /// `sqrt(2) A_2` with basis `x, y`, `<x,x> = <y,y> = 4`, `<x,y> = -2`.
    pub fn sqrt2_a2() -> Self {
        let g = Matrix::from_rows(vec![vec![int(4), int(-2)], vec![int(-2), int(4)]]);
        Lattice::new(g).expect("positive definite")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inv
    }

    /// Names of the basis vectors, used in printed states.
    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn inner(&self, u: &CosetVector, v: &CosetVector) -> Scalar {
        let r = self.rank();
        let mut acc = Scalar::zero();
        for i in 0..r {
            if u.0[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if !v.0[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    acc += &u.0[i] * &self.gram[(i, j)] * &v.0[j];
                }
            }
        }
        acc
    }

    /// `<u, e_i>`.
    pub fn inner_basis(&self, u: &CosetVector, i: usize) -> Scalar {
        (0..self.rank()).fold(Scalar::zero(), |acc, j| acc + &u.0[j] * &self.gram[(j, i)])
    }

    pub fn norm(&self, u: &CosetVector) -> Scalar {
        self.inner(u, u)
    }

    /// Every vector of `rep + Z^rank` with `<v,v>/2 <= max_half_norm`, sorted
    /// by half-norm and then by coordinates.
    pub fn coset_vectors(&self, rep: &CosetVector, max_half_norm: &Scalar) -> Vec<CosetVector> {
        if max_half_norm.is_negative() {
            return Vec::new();
        }
        let r = self.rank();
        // |c_i|^2 <= 2 d (G^-1)_{ii}
        let bounds: Vec<i64> = (0..r)
            .map(|i| {
                let b = int(2) * max_half_norm * &self.gram_inv[(i, i)];
                let s = b.floor().to_integer().sqrt();
                s.to_i64().expect("enumeration bound fits in i64") + 1
            })
            .collect();
        let base: Vec<Scalar> = rep.0.iter().map(|c| c - int(floor_i64(c))).collect();
        let mut out = Vec::new();
        // Odometer over the box [-b-1, b+1]^rank.
        let mut cur: Vec<i64> = bounds.iter().map(|b| -b - 1).collect();
        'outer: loop {
            let v = CosetVector((0..r).map(|i| &base[i] + Scalar::from_integer(BigInt::from(cur[i]))).collect());
            if &(self.norm(&v) / int(2)) <= max_half_norm {
                out.push(v);
            }
            for i in 0..r {
                if cur[i] < bounds[i] + 1 {
                    cur[i] += 1;
                    continue 'outer;
                }
                cur[i] = -bounds[i] - 1;
            }
            break;
        }
        out.sort_by(|a, b| self.norm(a).cmp(&self.norm(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Integer matrices `M` (columns are images of basis vectors) preserving
    /// the Gram matrix.
    pub fn isometries(&self) -> Vec<Matrix> {
        let r = self.rank();
        let max_norm = (0..r).map(|i| self.gram[(i, i)].clone()).max().expect("rank >= 1");
        let short = self.coset_vectors(&CosetVector::zero(r), &(max_norm / int(2)));
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.extend_isometry(&short, &mut chosen, &mut out);
        out
    }

    fn extend_isometry(&self, short: &[CosetVector], chosen: &mut Vec<usize>, out: &mut Vec<Matrix>) {
        let r = self.rank();
        let k = chosen.len();
        if k == r {
            let cols: Vec<Vec<Scalar>> = chosen.iter().map(|&c| short[c].0.clone()).collect();
            out.push(Matrix::from_columns(&cols, r));
            return;
        }
        for (n, v) in short.iter().enumerate() {
            if self.norm(v) != self.gram[(k, k)] {
                continue;
            }
            if chosen.iter().enumerate().all(|(j, &c)| self.inner(&short[c], v) == self.gram[(j, k)]) {
                chosen.push(n);
                self.extend_isometry(short, chosen, out);
                chosen.pop();
            }
        }
    }

    pub fn apply(&self, m: &Matrix, v: &CosetVector) -> CosetVector {
        CosetVector(m.mul_vec(&v.0))
    }
}

/// A coset `rep + L` with a display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub name: String,
    pub rep: CosetVector,
}

impl Coset {
    pub fn new(name: impl Into<String>, rep: CosetVector) -> Self {
        Coset { name: name.into(), rep }
    }

    pub fn contains(&self, v: &CosetVector) -> bool {
        v.sub(&self.rep).is_integral()
    }
}

/// `M0 = L`, `M1 = (x+2y)/3 + L`, `M2 = (2x+y)/3 + L`.
pub fn sqrt2_a2_cosets() -> [Coset; 3] {
    [
        Coset::new("M0", CosetVector::from_ints(&[0, 0])),
        Coset::new("M1", CosetVector::from_fracs(&[(1, 3), (2, 3)])),
        Coset::new("M2", CosetVector::from_fracs(&[(2, 3), (1, 3)])),
    ]
}

/// Index of the coset containing `v`.
pub fn coset_index(cosets: &[Coset], v: &CosetVector) -> Option<usize> {
    cosets.iter().position(|c| c.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_products() {
        let l = Lattice::sqrt2_a2();
        let a = CosetVector::from_ints(&[1, 2]);
        assert_eq!(l.inner(&a, &CosetVector::from_fracs(&[(1, 3), (2, 3)])), int(4));
        assert_eq!(l.inner(&a, &CosetVector::from_fracs(&[(1, 3), (-1, 3)])), int(-2));
        assert_eq!(l.inner(&a, &CosetVector::from_fracs(&[(-2, 3), (-1, 3)])), int(-2));
        assert_eq!(l.norm(&CosetVector::basis(2, 0)), int(4));
    }

    #[test]
    fn short_vectors() {
        let l = Lattice::sqrt2_a2();
        let zero = CosetVector::zero(2);
        assert_eq!(l.coset_vectors(&zero, &int(0)).len(), 1);
        assert_eq!(l.coset_vectors(&zero, &int(2)).len(), 7);
        let m1 = CosetVector::from_fracs(&[(1, 3), (2, 3)]);
        let v = l.coset_vectors(&m1, &rat(2, 3));
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|u| l.norm(u) == rat(4, 3)));
    }

    #[test]
    fn isometry_group_has_twelve_elements() {
        let l = Lattice::sqrt2_a2();
        let g = l.isometries();
        assert_eq!(g.len(), 12);
        for m in &g {
            let mt = Matrix::from_rows((0..2).map(|i| m.column(i)).collect());
            assert_eq!(mt.mul(l.gram()).mul(m), *l.gram());
        }
    }

    #[test]
    fn rejects_indefinite() {
        let g = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(1)]]);
        assert!(Lattice::new(g).is_err());
    }
}
