//! Nonvanishing fusion evidence from explicit mode computations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::conformal::ConformalVector;
use super::engine::FockSpace;
use super::fock::{graded_basis, FockState, FockVector};
use super::lattice::CosetVector;
use crate::error::{Error, Result};
use crate::fusion::{kac_table, kac_weight, unitary_model_for, EvidenceSet};
use crate::linalg::Matrix;
use crate::scalar::{int, rat, Scalar};

/// Basis of one graded piece of a coset module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub rep: CosetVector,
    pub degree: Scalar,
    pub basis: Vec<FockState>,
}

impl GradedPiece {
    pub fn new(space: &FockSpace, rep: &CosetVector, degree: &Scalar) -> Result<Self> {
        if degree > space.cutoff() {
            return Err(Error::truncation(degree.clone(), space.cutoff().clone()));
        }
        Ok(GradedPiece { rep: rep.clone(), degree: degree.clone(), basis: graded_basis(space.lattice(), rep, degree) })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `u_n` restricted to this piece; `u_n` must preserve it.
    pub fn operator(&self, space: &FockSpace, u: &FockVector, n: &Scalar) -> Result<Matrix> {
        let mut cols = Vec::new();
        for s in &self.basis {
            let image = space.vertex_mode(u, n, &FockVector::from_state(s.clone()))?;
            let col = image
                .coordinates(&self.basis)
                .ok_or_else(|| Error::Spectral(format!("operator leaves the piece of degree {}", self.degree)))?;
            cols.push(col);
        }
        Ok(Matrix::from_columns(&cols, self.dim()))
    }
}

/// Simultaneous eigenspace decomposition of a graded piece under `w^i_1`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub piece: GradedPiece,
    operators: Vec<Matrix>,
    /// Eigenvalues with nonzero eigenspace, and the eigenspace dimension.
    pub eigenvalues: Vec<Vec<(Scalar, usize)>>,
}

impl SpectralDecomposition {
    /// Each operator must be diagonalizable with eigenvalues among `h + k`,
    /// `h` a weight of the minimal model of the matching central charge and
    /// `k >= 0` an integer, `h + k <= degree`.
    pub fn new(space: &FockSpace, piece: GradedPiece, triple: &[ConformalVector]) -> Result<Self> {
        let mut operators = Vec::new();
        let mut eigenvalues = Vec::new();
        for w in triple {
            let op = piece.operator(space, &w.vector, &int(1))?;
            let mut found = Vec::new();
            let mut total = 0;
            for lambda in candidate_eigenvalues(&w.central_charge, &piece.degree)? {
                let k = op.shift(&lambda).kernel().len();
                if k > 0 {
                    total += k;
                    found.push((lambda, k));
                }
            }
            if total != piece.dim() {
                return Err(Error::Spectral(format!(
                    "eigenspaces of the c = {} operator span {total} of {} dimensions",
                    w.central_charge,
                    piece.dim()
                )));
            }
            operators.push(op);
            eigenvalues.push(found);
        }
        Ok(SpectralDecomposition { piece, operators, eigenvalues })
    }

    /// Projection of `coords` onto the simultaneous eigenspace `target`.
    pub fn project(&self, coords: &[Scalar], target: &[Scalar]) -> Vec<Scalar> {
        let mut x = coords.to_vec();
        for ((op, eig), h) in self.operators.iter().zip(&self.eigenvalues).zip(target) {
            if !eig.iter().any(|(l, _)| l == h) {
                return vec![Scalar::zero(); x.len()];
            }
            for (mu, _) in eig.iter().filter(|(l, _)| l != h) {
                let y = op.shift(mu).mul_vec(&x);
                let c = Scalar::one() / (h - mu);
                x = y.into_iter().map(|v| v * &c).collect();
            }
        }
        x
    }
}

fn candidate_eigenvalues(c: &Scalar, degree: &Scalar) -> Result<Vec<Scalar>> {
    let (p, q) = unitary_model_for(c, 12)
        .ok_or_else(|| Error::Spectral(format!("no unitary minimal model with central charge {c}")))?;
    let mut out = Vec::new();
    for (r, s) in kac_table(p, q) {
        let mut h = kac_weight(p, q, r, s);
        while &h <= degree {
            out.push(h.clone());
            h += int(1);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `u_n v` has a nonzero component in the simultaneous eigenspace
/// `target` of its graded piece.
pub fn fusion_evidence(
    space: &FockSpace,
    u: &FockVector,
    v: &FockVector,
    n: &Scalar,
    target: &[Scalar; 3],
    triple: &[ConformalVector; 3],
) -> Result<bool> {
    let image = space.vertex_mode(u, n, v)?;
    let Some((state, _)) = image.terms().next() else { return Ok(false) };
    let lat = space.lattice();
    let degree = image.degree(lat).ok_or_else(|| Error::Spectral("inhomogeneous product".into()))?;
    let piece = GradedPiece::new(space, state.exponent(), &degree)?;
    let coords =
        image.coordinates(&piece.basis).ok_or_else(|| Error::Spectral("product spreads over several cosets".into()))?;
    let dec = SpectralDecomposition::new(space, piece, triple)?;
    Ok(dec.project(&coords, target).iter().any(|x| !x.is_zero()))
}

/// One mode computation establishing a nonzero fusion coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceItem {
    pub id: String,
    pub left: String,
    pub right: String,
    pub target: String,
    pub u: FockVector,
    pub v: FockVector,
    pub n: Scalar,
    pub eigentriple: [Scalar; 3],
}

/// Result of running one [`EvidenceItem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceOutcome {
    pub item: EvidenceItem,
    pub nonzero: bool,
}

impl EvidenceOutcome {
    /// `N^{target}_{left,right} != 0` in label keys.
    pub fn statement(&self) -> String {
        format!("N^{}_{{{},{}}} != 0", self.item.target, self.item.left, self.item.right)
    }
}

/// `e^{(x+2y)/3}`, `e^{(x-y)/3}`, `e^{(-2x-y)/3}`.
pub fn m1_exponents() -> [CosetVector; 3] {
    [
        CosetVector::from_fracs(&[(1, 3), (2, 3)]),
        CosetVector::from_fracs(&[(1, 3), (-1, 3)]),
        CosetVector::from_fracs(&[(-2, 3), (-1, 3)]),
    ]
}

fn combo(exps: &[CosetVector; 3], c: [i64; 3]) -> FockVector {
    let mut v = FockVector::zero();
    for (e, k) in exps.iter().zip(c) {
        v.add_scaled(&FockVector::exponential(e.clone()), &int(k));
    }
    v
}

/// The lowest vectors used by the catalog: `(x+2y)(-1)1`, then
/// `A+B+C`, `2A-B-C` in `M1` and the same combinations of the negated
/// exponents in `M2`.
pub fn standard_vectors() -> [FockVector; 5] {
    let plus = m1_exponents();
    let minus = plus.clone().map(|e| e.neg());
    [
        FockVector::heisenberg_generator(&CosetVector::from_ints(&[1, 2])),
        combo(&plus, [1, 1, 1]),
        combo(&plus, [2, -1, -1]),
        combo(&minus, [1, 1, 1]),
        combo(&minus, [2, -1, -1]),
    ]
}

/// `(x+2y)(0)` on the three `M1` exponentials.
pub fn a0_eigenvalues(space: &FockSpace) -> [Scalar; 3] {
    let a = CosetVector::from_ints(&[1, 2]);
    m1_exponents().map(|e| {
        let v = FockVector::exponential(e);
        space.heisenberg_mode(&a, 0, &v).ratio_to(&v).expect("exponentials are a(0)-eigenvectors")
    })
}

/// The nonvanishing computations E1 to E9 for the extension labels of the
/// built-in extension table.
/// `(id, left, right, target, u, v, n, eigentriple)`.
type CatalogRow<'a> = (&'a str, &'a str, &'a str, &'a str, &'a FockVector, &'a FockVector, Scalar, &'a [Scalar; 3]);

pub fn standard_evidence() -> Vec<EvidenceItem> {
    let [t2, p23, p115, m23, m115] = standard_vectors();
    let vac = [int(0), int(0), int(0)];
    let w25 = [int(0), rat(3, 5), rat(7, 5)];
    let w23 = [int(0), int(0), rat(2, 3)];
    let w115 = [int(0), rat(3, 5), rat(1, 15)];
    let third = rat(1, 3);
    let m_third = rat(-1, 3);
    let rows: Vec<CatalogRow> = vec![
        ("E1", "W(2/5)", "W(2/5)", "W(0)", &t2, &t2, int(1), &vac),
        ("E1", "W(2/3)+", "W(2/3)-", "W(0)", &p23, &m23, third.clone(), &vac),
        ("E1", "W(1/15)+", "W(1/15)-", "W(0)", &p115, &m115, third, &vac),
        ("E2", "W(2/5)", "W(2/5)", "W(2/5)", &t2, &t2, int(-1), &w25),
        ("E3", "W(2/5)", "W(2/3)+", "W(1/15)+", &t2, &p23, int(0), &w115),
        ("E4", "W(2/5)", "W(1/15)+", "W(1/15)+", &t2, &p115, int(0), &w115),
        ("E5", "W(2/5)", "W(1/15)+", "W(2/3)+", &t2, &p115, int(0), &w23),
        ("E5", "W(2/5)", "W(2/3)-", "W(1/15)-", &t2, &m23, int(0), &w115),
        ("E6", "W(2/5)", "W(1/15)-", "W(1/15)-", &t2, &m115, int(0), &w115),
        ("E7", "W(2/3)+", "W(2/3)+", "W(2/3)-", &p23, &p23, m_third.clone(), &w23),
        ("E7", "W(2/3)-", "W(2/3)-", "W(2/3)+", &m23, &m23, m_third.clone(), &w23),
        ("E8", "W(1/15)+", "W(1/15)+", "W(2/3)-", &p115, &p115, m_third.clone(), &w23),
        ("E8", "W(2/3)+", "W(1/15)+", "W(1/15)-", &p23, &p115, m_third.clone(), &w115),
        ("E8", "W(2/3)-", "W(1/15)-", "W(1/15)+", &m23, &m115, m_third.clone(), &w115),
        ("E9", "W(1/15)+", "W(1/15)+", "W(1/15)-", &p115, &p115, m_third.clone(), &w115),
        ("E9", "W(1/15)-", "W(1/15)-", "W(1/15)+", &m115, &m115, m_third, &w115),
    ];
    rows.into_iter()
        .map(|(id, l, r, t, u, v, n, h)| EvidenceItem {
            id: id.into(),
            left: l.into(),
            right: r.into(),
            target: t.into(),
            u: u.clone(),
            v: v.clone(),
            n,
            eigentriple: h.clone(),
        })
        .collect()
}

/// Runs every item; items listed in `skip` are left out entirely.
pub fn run_evidence(
    space: &FockSpace,
    triple: &[ConformalVector; 3],
    items: &[EvidenceItem],
    skip: &[&str],
) -> Result<Vec<EvidenceOutcome>> {
    let mut out = Vec::new();
    for item in items.iter().filter(|i| !skip.contains(&i.id.as_str())) {
        let nonzero = fusion_evidence(space, &item.u, &item.v, &item.n, &item.eigentriple, triple)?;
        out.push(EvidenceOutcome { item: item.clone(), nonzero });
    }
    Ok(out)
}

/// Evidence set holding the statements whose projection was nonzero.
pub fn evidence_set(outcomes: &[EvidenceOutcome]) -> EvidenceSet {
    let mut ev = EvidenceSet::new();
    for o in outcomes.iter().filter(|o| o.nonzero) {
        let [h1, h2, h3] = &o.item.eigentriple;
        let note = format!("mode {} projected onto ({h1},{h2},{h3})", o.item.n);
        ev.push(&o.item.id, &o.item.left, &o.item.right, &o.item.target, &note);
    }
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::conformal::conformal_triple_search;
    use crate::vertex::lattice::Lattice;

    #[test]
    fn a0_values() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        assert_eq!(a0_eigenvalues(&s), [int(4), int(-2), int(-2)]);
    }

    #[test]
    fn candidate_lists() {
        let c = candidate_eigenvalues(&rat(1, 2), &int(1)).unwrap();
        assert_eq!(c, [int(0), rat(1, 16), rat(1, 2), int(1)]);
    }

    #[test]
    fn catalog_is_nonzero() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        let triple = conformal_triple_search(&s).unwrap();
        let out = run_evidence(&s, &triple, &standard_evidence(), &[]).unwrap();
        for o in &out {
            assert!(o.nonzero, "{} {}", o.item.id, o.statement());
        }
        assert_eq!(evidence_set(&out).len(), 16);
    }

    #[test]
    fn projection_discriminates() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        let triple = conformal_triple_search(&s).unwrap();
        let [t2, p23, ..] = standard_vectors();
        let w23 = [int(0), int(0), rat(2, 3)];
        // (x+2y)(0) maps A+B+C to 2(2A-B-C): no (0,0,2/3) component.
        assert!(!fusion_evidence(&s, &t2, &p23, &int(0), &w23, &triple).unwrap());
        let image = s.vertex_mode(&t2, &int(0), &p23).unwrap();
        assert_eq!(image, standard_vectors()[2].scale(&int(2)));
        // degree-0 output only carries the vacuum triple
        let w25 = [int(0), rat(3, 5), rat(7, 5)];
        assert!(!fusion_evidence(&s, &t2, &t2, &int(1), &w25, &triple).unwrap());
    }

    #[test]
    fn products_of_m1_vectors_land_in_m2() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        let [_, p23, ..] = standard_vectors();
        let image = s.vertex_mode(&p23, &rat(-1, 3), &p23).unwrap();
        assert!(!image.is_zero());
        let m2 = crate::vertex::lattice::sqrt2_a2_cosets()[2].clone();
        assert!(image.terms().all(|(st, _)| m2.contains(st.exponent())));
    }
}
