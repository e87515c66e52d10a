//! Conformal vectors in the degree-2 piece of `V_L`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::engine::FockSpace;
use super::fock::{graded_basis, FockState, FockVector, Mode};
use super::lattice::{CosetVector, Lattice};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, rat, rational_roots, rational_sqrt, Scalar};

/// A degree-2 vector together with its verified central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalVector {
    pub vector: FockVector,
    pub central_charge: Scalar,
}

impl ConformalVector {
    /// Runs [`conformal_check`] and wraps the vector if it passes.
    pub fn verified(space: &FockSpace, vector: FockVector) -> Result<Option<Self>> {
        Ok(conformal_check(space, &vector)?.map(|central_charge| ConformalVector { vector, central_charge }))
    }
}

/// `omega = 1/2 sum_{ij} (G^-1)_{ij} e_i(-1) e_j(-1) 1`.
pub fn virasoro_vector(lat: &Lattice) -> FockVector {
    let r = lat.rank();
    let inv = lat.gram_inverse();
    let mut out = FockVector::zero();
    for i in 0..r {
        for j in 0..r {
            let modes = vec![Mode { level: 1, index: i }, Mode { level: 1, index: j }];
            out.add_term(FockState::new(modes, CosetVector::zero(r)), &inv[(i, j)] / int(2));
        }
    }
    out
}

/// The Griess product `u_1 v`.
pub fn griess_product(space: &FockSpace, u: &FockVector, v: &FockVector) -> Result<FockVector> {
    space.vertex_mode(u, &int(1), v)
}

/// Central charge of `e` if `e_1 e = 2e`, `e_2 e = 0` and `e_3 e` is a
/// multiple of the vacuum; modes `e_n e` with `n >= 4` vanish by degree.
pub fn conformal_check(space: &FockSpace, e: &FockVector) -> Result<Option<Scalar>> {
    if e.is_zero() || e.degree(space.lattice()) != Some(int(2)) {
        return Ok(None);
    }
    if space.vertex_mode(e, &int(1), e)? != e.scale(&int(2)) {
        return Ok(None);
    }
    if !space.vertex_mode(e, &int(2), e)?.is_zero() {
        return Ok(None);
    }
    let e3 = space.vertex_mode(e, &int(3), e)?;
    let vac = FockVector::vacuum(space.rank());
    Ok(e3.ratio_to(&vac).map(|half_c| half_c * int(2)))
}

/// Checks `[L_m, L_n] v = (m-n) L_{m+n} v + c/12 (m^3-m) delta_{m+n,0} v` with
/// `L_m = e_{m+1}` for `-1 <= m, n <= 2` on each probe vector, skipping
/// brackets whose intermediate degrees exceed the cutoff.
pub fn virasoro_spot_check(space: &FockSpace, e: &ConformalVector, probes: &[FockVector]) -> Result<bool> {
    let l = |m: i64, v: &FockVector| space.vertex_mode(&e.vector, &int(m + 1), v);
    for v in probes {
        let Some(d) = v.degree(space.lattice()) else { continue };
        for m in -1..=2i64 {
            for n in -1..=2i64 {
                if &(&d - int(m.min(0)) - int(n.min(0))) > space.cutoff() {
                    continue;
                }
                let lhs = l(m, &l(n, v)?)?.sub(&l(n, &l(m, v)?)?);
                let mut rhs = l(m + n, v)?.scale(&int(m - n));
                if m + n == 0 {
                    rhs = rhs.add(&v.scale(&(&e.central_charge * rat(m * m * m - m, 12))));
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Eigenvalues of `w^i_1` on `v`, or `None` if `v` is not a simultaneous
/// eigenvector.
pub fn l0_eigentriple(space: &FockSpace, v: &FockVector, triple: &[ConformalVector; 3]) -> Result<Option<[Scalar; 3]>> {
    let mut out: [Scalar; 3] = Default::default();
    for (i, w) in triple.iter().enumerate() {
        let image = space.vertex_mode(&w.vector, &int(1), v)?;
        match image.ratio_to(v) {
            Some(h) => out[i] = h,
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `Some(h)` if `e_n v = 0` for every `n >= 2` and `e_1 v = h v`.
pub fn highest_weight_check(space: &FockSpace, e: &ConformalVector, v: &FockVector) -> Result<Option<Scalar>> {
    let Some(d) = v.degree(space.lattice()) else { return Ok(None) };
    // e_n v has degree d + 1 - n.
    let mut n = 2i64;
    while int(n) <= &d + int(1) {
        if !space.vertex_mode(&e.vector, &int(n), v)?.is_zero() {
            return Ok(None);
        }
        n += 1;
    }
    Ok(space.vertex_mode(&e.vector, &int(1), v)?.ratio_to(v))
}

/// The two `c = 1/2` vectors `x(-1)^2/16 -+ (e^x + e^-x)/4`, minus sign first.
pub fn ising_seeds(lat: &Lattice) -> [FockVector; 2] {
    let r = lat.rank();
    let x = CosetVector::basis(r, 0);
    let sq = FockVector::from_state(FockState::new(
        vec![Mode { level: 1, index: 0 }, Mode { level: 1, index: 0 }],
        CosetVector::zero(r),
    ));
    let exps = FockVector::exponential(x.clone()).add(&FockVector::exponential(x.neg()));
    let base = sq.scale(&rat(1, 16));
    [base.sub(&exps.scale(&rat(1, 4))), base.add(&exps.scale(&rat(1, 4)))]
}

/// Conformal vectors `w^1, w^2, w^3` of charges `1/2, 7/10, 4/5` summing to
/// the Virasoro vector and pairwise orthogonal.
///
/// `w^1` runs over [`ising_seeds`]. For each seed, `w^2` is sought in the
/// degree-2 subspace fixed by the isometries stabilizing `w^1`, cut down by
/// the linear conditions `w^1_n w^2 = 0` for `0 <= n <= 3` and `<omega, w^2> = 7/20`; the
/// remaining idempotent condition is solved exactly on the resulting affine
/// line. Among all valid triples the lexicographically smallest coefficient
/// sequence wins.
pub fn conformal_triple_search(space: &FockSpace) -> Result<[ConformalVector; 3]> {
    let lat = space.lattice();
    let omega = virasoro_vector(lat);
    let basis = graded_basis(lat, &CosetVector::zero(lat.rank()), &int(2));
    let isometries = lat.isometries();
    let targets = [rat(1, 2), rat(7, 10), rat(4, 5)];
    let mut found: Vec<(Vec<Scalar>, [ConformalVector; 3])> = Vec::new();
    let mut charges_seen = Vec::new();

    for w1 in ising_seeds(lat) {
        let Some(w1) = ConformalVector::verified(space, w1)? else { continue };
        if w1.central_charge != targets[0] {
            charges_seen.push(w1.central_charge.clone());
            continue;
        }
        let stab: Vec<&Matrix> = isometries.iter().filter(|m| w1.vector.transform(lat, m) == w1.vector).collect();
        let ansatz = invariant_subspace(lat, &basis, &stab);
        for w2 in second_vector_candidates(space, &basis, &ansatz, &w1, &omega, &targets[1])? {
            let Some(w2) = ConformalVector::verified(space, w2)? else { continue };
            if w2.central_charge != targets[1] {
                charges_seen.push(w2.central_charge.clone());
                continue;
            }
            let w3 = omega.sub(&w1.vector).sub(&w2.vector);
            let Some(w3) = ConformalVector::verified(space, w3)? else { continue };
            if w3.central_charge != targets[2] {
                charges_seen.push(w3.central_charge.clone());
                continue;
            }
            let triple = [w1.clone(), w2, w3];
            if !pairwise_orthogonal(space, &triple)? {
                continue;
            }
            let mut key = Vec::new();
            for w in &triple {
                key.extend(w.vector.coordinates(&basis).expect("degree-2 vector"));
            }
            found.push((key, triple));
        }
    }
    found.into_iter().min_by(|a, b| a.0.cmp(&b.0)).map(|(_, t)| t).ok_or_else(|| {
        Error::SearchFailure(format!("no triple with charges 1/2, 7/10, 4/5; other charges met: {charges_seen:?}"))
    })
}

/// `w^i_1 w^j = 0` for all `i != j`.
pub fn pairwise_orthogonal(space: &FockSpace, triple: &[ConformalVector; 3]) -> Result<bool> {
    for i in 0..3 {
        for j in 0..3 {
            if i != j && !griess_product(space, &triple[i].vector, &triple[j].vector)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Basis (as coordinate vectors) of the span of group averages of `basis`.
fn invariant_subspace(lat: &Lattice, basis: &[FockState], group: &[&Matrix]) -> Vec<Vec<Scalar>> {
    let order = int(group.len() as i64);
    let mut rows = Vec::new();
    for s in basis {
        let v = FockVector::from_state(s.clone());
        let mut avg = FockVector::zero();
        for m in group {
            avg = avg.add(&v.transform(lat, m));
        }
        rows.push(avg.scale(&(Scalar::one() / &order)).coordinates(basis).expect("isometries preserve degree"));
    }
    let ech = Matrix::from_rows(rows).echelon();
    (0..ech.pivots.len()).map(|r| ech.matrix.row(r).to_vec()).collect()
}

fn second_vector_candidates(
    space: &FockSpace,
    basis: &[FockState],
    ansatz: &[Vec<Scalar>],
    w1: &ConformalVector,
    omega: &FockVector,
    charge: &Scalar,
) -> Result<Vec<FockVector>> {
    let vectors: Vec<FockVector> = ansatz.iter().map(|c| FockVector::from_coordinates(basis, c)).collect();
    let vac = FockVector::vacuum(space.rank());
    let vac_state = vac.terms().next().expect("vacuum").0.clone();
    // Commuting Virasoro algebras: w^1_n w^2 = 0 for n = 0..3. The images
    // have distinct degrees, so their sum loses nothing.
    let mut images = Vec::new();
    for v in &vectors {
        let mut img = FockVector::zero();
        for n in 0..=3 {
            img = img.add(&space.vertex_mode(&w1.vector, &int(n), v)?);
        }
        images.push((img, space.vertex_mode(omega, &int(3), v)?.coeff(&vac_state)));
    }
    let mut states: Vec<FockState> = images.iter().flat_map(|(img, _)| img.terms().map(|(s, _)| s.clone())).collect();
    states.sort();
    states.dedup();
    let n = states.len();
    let cols: Vec<Vec<Scalar>> = images
        .iter()
        .map(|(img, vac_part)| {
            let mut col = img.coordinates(&states).expect("states collected above");
            col.push(vac_part.clone());
            col
        })
        .collect();
    let a = Matrix::from_columns(&cols, n + 1);
    let mut rhs = vec![Scalar::zero(); n];
    rhs.push(charge / int(2));
    let Some((p, kernel)) = a.solve(&rhs) else { return Ok(Vec::new()) };
    let combine = |t: &[Scalar]| {
        let mut out = FockVector::zero();
        for (c, v) in t.iter().zip(&vectors) {
            out.add_scaled(v, c);
        }
        out
    };
    let p = combine(&p);
    let ks: Vec<FockVector> = kernel.iter().map(|k| combine(k)).collect();
    idempotent_points(space, basis, p, ks)
}

/// Points `e` of the affine family `p + sum_j z_j k_j` with `e_1 e = 2 e`.
///
/// Combinations of the coordinate equations that cancel every quadratic
/// monomial give linear equations in `z`; these shrink the family until it
/// is a point or a line, where the remaining quadratic is solved exactly.
fn idempotent_points(
    space: &FockSpace,
    basis: &[FockState],
    p: FockVector,
    ks: Vec<FockVector>,
) -> Result<Vec<FockVector>> {
    let g = |a: &FockVector, b: &FockVector| griess_product(space, a, b);
    let coords = |v: &FockVector| v.coordinates(basis).expect("degree 2");
    let d = ks.len();
    let constant = coords(&g(&p, &p)?.sub(&p.scale(&int(2))));
    if d == 0 {
        return Ok(if constant.iter().all(Zero::is_zero) { vec![p] } else { Vec::new() });
    }
    let mut linear = Vec::new();
    for k in &ks {
        linear.push(coords(&g(&p, k)?.add(&g(k, &p)?).sub(&k.scale(&int(2)))));
    }
    let mut quadratic = Vec::new();
    for j in 0..d {
        for l in j..d {
            let q = if j == l { g(&ks[j], &ks[j])? } else { g(&ks[j], &ks[l])?.add(&g(&ks[l], &ks[j])?) };
            quadratic.push(coords(&q));
        }
    }
    let m = basis.len();
    let qt = Matrix::from_rows(quadratic.clone());
    let combos = qt.kernel();
    let dot = |y: &[Scalar], v: &[Scalar]| y.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
    let rows: Vec<Vec<Scalar>> = combos.iter().map(|y| linear.iter().map(|l| dot(y, l)).collect()).collect();
    let rhs: Vec<Scalar> = combos.iter().map(|y| -dot(y, &constant)).collect();
    if !rows.is_empty() {
        let lin = Matrix::from_rows(rows);
        let Some((z0, free)) = lin.solve(&rhs) else { return Ok(Vec::new()) };
        if free.len() < d {
            let shift = |z: &[Scalar]| {
                let mut out = FockVector::zero();
                for (c, k) in z.iter().zip(&ks) {
                    out.add_scaled(k, c);
                }
                out
            };
            let p = p.add(&shift(&z0));
            let ks = free.iter().map(|z| shift(z)).collect();
            return idempotent_points(space, basis, p, ks);
        }
    }
    if d > 1 {
        return normal_form_points(basis, &p, &ks, &quadratic, &linear, &constant);
    }
    let (c2, c1, c0) = (&quadratic[0], &linear[0], &constant);
    let Some(roots) = (0..m).find_map(|i| quadratic_roots(&c2[i], &c1[i], &c0[i])) else {
        return Err(Error::SearchFailure("idempotent condition is degenerate on the ansatz line".into()));
    };
    Ok(roots
        .into_iter()
        .filter(|t| (0..m).all(|i| (&c2[i] * t + &c1[i]) * t + &c0[i] == Scalar::zero()))
        .map(|t| p.add(&ks[0].scale(&t)))
        .collect())
}

/// Solves the quadratic system when its quadratic part has full rank: every
/// monomial `z_j z_l` is then a linear function of `1, z_1, ..., z_d`, and the
/// solutions are read off the eigenvectors of multiplication by `z_1` on that
/// basis. Candidates are verified exactly against all equations.
fn normal_form_points(
    basis: &[FockState],
    p: &FockVector,
    ks: &[FockVector],
    quadratic: &[Vec<Scalar>],
    linear: &[Vec<Scalar>],
    constant: &[Scalar],
) -> Result<Vec<FockVector>> {
    let d = ks.len();
    let m = basis.len();
    let nq = quadratic.len();
    let fail = |why: &str| Error::SearchFailure(format!("idempotent system on a {d}-dimensional family: {why}"));
    // Q x = -(L z + c) where x runs over the monomials z_j z_l, j <= l.
    let q = Matrix::from_columns(quadratic, m);
    if q.rank() < nq {
        return Err(fail("quadratic part is rank deficient"));
    }
    // Express each monomial through 1, z_1..z_d: pick nq independent rows.
    let pivots = Matrix::from_columns(&(0..m).map(|i| q.row(i).to_vec()).collect::<Vec<_>>(), nq).echelon().pivots;
    let sub = Matrix::from_rows(pivots.iter().map(|&i| q.row(i).to_vec()).collect());
    let inv = sub.inverse().expect("independent rows");
    // rhs[r] as a vector over (1, z_1, ..., z_d)
    let rhs: Vec<Vec<Scalar>> = pivots
        .iter()
        .map(|&i| {
            let mut v = vec![-constant[i].clone()];
            v.extend(linear.iter().map(|l| -l[i].clone()));
            v
        })
        .collect();
    let monomial = |j: usize, l: usize| {
        let (j, l) = if j <= l { (j, l) } else { (l, j) };
        let idx = (0..j).map(|a| d - a).sum::<usize>() + (l - j);
        let mut v = vec![Scalar::zero(); d + 1];
        for (r, row) in rhs.iter().enumerate() {
            for (t, x) in row.iter().enumerate() {
                v[t] += &inv[(idx, r)] * x;
            }
        }
        v
    };
    // Row b: z_1 * basis_b in terms of the basis.
    let mut mult = Matrix::zeros(d + 1, d + 1);
    mult[(0, 1)] = Scalar::one();
    for b in 1..=d {
        let v = monomial(0, b - 1);
        for t in 0..=d {
            mult[(b, t)] = v[t].clone();
        }
    }
    let roots =
        rational_roots(&mult.characteristic_polynomial()).ok_or_else(|| fail("characteristic polynomial too large"))?;
    let mut out = Vec::new();
    for lambda in roots {
        let kernel = mult.shift(&lambda).kernel();
        if kernel.len() != 1 {
            return Err(fail("repeated eigenvalue"));
        }
        let v = &kernel[0];
        if v[0].is_zero() {
            continue;
        }
        let z: Vec<Scalar> = v[1..].iter().map(|x| x / &v[0]).collect();
        let mut e = p.clone();
        for (c, k) in z.iter().zip(ks) {
            e.add_scaled(k, c);
        }
        out.push((z, e));
    }
    // exact verification against every coordinate equation
    let mut verified = Vec::new();
    for (z, e) in out {
        let ok = (0..m).all(|i| {
            let mut acc = constant[i].clone();
            for j in 0..d {
                acc += &linear[j][i] * &z[j];
            }
            let mut idx = 0;
            for j in 0..d {
                for l in j..d {
                    acc += &quadratic[idx][i] * &z[j] * &z[l];
                    idx += 1;
                }
            }
            acc.is_zero()
        });
        if ok {
            verified.push(e);
        }
    }
    Ok(verified)
}

/// Rational roots of `a t^2 + b t + c`, or `None` if all three vanish.
fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Vec<Scalar>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { None } else { Some(Vec::new()) };
        }
        return Some(vec![-c / b]);
    }
    let disc = b * b - int(4) * a * c;
    let Some(root) = rational_sqrt(&disc) else { return Some(Vec::new()) };
    let two_a = int(2) * a;
    let mut out = vec![(-b - &root) / &two_a, (-b + &root) / &two_a];
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> FockSpace {
        FockSpace::new(Lattice::sqrt2_a2(), int(3))
    }

    #[test]
    fn virasoro_of_rank_two() {
        let s = space();
        let omega = virasoro_vector(s.lattice());
        assert_eq!(conformal_check(&s, &omega).unwrap(), Some(int(2)));
        let x = FockVector::heisenberg_generator(&CosetVector::basis(2, 0));
        assert_eq!(s.vertex_mode(&omega, &int(1), &x).unwrap(), x);
        assert!(s.vertex_mode(&omega, &int(0), &FockVector::vacuum(2)).unwrap().is_zero());
    }

    #[test]
    fn rank_one_virasoro() {
        let lat = Lattice::new(Matrix::from_rows(vec![vec![int(4)]])).unwrap();
        let s = FockSpace::new(lat, int(3));
        let omega = virasoro_vector(s.lattice());
        assert_eq!(omega.len(), 1);
        assert_eq!(conformal_check(&s, &omega).unwrap(), Some(int(1)));
    }

    #[test]
    fn non_conformal_inputs() {
        let s = space();
        let x = CosetVector::basis(2, 0);
        let sq = s.heisenberg_mode(&x, -1, &FockVector::heisenberg_generator(&x));
        assert_eq!(conformal_check(&s, &sq).unwrap(), None);
        assert_eq!(conformal_check(&s, &FockVector::zero()).unwrap(), None);
    }

    #[test]
    fn ising_seeds_have_charge_one_half() {
        let s = space();
        for w in ising_seeds(s.lattice()) {
            assert_eq!(conformal_check(&s, &w).unwrap(), Some(rat(1, 2)));
        }
    }

    #[test]
    fn griess_unit() {
        let s = space();
        let omega = virasoro_vector(s.lattice());
        for st in graded_basis(s.lattice(), &CosetVector::zero(2), &int(2)) {
            let u = FockVector::from_state(st);
            assert_eq!(griess_product(&s, &omega, &u).unwrap(), u.scale(&int(2)));
        }
    }

    #[test]
    fn quadratic() {
        assert_eq!(quadratic_roots(&int(1), &int(-3), &int(2)), Some(vec![int(1), int(2)]));
        assert_eq!(quadratic_roots(&int(1), &int(0), &int(-2)), Some(vec![]));
        assert_eq!(quadratic_roots(&int(0), &int(0), &int(0)), None);
    }
}

#[cfg(test)]
mod search_tests {
    use super::*;

    #[test]
    fn triple_search_finds_the_decomposition() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        let [w1, w2, w3] = conformal_triple_search(&s).unwrap();
        assert_eq!(w1.central_charge, rat(1, 2));
        assert_eq!(w2.central_charge, rat(7, 10));
        assert_eq!(w3.central_charge, rat(4, 5));
        assert_eq!(w1.vector, ising_seeds(s.lattice())[0]);
        let omega = virasoro_vector(s.lattice());
        assert_eq!(w1.vector.add(&w2.vector).add(&w3.vector), omega);
        let mut roots = FockVector::zero();
        for v in s.lattice().coset_vectors(&CosetVector::zero(2), &int(2)) {
            if !v.is_zero() {
                roots = roots.add(&FockVector::exponential(v));
            }
        }
        assert_eq!(w3.vector, omega.scale(&rat(2, 5)).add(&roots.scale(&rat(1, 5))));
    }

    #[test]
    fn lowest_m1_vector_is_primary() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), int(3));
        let [w1, _, w3] = conformal_triple_search(&s).unwrap();
        let v = crate::vertex::evidence::standard_vectors()[1].clone();
        assert_eq!(highest_weight_check(&s, &w3, &v).unwrap(), Some(rat(2, 3)));
        assert_eq!(highest_weight_check(&s, &w1, &v).unwrap(), Some(int(0)));
        let omega = virasoro_vector(s.lattice());
        assert_eq!(highest_weight_check(&s, &w3, &omega).unwrap(), None);
        assert!(virasoro_spot_check(&s, &w3, &[FockVector::vacuum(2), v]).unwrap());
    }
}
