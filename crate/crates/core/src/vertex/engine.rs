//! Modes of lattice vertex operators acting on Fock vectors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fock::{FockState, FockVector, Mode};
use super::lattice::{CosetVector, Lattice};
use crate::error::{Error, Result};
use crate::scalar::{int, is_integer, Scalar};

type CacheKey = (FockState, Scalar, FockState);

/// A lattice together with a degree cutoff and a memo of computed modes.
///
/// The memo is an implementation detail: results are pure functions of the
/// inputs, so a space can be shared read-only within one thread.
#[derive(Debug)]
pub struct FockSpace {
    lattice: Lattice,
    cutoff: Scalar,
    cache: RefCell<BTreeMap<CacheKey, FockVector>>,
}

impl FockSpace {
    pub fn new(lattice: Lattice, cutoff: Scalar) -> Self {
        FockSpace { lattice, cutoff, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn cutoff(&self) -> &Scalar {
        &self.cutoff
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Number of memoized mode products.
    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    fn check_degree(&self, d: &Scalar) -> Result<()> {
        if d > &self.cutoff {
            return Err(Error::truncation(d.clone(), self.cutoff.clone()));
        }
        Ok(())
    }

    /// `a(n)` for a vector `a` of `R L`.
    pub fn heisenberg_mode(&self, a: &CosetVector, n: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (s, c) in v.terms() {
            self.heisenberg_on_state(a, n, s, c, &mut out);
        }
        out
    }

    fn heisenberg_on_state(&self, a: &CosetVector, n: i64, s: &FockState, c: &Scalar, out: &mut FockVector) {
        match n {
            0 => out.add_term(s.clone(), c * self.lattice.inner(a, s.exponent())),
            n if n < 0 => {
                let level = u32::try_from(-n).expect("mode level fits in u32");
                for (i, ai) in a.0.iter().enumerate() {
                    if !ai.is_zero() {
                        out.add_term(s.with_mode(Mode { level, index: i }), c * ai);
                    }
                }
            }
            n => {
                // [a(n), e_j(-n)] = n <a, e_j>
                for (pos, m) in s.modes().iter().enumerate() {
                    if i64::from(m.level) != n {
                        continue;
                    }
                    let w = self.lattice.inner_basis(a, m.index);
                    if !w.is_zero() {
                        out.add_term(s.without(pos), c * w * int(n));
                    }
                }
            }
        }
    }

    /// Coefficient of `z^{-n-1}` in `Y(e^a, z) v`.
    pub fn exp_mode(&self, a: &CosetVector, n: &Scalar, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        let half = self.lattice.norm(a) / int(2);
        for (s, c) in v.terms() {
            let d = &half + s.degree(&self.lattice) - n - int(1);
            self.check_degree(&d)?;
            out.add_scaled(&self.exp_on_state(a, n, s), c);
        }
        Ok(out)
    }

    fn exp_on_state(&self, a: &CosetVector, n: &Scalar, s: &FockState) -> FockVector {
        let mut out = FockVector::zero();
        let ab = self.lattice.inner(a, s.exponent());
        // z-power of the S-th annihilation term is j - k_S + <a,beta>
        let base = -n - int(1) - &ab;
        if !is_integer(&base) {
            return out;
        }
        let base = base.to_integer().to_i64().expect("mode fits in i64");
        let target = s.with_exponent(s.exponent().add(a));
        let factors = s.modes();
        let shifts: Vec<Scalar> = factors.iter().map(|f| -self.lattice.inner_basis(a, f.index)).collect();
        let total_level: i64 = factors.iter().map(|f| i64::from(f.level)).sum();
        let max_j = (base + total_level).max(-1);
        if max_j < 0 {
            return out;
        }
        let creation = self.exp_creation_series(a, max_j as u32, s.exponent().rank());
        // Subsets of factor positions taken by E^+; the rest stay.
        let k = factors.len();
        for mask in 0u64..(1u64 << k) {
            let mut coef = Scalar::one();
            let mut removed_level = 0i64;
            let mut kept = Vec::new();
            for (p, f) in factors.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    coef *= &shifts[p];
                    removed_level += i64::from(f.level);
                } else {
                    kept.push(*f);
                }
            }
            if coef.is_zero() {
                continue;
            }
            let j = base + removed_level;
            if j < 0 || j as usize >= creation.len() {
                continue;
            }
            let rest = FockState::new(kept, target.exponent().clone());
            for (modes, sc) in &creation[j as usize] {
                let mut all = rest.modes().to_vec();
                all.extend_from_slice(modes);
                out.add_term(FockState::new(all, rest.exponent().clone()), &coef * sc);
            }
        }
        out
    }

    /// `S_0, ..., S_max` with `exp(sum_m a(-m) z^m / m) = sum_j S_j z^j`, each
    /// a polynomial in creation modes.
    fn exp_creation_series(&self, a: &CosetVector, max: u32, rank: usize) -> Vec<Vec<(Vec<Mode>, Scalar)>> {
        let mut series: Vec<BTreeMap<Vec<Mode>, Scalar>> = vec![BTreeMap::new()];
        series[0].insert(Vec::new(), Scalar::one());
        for j in 1..=max {
            let mut sj: BTreeMap<Vec<Mode>, Scalar> = BTreeMap::new();
            for m in 1..=j {
                for (modes, c) in &series[(j - m) as usize] {
                    for i in 0..rank {
                        if a.0[i].is_zero() {
                            continue;
                        }
                        let mut nm = modes.clone();
                        nm.push(Mode { level: m, index: i });
                        nm.sort_by(|x, y| y.level.cmp(&x.level).then(x.index.cmp(&y.index)));
                        let e = sj.entry(nm).or_insert_with(Scalar::zero);
                        *e += c * &a.0[i] / int(i64::from(j));
                    }
                }
            }
            sj.retain(|_, c| !c.is_zero());
            series.push(sj);
        }
        series.into_iter().map(|m| m.into_iter().collect()).collect()
    }

    /// `u_n v`: the coefficient of `z^{-n-1}` in `Y(u, z) v`.
    pub fn vertex_mode(&self, u: &FockVector, n: &Scalar, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (su, cu) in u.terms() {
            for (sv, cv) in v.terms() {
                let r = self.state_mode(su, n, sv)?;
                out.add_scaled(&r, &(cu * cv));
            }
        }
        Ok(out)
    }

    fn state_mode(&self, u: &FockState, n: &Scalar, v: &FockState) -> Result<FockVector> {
        let lat = &self.lattice;
        let d = u.degree(lat) + v.degree(lat) - n - int(1);
        self.check_degree(&d)?;
        let gamma = u.exponent().add(v.exponent());
        let floor = lat.norm(&gamma) / int(2);
        let excess = &d - &floor;
        if excess.is_negative() || !is_integer(&excess) {
            return Ok(FockVector::zero());
        }
        let key = (u.clone(), n.clone(), v.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = self.state_mode_uncached(u, n, v, &d, &floor)?;
        self.cache.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    fn state_mode_uncached(
        &self,
        u: &FockState,
        n: &Scalar,
        v: &FockState,
        d: &Scalar,
        floor: &Scalar,
    ) -> Result<FockVector> {
        let Some(&first) = u.modes().first() else {
            return Ok(self.exp_on_state(u.exponent(), n, v));
        };
        // u = h(p) w with h = e_index, p = -level.
        let w = u.without(0);
        let h = CosetVector::basis(self.rank(), first.index);
        let p = -i64::from(first.level);
        let vv = FockVector::from_state(v.clone());
        let mut out = FockVector::zero();
        // sum_i C(p,i) (-1)^i h(p-i) (w_{n+i} v), while w_{n+i} v can be nonzero
        let mut i: i64 = 0;
        loop {
            let inner_deg = d - int(i64::from(first.level)) - int(i);
            if &inner_deg < floor {
                break;
            }
            let c = binomial(p, i) * sign(i);
            let inner = self.vertex_mode(&FockVector::from_state(w.clone()), &(n + int(i)), &vv)?;
            out.add_scaled(&self.heisenberg_mode(&h, p - i, &inner), &c);
            i += 1;
        }
        // - sum_i C(p,i) (-1)^{p-i} w_{n+p-i} (h(i) v)
        for i in 0..=i64::from(v.max_level()) {
            let hv = self.heisenberg_mode(&h, i, &vv);
            if hv.is_zero() {
                continue;
            }
            let c = -(binomial(p, i) * sign(p - i));
            let r = self.vertex_mode(&FockVector::from_state(w.clone()), &(n + int(p - i)), &hv)?;
            out.add_scaled(&r, &c);
        }
        Ok(out)
    }
}

fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `C(p, i) = p (p-1) ... (p-i+1) / i!` for any integer `p`.
pub fn binomial(p: i64, i: i64) -> Scalar {
    let mut c = Scalar::one();
    for k in 0..i {
        c = c * int(p - k) / int(k + 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn space() -> FockSpace {
        FockSpace::new(Lattice::sqrt2_a2(), int(4))
    }

    #[test]
    fn heisenberg_examples() {
        let s = space();
        let a = CosetVector::from_fracs(&[(1, 3), (2, 3)]);
        let ea = FockVector::exponential(a.clone());
        let x12 = CosetVector::from_ints(&[1, 2]);
        assert_eq!(s.heisenberg_mode(&x12, 0, &ea), ea.scale(&int(4)));
        let x = CosetVector::from_ints(&[1, 0]);
        assert!(s.heisenberg_mode(&x, 1, &ea).is_zero());
        let xv = FockVector::heisenberg_generator(&x);
        assert_eq!(s.heisenberg_mode(&x, 1, &xv), FockVector::vacuum(2).scale(&int(4)));
    }

    #[test]
    fn exponential_examples() {
        let s = space();
        let vac = FockVector::vacuum(2);
        let x = CosetVector::from_ints(&[1, 0]);
        assert_eq!(s.exp_mode(&x, &int(-1), &vac).unwrap(), FockVector::exponential(x.clone()));
        assert!(s.exp_mode(&x, &rat(-1, 3), &vac).unwrap().is_zero());
        let a = CosetVector::from_fracs(&[(1, 3), (2, 3)]);
        let b = CosetVector::from_fracs(&[(1, 3), (-1, 3)]);
        let r = s.exp_mode(&a, &rat(-1, 3), &FockVector::exponential(b.clone())).unwrap();
        assert_eq!(r, FockVector::exponential(a.add(&b)));
    }

    #[test]
    fn vacuum_is_identity() {
        let s = space();
        let v = FockVector::heisenberg_generator(&CosetVector::from_ints(&[1, 2]));
        let vac = FockVector::vacuum(2);
        assert_eq!(s.vertex_mode(&vac, &int(-1), &v).unwrap(), v);
        assert_eq!(s.vertex_mode(&v, &int(-1), &vac).unwrap(), v);
        let e = FockVector::exponential(CosetVector::from_fracs(&[(1, 3), (2, 3)]));
        assert_eq!(s.vertex_mode(&e, &int(-1), &vac).unwrap(), e);
    }

    #[test]
    fn normal_square_contains_the_square() {
        let s = space();
        let a = CosetVector::from_ints(&[1, 2]);
        let u = FockVector::heisenberg_generator(&a);
        let r = s.vertex_mode(&u, &int(-1), &u).unwrap();
        let sq = s.heisenberg_mode(&a, -1, &u);
        assert_eq!(r, sq);
        assert_eq!(s.vertex_mode(&u, &int(1), &u).unwrap(), FockVector::vacuum(2).scale(&int(12)));
    }

    #[test]
    fn truncation_is_reported() {
        let s = FockSpace::new(Lattice::sqrt2_a2(), rat(1, 3));
        let u = FockVector::heisenberg_generator(&CosetVector::from_ints(&[1, 2]));
        assert!(matches!(s.vertex_mode(&u, &int(-1), &u), Err(Error::Truncation { .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(5, 2), int(10));
    }
}
