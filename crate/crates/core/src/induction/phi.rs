//! Steinberg fibers and the trace function φ_ρ on the regular locus, where
//! it is a W-average of twisted torus traces over the eigenvalue orderings.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{CycNum, Elem, FieldTower, Level};
use crate::error::{Error, Result};
use crate::mirabolic::poly::{self, companion};
use crate::mirabolic::{all_rows, stratum_index, uq_element, Echelon, Mat};
use crate::perm::Perm;
use crate::torus::{cycle_lcm, Action, Torus, TwistedTorusPoint};

/// All orderings t of the root multiset of c with t_{w(i)} = F(t_i), each
/// a point of T_w(F_q). Repeated roots give one geometric point.
pub fn steinberg_fiber(tower: &FieldTower, c: &[Elem], w: &Perm) -> Result<Vec<TwistedTorusPoint>> {
    let n = c.len();
    if w.len() != n {
        return Err(Error::InvalidArgument("w and c have different sizes".into()));
    }
    let big = cycle_lcm(w) as u32;
    let lb = tower.require(big)?;
    let cp = poly::from_charpoly(c);
    let target: Vec<Elem> = cp.iter().map(|&a| tower.embed(1, big, a)).collect::<Result<_>>()?;
    let cycles = w.cycles();
    let mut candidates = Vec::new();
    for cyc in &cycles {
        let l = cyc.len() as u32;
        let lv = tower.require(l)?;
        let coeffs: Vec<Elem> = cp.iter().map(|&a| tower.embed(1, l, a)).collect::<Result<_>>()?;
        candidates.push(lv.units().filter(|&x| poly::eval(lv, &coeffs, x).is_zero()).collect::<Vec<_>>());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; cycles.len()];
    if candidates.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let values: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let pt = TwistedTorusPoint::new(tower, w.clone(), values)?;
        let coords = pt.coords(tower, big)?;
        let prod = coords.iter().fold(vec![Elem::ONE], |acc, &t| poly::mul(lb, &acc, &[lb.neg(t), Elem::ONE]));
        if prod == target {
            out.push(pt);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Whether I, x, …, x^{n−1} are linearly independent.
pub fn is_regular(k: &Level, x: &Mat) -> bool {
    let n = x.rows();
    let mut span = Echelon::new(n * n);
    let mut pw = Mat::identity(n);
    for _ in 0..n {
        if !span.insert(k, pw.entries()) {
            return false;
        }
        pw = pw.mul(k, x);
    }
    true
}

/// Whether c has n distinct roots over F̄_q: gcd(c, c') = 1.
pub fn has_distinct_roots(k: &Level, c: &[Elem]) -> bool {
    let cp = poly::from_charpoly(c);
    let deriv: Vec<Elem> = (1..cp.len())
        .map(|i| (0..i).fold(Elem::ZERO, |acc, _| k.add(acc, cp[i])))
        .collect();
    let mut a = cp;
    let mut b = poly::trim(deriv);
    while !poly::is_zero(&b) {
        let lead = *b.last().expect("nonempty");
        let inv = k.inv(lead).expect("nonzero");
        let monic: Vec<Elem> = b.iter().map(|&x| k.mul(x, inv)).collect();
        let (_, r) = poly::divrem_monic(k, &a, &monic);
        a = monic;
        b = r;
    }
    poly::degree(&a) == 0
}

/// φ_ρ on the regular locus of GL(n), memoized by characteristic polynomial.
/// `kappa` is the global normalization (+1 throughout).
pub struct GammaTrace<'a> {
    torus: &'a Torus<'a>,
    action: Action,
    kappa: i64,
    weyl: Vec<Perm>,
    cache: Mutex<HashMap<Vec<Elem>, CycNum>>,
}

impl<'a> GammaTrace<'a> {
    pub fn new(torus: &'a Torus<'a>) -> Result<Self> {
        Self::with_action(torus, Action::Twisted)
    }

    /// φ built from a different W-action; used for mutation controls.
    pub fn with_action(torus: &'a Torus<'a>, action: Action) -> Result<Self> {
        if torus.ws().shape().len() != 1 {
            return Err(Error::InvalidArgument("the gamma trace is implemented for a single GL(n) factor".into()));
        }
        Ok(GammaTrace { torus, action, kappa: 1, weyl: torus.ws().weyl_group(), cache: Mutex::new(HashMap::new()) })
    }

    pub fn torus(&self) -> &'a Torus<'a> {
        self.torus
    }

    pub fn n(&self) -> usize {
        self.torus.ws().dim()
    }

    pub fn action(&self) -> Action {
        self.action
    }

    fn k(&self) -> &'a Level {
        self.torus.tower().base()
    }

    /// κ (1/|W|) Σ_w Σ_{t ∈ fiber(c, w)} twisted trace at (w, t).
    pub fn by_charpoly(&self, c: &[Elem]) -> Result<CycNum> {
        if let Some(v) = self.cache.lock().expect("poisoned").get(c) {
            return Ok(v.clone());
        }
        let tower = self.torus.tower();
        let mut acc = CycNum::zero(tower.p() as u32);
        for w in &self.weyl {
            for pt in steinberg_fiber(tower, c, w)? {
                acc = &acc + &self.torus.twisted_trace(&pt, self.action)?;
            }
        }
        let scale = BigRational::new(BigInt::from(self.kappa), BigInt::from(self.weyl.len()));
        let v = acc.scale(&scale);
        self.cache.lock().expect("poisoned").insert(c.to_vec(), v.clone());
        Ok(v)
    }

    /// φ_ρ(x) for x regular or regular semisimple.
    pub fn phi_regular(&self, x: &Mat) -> Result<CycNum> {
        let k = self.k();
        let c = x.charpoly(k);
        if !is_regular(k, x) && !has_distinct_roots(k, &c) {
            return Err(Error::NotComputableLocus);
        }
        self.by_charpoly(&c)
    }
}

/// The two routes of a top-stratum coset sum.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetSums {
    /// Σ_{u ∈ U_Q} φ(ux)
    pub direct: CycNum,
    /// Σ over monic c with c(0) = c_x(0) of φ(companion(c))
    pub det_fiber: CycNum,
}

impl CosetSums {
    pub fn routes_agree(&self) -> bool {
        self.direct == self.det_fiber
    }

    pub fn vanishes(&self) -> bool {
        self.direct.is_zero() && self.det_fiber.is_zero()
    }
}

/// Σ_{u ∈ U_Q(F_q)} φ(ux) for x in the top stratum, together with the same
/// number computed as a sum over the determinant fiber of char polys.
pub fn coset_vanishing_top(gamma: &GammaTrace, x: &Mat) -> Result<CosetSums> {
    let k = gamma.k();
    let n = x.rows();
    if n < 2 || stratum_index(k, x) != n {
        return Err(Error::NotTopStratum);
    }
    let mut direct = CycNum::zero(k.p());
    for s in all_rows(k, n - 1) {
        let ux = uq_element(k, &s).mul(k, x);
        direct = &direct + &gamma.phi_regular(&ux)?;
    }
    let an = x.charpoly(k)[n - 1];
    let mut det_fiber = CycNum::zero(k.p());
    for head in all_rows(k, n - 1) {
        let mut c = head;
        c.push(an);
        det_fiber = &det_fiber + &gamma.phi_regular(&companion(k, &c))?;
    }
    Ok(CosetSums { direct, det_fiber })
}

/// Σ over strictly upper unitriangular u of φ(u t) at a diagonal t with
/// distinct entries.
pub fn borel_unipotent_sum(gamma: &GammaTrace, t: &[Elem]) -> Result<CycNum> {
    let k = gamma.k();
    let n = t.len();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let d = Mat::diag(t);
    let mut acc = CycNum::zero(k.p());
    for vals in all_rows(k, slots.len()) {
        let mut u = Mat::identity(n);
        for (&(i, j), &v) in slots.iter().zip(&vals) {
            u.set(i, j, v);
        }
        acc = &acc + &gamma.phi_regular(&u.mul(k, &d))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tower;

    #[test]
    fn fibers_gl2() {
        let tower = build_tower(3, 1, 2).unwrap();
        let k = tower.base();
        let id = Perm::identity(2);
        let swap = Perm::transposition(2, 0, 1);
        // (t-1)(t-2) = t² - 3t + 2 = t² + 2
        let split = vec![Elem::ZERO, k.from_int(2)];
        assert_eq!(steinberg_fiber(&tower, &split, &id).unwrap().len(), 2);
        assert!(steinberg_fiber(&tower, &split, &swap).unwrap().is_empty());
        // t² + 1
        let ell = vec![Elem::ZERO, k.from_int(1)];
        assert!(steinberg_fiber(&tower, &ell, &id).unwrap().is_empty());
        assert_eq!(steinberg_fiber(&tower, &ell, &swap).unwrap().len(), 2);
        // (t-1)² = t² + t + 1
        let unip = vec![k.from_int(1), k.from_int(1)];
        assert_eq!(steinberg_fiber(&tower, &unip, &id).unwrap().len(), 1);
        assert_eq!(steinberg_fiber(&tower, &unip, &swap).unwrap().len(), 1);
    }

    #[test]
    fn regularity() {
        let tower = build_tower(3, 1, 1).unwrap();
        let k = tower.base();
        assert!(!is_regular(k, &Mat::identity(2)));
        assert!(is_regular(k, &Mat::from_ints(k, &[vec![1, 1], vec![0, 1]])));
        assert!(has_distinct_roots(k, &[Elem::ZERO, k.from_int(1)]));
        assert!(!has_distinct_roots(k, &[k.from_int(1), k.from_int(1)]));
    }
}
