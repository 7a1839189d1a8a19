//! Weyl-twisted tori and the twisted stalk traces of the hypergeometric sum.
//!
//! For a Weyl element w and a slot permutation ξ covering it, the fixed
//! locus of ξ∘F on the source torus G_m^r has one free coordinate y_c in
//! F_{q^ℓ} per ξ-cycle c of length ℓ; the other coordinates of the cycle are
//! y_c^{q}, y_c^{q^2}, …. Its image under p_λ is the twisted torus T_w(F_q).
//! A [`FiberTable`] enumerates that whole fixed locus once and buckets the
//! additive character ψ(Σ x_s) by image point, so every twisted trace for
//! the pair (w, ξ) becomes a lookup.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::arith::numth::{lcm, mod_pow};
use crate::arith::{CycNum, Elem, FieldTower, RootSum};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::weights::{cycle_lcm, WeightSystem, WeylLift};

/// A point t of T(F̄_q) with w(F(t)) = t, stored as one value per w-cycle:
/// the value at the cycle's smallest coordinate, in F_{q^ℓ}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedTorusPoint {
    w: Perm,
    values: Vec<Elem>,
}

impl TwistedTorusPoint {
    /// `values[k]` lives in F_{q^ℓ} where ℓ is the length of the k-th cycle
    /// of w (cycles ordered by smallest element).
    pub fn new(tower: &FieldTower, w: Perm, values: Vec<Elem>) -> Result<Self> {
        let cycles = w.cycles();
        if cycles.len() != values.len() {
            return Err(Error::InvalidTwistedPoint(format!(
                "{} cycle values given for {} cycles",
                values.len(),
                cycles.len()
            )));
        }
        for (c, v) in cycles.iter().zip(&values) {
            let l = tower.require(c.len() as u32)?;
            match v.log() {
                None => return Err(Error::InvalidTwistedPoint("coordinates must be units".into())),
                Some(k) if k as u64 >= l.order() => {
                    return Err(Error::InvalidTwistedPoint("value outside its cycle field".into()))
                }
                _ => {}
            }
        }
        Ok(TwistedTorusPoint { w, values })
    }

    /// A point of T(F_q) = T_id(F_q).
    pub fn split(tower: &FieldTower, t: &[Elem]) -> Result<Self> {
        Self::new(tower, Perm::identity(t.len()), t.to_vec())
    }

    pub fn w(&self) -> &Perm {
        &self.w
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// All d coordinates, embedded into level `big`:
    /// t_{w^k(i)} = t_i^{q^k}.
    pub fn coords(&self, tower: &FieldTower, big: u32) -> Result<Vec<Elem>> {
        let mut out = vec![Elem::ZERO; self.w.len()];
        for (c, &v) in self.w.cycles().iter().zip(&self.values) {
            let l = c.len() as u32;
            if !big.is_multiple_of(l) {
                return Err(Error::TowerTooShallow { needed: lcm(big as u64, l as u64) as u32, have: big });
            }
            let x = tower.embed(l, big, v)?;
            for (k, &i) in c.iter().enumerate() {
                out[i] = tower.frobenius(big, x, k as u32)?;
            }
        }
        Ok(out)
    }

    /// Logs of the cycle values, embedded into level `big`.
    pub fn key(&self, tower: &FieldTower, big: u32) -> Result<Vec<u32>> {
        let lb = tower.require(big)?;
        self.w
            .cycles()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| {
                let la = tower.require(c.len() as u32)?;
                let k = v.log().expect("unit") as u64;
                Ok((k * (lb.order() / la.order()) % lb.order()) as u32)
            })
            .collect()
    }

    /// det of the block `range`: product of norms of the cycle values of
    /// cycles inside it, as an element of F_q.
    pub fn det_on(&self, tower: &FieldTower, range: std::ops::Range<usize>) -> Result<Elem> {
        let base = tower.base();
        let mut acc = Elem::ONE;
        for (c, &v) in self.w.cycles().iter().zip(&self.values) {
            if range.contains(&c[0]) {
                acc = base.mul(acc, tower.norm(c.len() as u32, 1, v)?);
            }
        }
        Ok(acc)
    }
}

/// Which W-action is used to build the twisted traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// ι_w = sign_r(ξ)·sign_W(w)·ι'_w
    Twisted,
    /// ι'_w, the plain permutation action
    Untwisted,
    /// ι_w with an extra sign_W(w); a deliberately wrong control
    SignFlipped,
}

impl Action {
    pub fn unit(self, lift: &WeylLift) -> i64 {
        match self {
            Action::Twisted => lift.epsilon,
            Action::Untwisted => 1,
            Action::SignFlipped => lift.epsilon * lift.w.sign(),
        }
    }
}

/// ψ-sums over the ξ∘F-fixed locus of G_m^r, bucketed by image point.
pub struct FiberTable {
    lift: WeylLift,
    level: u32,
    w_cycles: Vec<Vec<usize>>,
    xi_cycles: Vec<Vec<usize>>,
    /// per ξ-cycle c and w-cycle C: log contribution of y_c to t_C at `level`
    coef: Vec<Vec<u64>>,
    sums: HashMap<Vec<u32>, RootSum>,
}

impl FiberTable {
    pub fn build(tower: &FieldTower, ws: &WeightSystem, lift: &WeylLift) -> Result<Self> {
        let level = lcm(cycle_lcm(&lift.w), cycle_lcm(&lift.xi)) as u32;
        let big = tower.require(level)?;
        let n_big = big.order();
        let q = tower.q();
        let w_cycles = lift.w.cycles();
        let xi_cycles = lift.xi.cycles();
        let mut coef = Vec::with_capacity(xi_cycles.len());
        for c in &xi_cycles {
            let lc = tower.require(c.len() as u32)?;
            let e = n_big / lc.order();
            let mut row = Vec::with_capacity(w_cycles.len());
            for wc in &w_cycles {
                let i0 = wc[0];
                let mut acc: i128 = 0;
                for (k, &s) in c.iter().enumerate() {
                    let qk = mod_pow(q, k as u64, n_big) as i128;
                    acc += ws.slot(s)[i0] as i128 * qk;
                }
                let v = (acc.rem_euclid(n_big as i128) as u64) * e % n_big;
                row.push(v);
            }
            coef.push(row);
        }
        let levels: Vec<&crate::arith::Level> = xi_cycles
            .iter()
            .map(|c| tower.require(c.len() as u32))
            .collect::<Result<_>>()?;
        let p = tower.p() as u32;
        let mut sums: HashMap<Vec<u32>, RootSum> = HashMap::new();
        let mut ys = vec![0u64; xi_cycles.len()];
        let mut key = vec![0u32; w_cycles.len()];
        'outer: loop {
            let mut tr = 0u64;
            for (ci, &y) in ys.iter().enumerate() {
                tr += levels[ci].trace_fp(levels[ci].from_log(y)) as u64;
            }
            for (wi, kslot) in key.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (ci, &y) in ys.iter().enumerate() {
                    acc = (acc + y * coef[ci][wi]) % n_big;
                }
                *kslot = acc as u32;
            }
            sums.entry(key.clone()).or_insert_with(|| RootSum::new(p)).add_root(tr, 1);
            for ci in 0..ys.len() {
                ys[ci] += 1;
                if ys[ci] < levels[ci].order() {
                    continue 'outer;
                }
                ys[ci] = 0;
            }
            break;
        }
        Ok(FiberTable { lift: lift.clone(), level, w_cycles, xi_cycles, coef, sums })
    }

    pub fn lift(&self) -> &WeylLift {
        &self.lift
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn xi_cycles(&self) -> &[Vec<usize>] {
        &self.xi_cycles
    }

    pub fn w_cycles(&self) -> &[Vec<usize>] {
        &self.w_cycles
    }

    /// Log contribution of the free coordinate of ξ-cycle `c` to the value
    /// of w-cycle `wc`, at the table level.
    pub fn coefficient(&self, c: usize, wc: usize) -> u64 {
        self.coef[c][wc]
    }

    /// Σ ψ(Σ x_s) over fixed x with p_λ(x) = t (no sign, no unit).
    pub fn raw_sum(&self, tower: &FieldTower, pt: &TwistedTorusPoint) -> Result<Option<&RootSum>> {
        if pt.w() != &self.lift.w {
            return Err(Error::InvalidTwistedPoint("point belongs to another Weyl element".into()));
        }
        Ok(self.sums.get(&pt.key(tower, self.level)?))
    }

    /// Nonzero buckets: image key (logs at the table level) → ψ-sum.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &RootSum)> {
        self.sums.iter()
    }
}

/// Shared context for trace computations on one (tower, weight system).
pub struct Torus<'a> {
    tower: &'a FieldTower,
    ws: &'a WeightSystem,
    tables: Mutex<HashMap<(Perm, Perm), Arc<FiberTable>>>,
}

impl<'a> Torus<'a> {
    pub fn new(tower: &'a FieldTower, ws: &'a WeightSystem) -> Self {
        Torus { tower, ws, tables: Mutex::new(HashMap::new()) }
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn ws(&self) -> &'a WeightSystem {
        self.ws
    }

    pub fn table(&self, lift: &WeylLift) -> Result<Arc<FiberTable>> {
        let key = (lift.w.clone(), lift.xi.clone());
        if let Some(t) = self.tables.lock().expect("poisoned").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(FiberTable::build(self.tower, self.ws, lift)?);
        self.tables.lock().expect("poisoned").insert(key, t.clone());
        Ok(t)
    }

    fn sign_r(&self) -> i64 {
        if self.ws.r().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// (-1)^r Σ_{ξF(x)=x, p_λ(x)=t} ψ(Σ x_s): the trace of ι'-twisted
    /// Frobenius.
    pub fn local_sum(&self, lift: &WeylLift, pt: &TwistedTorusPoint) -> Result<CycNum> {
        let table = self.table(lift)?;
        let p = self.tower.p() as u32;
        Ok(match table.raw_sum(self.tower, pt)? {
            Some(s) => s.to_cyc().scale_int(self.sign_r()),
            None => CycNum::zero(p),
        })
    }

    /// Trace with an explicit lift and choice of action.
    pub fn trace_with(&self, lift: &WeylLift, pt: &TwistedTorusPoint, action: Action) -> Result<CycNum> {
        Ok(self.local_sum(lift, pt)?.scale_int(action.unit(lift)))
    }

    /// ε(w)·(-1)^r·Σ ψ(Σ x_s), with the canonical lift of w.
    pub fn twisted_stalk_trace(&self, pt: &TwistedTorusPoint) -> Result<CycNum> {
        self.twisted_trace(pt, Action::Twisted)
    }

    pub fn twisted_trace(&self, pt: &TwistedTorusPoint, action: Action) -> Result<CycNum> {
        let lift = self.ws.weyl_lift(pt.w())?;
        self.trace_with(&lift, pt, action)
    }

    /// Every point of T_w(F_q), cycle values enumerated by discrete log.
    pub fn twisted_points(&self, w: &Perm) -> Result<Vec<TwistedTorusPoint>> {
        let levels: Vec<&crate::arith::Level> = w
            .cycles()
            .iter()
            .map(|c| self.tower.require(c.len() as u32))
            .collect::<Result<_>>()?;
        let total: u64 = levels.iter().map(|l| l.order()).product();
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut vals = Vec::with_capacity(levels.len());
            for l in &levels {
                vals.push(l.from_log(idx % l.order()));
                idx /= l.order();
            }
            out.push(TwistedTorusPoint { w: w.clone(), values: vals });
        }
        Ok(out)
    }
}
