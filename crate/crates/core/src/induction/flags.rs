//! Full flags over F_q and the flag-sum model of parabolic induction.

use std::collections::{HashMap, HashSet};

use crate::arith::{CycNum, Elem, FieldTower, Level, RootSum};
use crate::error::{Error, Result};
use crate::mirabolic::{Echelon, Mat};
use crate::torus::{hyper_sign, hyper_table, WeightSystem};

/// A full flag, stored as the reduced echelon basis of each F_i together
/// with an adapted basis h (first i columns span F_i).
#[derive(Clone, Debug)]
pub struct FlagPoint {
    spaces: Vec<Echelon>,
    h: Mat,
}

impl FlagPoint {
    pub fn basis(&self) -> &Mat {
        &self.h
    }

    /// Canonical key: the reduced echelon bases of F_1 ⊂ … ⊂ F_{n-1}.
    pub fn key(&self) -> Vec<Vec<u32>> {
        self.spaces
            .iter()
            .map(|s| s.basis().iter().flatten().map(|e| e.raw()).collect())
            .collect()
    }

    /// Whether g F_i ⊂ F_i for every i.
    pub fn is_stable(&self, k: &Level, g: &Mat) -> bool {
        let n = g.rows();
        (0..n - 1).all(|i| {
            self.spaces[i].contains(k, &g.mul_vec(k, &self.h.col(i)))
        })
    }
}

/// All F_q-rational full flags of F_q^n, enumerated level by level with
/// deduplication on the canonical key.
pub fn all_flags(k: &Level, n: usize, cap: u64) -> Result<Vec<FlagPoint>> {
    let qs = k.size();
    let count: u64 = (1..=n as u32).map(|i| (qs.pow(i) - 1) / (qs - 1)).product();
    if count > cap {
        return Err(Error::CapExceeded { what: format!("flags of F_q^{n}"), size: count, cap });
    }
    let vectors: Vec<Vec<Elem>> = crate::mirabolic::all_rows(k, n);
    let mut layer: Vec<(Vec<Echelon>, Vec<Vec<Elem>>)> = vec![(Vec::new(), Vec::new())];
    for _ in 0..n - 1 {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (spaces, cols) in &layer {
            let top = spaces.last().cloned().unwrap_or_else(|| Echelon::new(n));
            for v in &vectors {
                let mut s = top.clone();
                if !s.insert(k, v) {
                    continue;
                }
                let mut key: Vec<Vec<Elem>> = spaces.iter().flat_map(|e| e.basis()).collect();
                key.extend(s.basis());
                if !seen.insert(key) {
                    continue;
                }
                let mut sp = spaces.clone();
                sp.push(s);
                let mut c = cols.clone();
                c.push(v.clone());
                next.push((sp, c));
            }
        }
        layer = next;
    }
    Ok(layer
        .into_iter()
        .map(|(spaces, mut cols)| {
            let mut full = spaces.last().cloned().unwrap_or_else(|| Echelon::new(n));
            let last = vectors.iter().find(|v| full.insert(k, v)).expect("complement").clone();
            cols.push(last);
            FlagPoint { spaces, h: Mat::from_cols(&cols) }
        })
        .collect())
}

/// Lookup of t_Ψ on T(F_q) from one full enumeration.
pub struct HyperLookup {
    table: HashMap<Vec<u32>, RootSum>,
    sign: i64,
    p: u32,
}

impl HyperLookup {
    pub fn new(tower: &FieldTower, ws: &WeightSystem) -> Self {
        HyperLookup { table: hyper_table(tower, ws), sign: hyper_sign(ws), p: tower.p() as u32 }
    }

    pub fn get(&self, t: &[Elem]) -> CycNum {
        let key: Vec<u32> = t.iter().map(|x| x.log().expect("unit")).collect();
        match self.table.get(&key) {
            Some(s) => s.to_cyc().scale_int(self.sign),
            None => CycNum::zero(self.p),
        }
    }
}

/// The g-stable flags.
pub fn flag_fixed_points<'f>(k: &Level, flags: &'f [FlagPoint], g: &Mat) -> Vec<&'f FlagPoint> {
    flags.iter().filter(|f| f.is_stable(k, g)).collect()
}

/// (−1)^d Σ over g-stable flags of t_Ψ at the diagonal of h^{-1} g h, with
/// d = n² − n even.
pub fn induced_trace(k: &Level, flags: &[FlagPoint], hyper: &HyperLookup, g: &Mat) -> Result<CycNum> {
    let mut acc = CycNum::zero(hyper.p);
    for f in flag_fixed_points(k, flags, g) {
        let b = f.h.inverse(k)?.mul(k, g).mul(k, &f.h);
        let t: Vec<Elem> = (0..g.rows()).map(|i| b.get(i, i)).collect();
        acc = &acc + &hyper.get(&t);
    }
    Ok(acc)
}
