//! The hypergeometric trace function t_Ψ(t) = (-1)^r Σ_{p_λ(x) = t} ψ(Σ x_i)
//! on T(F_q), by direct enumeration of (F_q^×)^r.
//!
//! This path deliberately shares nothing with the fiber tables of
//! [`super::twisted`], so the two can check each other.

use std::collections::HashMap;

use crate::arith::{CycNum, Elem, FieldTower, RootSum};
use crate::error::{Error, Result};

use super::weights::WeightSystem;

fn sign_r(ws: &WeightSystem) -> i64 {
    if ws.r().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Enumerate (F_q^×)^r, calling `visit(image logs, trace exponent)`.
fn enumerate(tower: &FieldTower, ws: &WeightSystem, mut visit: impl FnMut(&[u64], u64)) {
    let base = tower.base();
    let n = base.order();
    let d = ws.dim();
    let r = ws.r();
    // coefficient of log x_s in log t_i, reduced mod q-1
    let coef: Vec<Vec<u64>> = (0..r)
        .map(|s| ws.slot(s).iter().map(|&a| a.rem_euclid(n as i64) as u64).collect())
        .collect();
    let mut logs = vec![0u64; d];
    fn rec(
        s: usize,
        base: &crate::arith::Level,
        coef: &[Vec<u64>],
        logs: &mut Vec<u64>,
        sum: Elem,
        visit: &mut dyn FnMut(&[u64], u64),
    ) {
        if s == coef.len() {
            visit(logs, base.trace_fp(sum) as u64);
            return;
        }
        let n = base.order();
        let saved = logs.clone();
        for x in base.units() {
            let k = x.log().expect("unit") as u64;
            for (i, l) in logs.iter_mut().enumerate() {
                *l = (saved[i] + k * coef[s][i]) % n;
            }
            rec(s + 1, base, coef, logs, base.add(sum, x), visit);
        }
        logs.copy_from_slice(&saved);
    }
    rec(0, base, &coef, &mut logs, Elem::ZERO, &mut visit);
}

/// t_Ψ(t) at one point t ∈ T(F_q).
pub fn hyper_trace(tower: &FieldTower, ws: &WeightSystem, t: &[Elem]) -> Result<CycNum> {
    if t.len() != ws.dim() {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, torus has {}", t.len(), ws.dim())));
    }
    let target: Vec<u64> = t
        .iter()
        .map(|x| x.log().map(u64::from).ok_or_else(|| Error::InvalidArgument("t must be a unit".into())))
        .collect::<Result<_>>()?;
    let mut acc = RootSum::new(tower.p() as u32);
    enumerate(tower, ws, |img, tr| {
        if img == target.as_slice() {
            acc.add_root(tr, 1);
        }
    });
    Ok(acc.to_cyc().scale_int(sign_r(ws)))
}

/// t_Ψ on all of T(F_q) in one pass, keyed by the coordinate logs; points
/// with empty fiber are absent.
pub fn hyper_table(tower: &FieldTower, ws: &WeightSystem) -> HashMap<Vec<u32>, RootSum> {
    let mut table: HashMap<Vec<u32>, RootSum> = HashMap::new();
    let p = tower.p() as u32;
    enumerate(tower, ws, |img, tr| {
        let key: Vec<u32> = img.iter().map(|&k| k as u32).collect();
        table.entry(key).or_insert_with(|| RootSum::new(p)).add_root(tr, 1);
    });
    table
}

/// The sign (-1)^r in front of every hypergeometric sum.
pub fn hyper_sign(ws: &WeightSystem) -> i64 {
    sign_r(ws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_tower, kloosterman, psi_eval};
    use crate::torus::weights::RepSpec;

    #[test]
    fn identity_fiber_for_std() {
        let tower = build_tower(3, 1, 2).unwrap();
        let ws = WeightSystem::from_spec(&[2], &RepSpec::named("std")).unwrap();
        let b = tower.base();
        for a in b.units() {
            for c in b.units() {
                let v = hyper_trace(&tower, &ws, &[a, c]).unwrap();
                assert_eq!(v, psi_eval(&tower, 1, b.add(a, c)).unwrap());
            }
        }
    }

    #[test]
    fn matches_kloosterman_on_gm() {
        let tower = build_tower(3, 1, 1).unwrap();
        let ws = WeightSystem::new(&[1], &[(vec![1], 2)]).unwrap();
        let one = tower.base().from_int(1);
        assert_eq!(hyper_trace(&tower, &ws, &[one]).unwrap(), CycNum::from_int(1, -1));
        assert_eq!(hyper_trace(&tower, &ws, &[one]).unwrap(), kloosterman(&tower, one, 2).unwrap());
    }

    #[test]
    fn sym2_at_q3() {
        // (x²y, yz²) = (1,1) over F_3^×: y = 1 and x, z free, so the fiber is
        // {(x,1,z)} and the value is -Σ ψ(x+1+z)
        let tower = build_tower(3, 1, 1).unwrap();
        let ws = WeightSystem::from_spec(&[2], &RepSpec::named("sym2")).unwrap();
        let b = tower.base();
        let one = b.from_int(1);
        let mut expect = CycNum::zero(3);
        for x in b.units() {
            for z in b.units() {
                expect = &expect - &psi_eval(&tower, 1, b.add(b.add(x, one), z)).unwrap();
            }
        }
        assert_eq!(hyper_trace(&tower, &ws, &[one, one]).unwrap(), expect);
    }
}
