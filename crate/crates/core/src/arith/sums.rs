//! The additive character ψ and the elementary character sums built on it.

use super::characters::MultCharacter;
use super::cyclotomic::{CycNum, RootSum};
use super::numth::lcm;
use super::tower::{Elem, FieldTower};
use crate::error::{Error, Result};

/// ψ(x) = ζ_p^{Tr(x)} for x ∈ F_{q^m}.
pub fn psi_eval(tower: &FieldTower, m: u32, x: Elem) -> Result<CycNum> {
    let l = tower.level(m)?;
    Ok(CycNum::root_of_unity(tower.p() as u32, l.trace_fp(x) as i64))
}

/// g(χ) = Σ_{x ≠ 0} χ(x) ψ(x) over the level of χ.
pub fn gauss_sum(tower: &FieldTower, chi: &MultCharacter) -> Result<CycNum> {
    Ok(gauss_root_sum(tower, chi)?.to_cyc())
}

/// Unreduced form of [`gauss_sum`], with conductor lcm(p, ord χ).
pub fn gauss_root_sum(tower: &FieldTower, chi: &MultCharacter) -> Result<RootSum> {
    let l = tower.level(chi.level())?;
    let p = tower.p();
    let n = lcm(p, chi.order()) as u32;
    let mut acc = RootSum::new(n);
    let sp = n as u64 / p;
    let sc = n as u64 / chi.order();
    for x in l.units() {
        let e = chi.value_exp(x).expect("unit");
        acc.add_root(e * sc + l.trace_fp(x) as u64 * sp, 1);
    }
    Ok(acc)
}

/// (-1)^r Σ_{x_1⋯x_r = t} ψ(x_1 + ⋯ + x_r) over F_q^×, by nested loops.
pub fn kloosterman(tower: &FieldTower, t: Elem, r: usize) -> Result<CycNum> {
    if r == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    if t.is_zero() {
        return Err(Error::InvalidArgument("t must be a unit".into()));
    }
    let l = tower.base();
    let p = tower.p() as u32;
    let mut acc = RootSum::new(p);
    fn rec(
        l: &crate::arith::tower::Level,
        remaining: usize,
        prod: Elem,
        sum: Elem,
        t: Elem,
        acc: &mut RootSum,
    ) {
        if remaining == 1 {
            let last = l.div(t, prod).expect("unit");
            acc.add_root(l.trace_fp(l.add(sum, last)) as u64, 1);
            return;
        }
        for x in l.units() {
            rec(l, remaining - 1, l.mul(prod, x), l.add(sum, x), t, acc);
        }
    }
    rec(l, r, Elem::ONE, Elem::ZERO, t, &mut acc);
    let v = acc.to_cyc();
    Ok(if r % 2 == 1 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tower::build_tower;

    #[test]
    fn psi_on_f3() {
        let t = build_tower(3, 1, 1).unwrap();
        let l = t.base();
        assert_eq!(psi_eval(&t, 1, Elem::ZERO).unwrap(), CycNum::one(3));
        assert_eq!(psi_eval(&t, 1, l.from_int(1)).unwrap(), CycNum::root_of_unity(3, 1));
        assert_eq!(psi_eval(&t, 1, l.from_int(2)).unwrap(), CycNum::root_of_unity(3, 2));
    }

    #[test]
    fn small_gauss_sums() {
        let t = build_tower(3, 1, 1).unwrap();
        let triv = MultCharacter::trivial(&t, 1).unwrap();
        assert_eq!(gauss_sum(&t, &triv).unwrap(), CycNum::from_int(1, -1));
        let quad = MultCharacter::new(&t, 1, 1).unwrap();
        let g = gauss_sum(&t, &quad).unwrap();
        let expect = &CycNum::root_of_unity(3, 1) - &CycNum::root_of_unity(3, 2);
        assert_eq!(g, expect);
        assert_eq!(&g * &g, CycNum::from_int(3, -3));
    }

    #[test]
    fn kloosterman_small_values() {
        let t = build_tower(3, 1, 1).unwrap();
        let l = t.base();
        assert_eq!(kloosterman(&t, l.from_int(1), 2).unwrap(), CycNum::from_int(3, -1));
        assert_eq!(kloosterman(&t, l.from_int(2), 2).unwrap(), CycNum::from_int(3, 2));
        let x = l.from_int(2);
        assert_eq!(kloosterman(&t, x, 1).unwrap(), -psi_eval(&t, 1, x).unwrap());
    }
}
