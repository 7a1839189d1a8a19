//! Multiplicative characters of F_{q^m}^×, x ↦ ζ_{q^m-1}^{j·dlog x}.

use super::cyclotomic::{CycNum, RootSum};
use super::numth::gcd;
use super::tower::{Elem, FieldTower};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultCharacter {
    level: u32,
    modulus: u64,
    j: u64,
}

impl MultCharacter {
    pub fn new(tower: &FieldTower, level: u32, j: i64) -> Result<Self> {
        let modulus = tower.level(level)?.order();
        Ok(MultCharacter { level, modulus, j: j.rem_euclid(modulus as i64) as u64 })
    }

    pub fn trivial(tower: &FieldTower, level: u32) -> Result<Self> {
        Self::new(tower, level, 0)
    }

    /// All q^m - 1 characters of the level, ordered by exponent.
    pub fn all(tower: &FieldTower, level: u32) -> Result<Vec<Self>> {
        let n = tower.level(level)?.order();
        Ok((0..n).map(|j| MultCharacter { level, modulus: n, j }).collect())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u64 {
        self.j
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// Order of the character as an element of the character group.
    pub fn order(&self) -> u64 {
        self.modulus / gcd(self.j, self.modulus)
    }

    pub fn conj(&self) -> Self {
        MultCharacter { j: (self.modulus - self.j) % self.modulus, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        MultCharacter { j: (self.j + other.j) % self.modulus, ..*self }
    }

    /// χ(x) as the fraction k/order(χ) of a full turn; `None` at zero.
    pub fn value_exp(&self, x: Elem) -> Option<u64> {
        let k = x.log()? as u64;
        let ord = self.order();
        Some(self.j * k % self.modulus / (self.modulus / ord))
    }

    pub fn eval(&self, x: Elem) -> Option<CycNum> {
        let e = self.value_exp(x)?;
        Some(CycNum::root_of_unity(self.order() as u32, e as i64))
    }

    /// χ∘Norm on F_{q^m}, for m a multiple of the level.
    pub fn lift(&self, tower: &FieldTower, m: u32) -> Result<Self> {
        let big = tower.level(m)?.order();
        assert_eq!(m % self.level, 0);
        Ok(MultCharacter { level: m, modulus: big, j: self.j * (big / self.modulus) % big })
    }

    /// χ(-1).
    pub fn at_minus_one(&self, tower: &FieldTower) -> Result<i64> {
        let l = tower.level(self.level)?;
        let e = self.value_exp(l.from_int(-1)).expect("-1 is a unit");
        Ok(if e == 0 { 1 } else { -1 })
    }

    /// Add `c·χ(x)` into an accumulator whose conductor is a multiple of the
    /// character order.
    pub fn accumulate(&self, acc: &mut RootSum, x: Elem, c: i64) {
        if let Some(e) = self.value_exp(x) {
            let step = acc.conductor() as u64 / self.order();
            acc.add_root(e * step, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tower::build_tower;

    #[test]
    fn character_property() {
        let t = build_tower(5, 1, 2).unwrap();
        let l = t.level(2).unwrap();
        for chi in MultCharacter::all(&t, 2).unwrap().into_iter().step_by(5) {
            for x in l.units().step_by(3) {
                for y in l.units().step_by(4) {
                    let lhs = chi.eval(l.mul(x, y)).unwrap();
                    let rhs = &chi.eval(x).unwrap() * &chi.eval(y).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn quadratic_character_of_minus_one() {
        let t = build_tower(5, 1, 1).unwrap();
        let quad = MultCharacter::new(&t, 1, 2).unwrap();
        assert_eq!(quad.at_minus_one(&t).unwrap(), 1);
        let t3 = build_tower(3, 1, 1).unwrap();
        let quad3 = MultCharacter::new(&t3, 1, 1).unwrap();
        assert_eq!(quad3.at_minus_one(&t3).unwrap(), -1);
    }
}
