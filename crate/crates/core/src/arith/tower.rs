//! Towers of finite fields F_q ⊂ F_{q^2} ⊂ … ⊂ F_{q^M} with full
//! discrete-log tables.
//!
//! Elements are stored by discrete logarithm with respect to the chosen
//! generator of their level; zero is a sentinel. Multiplication is addition
//! of logs, addition goes through a Zech table, and the absolute trace to
//! F_p is a table lookup. Generators are norm-compatible: the generator of
//! F_{q^b} raised to (q^b-1)/(q^a-1) is the generator of F_{q^a} whenever
//! a | b, which makes embeddings and norms pure log arithmetic.

use serde::Serialize;

use super::numth::{factor, is_prime};
use crate::error::{Error, Result};

/// Default bound on the total number of field elements tabulated by a tower.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// A field element, represented by its discrete log (or the zero sentinel).
/// Elements are only meaningful together with the [`Level`] they belong to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(u32::MAX);
    pub const ONE: Elem = Elem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    /// Discrete log, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }
}

/// One level F_{q^m} of the tower.
pub struct Level {
    m: u32,
    p: u32,
    /// degree over F_p
    deg: u32,
    order: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    trace: Vec<u8>,
}

impl Level {
    /// Extension degree over F_q.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// The characteristic p.
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree_over_fp(&self) -> u32 {
        self.deg
    }

    pub fn size(&self) -> u64 {
        self.order as u64 + 1
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Monic defining polynomial over F_p, constant term first.
    pub fn defining_poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn gen(&self) -> Elem {
        Elem(1 % self.order)
    }

    #[inline]
    pub fn from_log(&self, k: u64) -> Elem {
        Elem((k % self.order as u64) as u32)
    }

    /// The image of an integer under Z → F_p ⊂ F_{q^m}.
    pub fn from_int(&self, k: i64) -> Elem {
        let d = k.rem_euclid(self.p as i64) as usize;
        Elem(self.log[d])
    }

    /// Element with the given coordinates in the power basis of the
    /// defining polynomial (constant coefficient first).
    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let mut enc = 0usize;
        for &d in digits.iter().rev() {
            enc = enc * self.p as usize + (d % self.p) as usize;
        }
        Elem(self.log[enc])
    }

    pub fn to_digits(&self, x: Elem) -> Vec<u32> {
        let mut enc = self.encode(x);
        let mut out = Vec::with_capacity(self.deg as usize);
        for _ in 0..self.deg {
            out.push(enc % self.p);
            enc /= self.p;
        }
        out
    }

    /// Integer value of an element of the prime field.
    pub fn to_int(&self, x: Elem) -> Option<u32> {
        let enc = self.encode(x);
        if enc < self.p {
            Some(enc)
        } else {
            None
        }
    }

    #[inline]
    fn encode(&self, x: Elem) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.0 as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = a.0 as u64 + b.0 as u64;
        Elem((s % self.order as u64) as u32)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            None
        } else {
            Some(Elem((self.order - a.0) % self.order))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if a.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let n = self.order as i128;
        let k = (a.0 as i128 * e as i128).rem_euclid(n);
        Elem(k as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + self.order - a.0 };
        let z = self.zech[d as usize];
        if z == u32::MAX {
            Elem::ZERO
        } else {
            let s = a.0 as u64 + z as u64;
            Elem((s % self.order as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            a
        } else {
            let s = a.0 as u64 + self.order as u64 / 2;
            Elem((s % self.order as u64) as u32)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Absolute trace Tr_{F_{q^m}/F_p}, as an integer in [0, p).
    #[inline]
    pub fn trace_fp(&self, a: Elem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.trace[a.0 as usize] as u32
        }
    }

    /// All elements: zero first, then g^0, g^1, ….
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain(self.units())
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem)
    }

    /// Multiplicative order of a unit.
    pub fn elem_order(&self, a: Elem) -> Option<u64> {
        let k = a.log()? as u64;
        Some(self.order as u64 / super::numth::gcd(k, self.order as u64))
    }
}

/// Maps between levels offered by [`FieldTower::field_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMap {
    /// x ↦ x^{q^i}
    Frobenius(u32),
    TraceToFq,
    TraceToFp,
    NormToFq,
}

/// The image of a [`FieldTower::field_map`] call: either an element of some
/// level or an integer in F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapValue {
    Elem { level: u32, value: Elem },
    Prime(u32),
}

pub struct FieldTower {
    p: u64,
    f: u32,
    q: u64,
    levels: Vec<Level>,
}

/// Reproducibility record of a tower: defining polynomials per level.
#[derive(Serialize)]
pub struct TowerRecord {
    pub p: u64,
    pub f: u32,
    pub levels: Vec<LevelRecord>,
}

#[derive(Serialize)]
pub struct LevelRecord {
    pub m: u32,
    pub size: u64,
    pub defining_poly: Vec<u32>,
}

/// Build F_q, F_{q^2}, …, F_{q^max_level} with q = p^f.
pub fn build_tower(p: u64, f: u32, max_level: u32) -> Result<FieldTower> {
    build_tower_with_cap(p, f, max_level, DEFAULT_CAP)
}

pub fn build_tower_with_cap(p: u64, f: u32, max_level: u32, cap: u64) -> Result<FieldTower> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 || max_level == 0 {
        return Err(Error::InvalidArgument("tower degrees must be positive".into()));
    }
    let mut total: u64 = 0;
    for m in 1..=max_level {
        let size = (p as f64).powi((f * m) as i32);
        if size > cap as f64 || total + size as u64 > cap {
            return Err(Error::CapExceeded {
                what: format!("F_{p}^{}", f * m),
                size: size.min(u64::MAX as f64) as u64,
                cap,
            });
        }
        total += size as u64;
    }
    let q = p.pow(f);
    let mut levels: Vec<Level> = Vec::new();
    for m in 1..=max_level {
        let lv = build_level(p as u32, f, m, &levels)?;
        levels.push(lv);
    }
    Ok(FieldTower { p, f, q, levels })
}

// Dense polynomials over F_p, constant term first.
fn poly_mulmod(a: &[u32], b: &[u32], modp: &[u32], p: u32) -> Vec<u32> {
    let d = modp.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    let mut r: Vec<u64> = prod.iter().map(|c| c % p64).collect();
    for i in (d..r.len()).rev() {
        let c = r[i] % p64;
        if c == 0 {
            continue;
        }
        r[i] = 0;
        for (j, &mj) in modp[..d].iter().enumerate() {
            let t = c * mj as u64 % p64;
            r[i - d + j] = (r[i - d + j] + p64 - t) % p64;
        }
    }
    r.truncate(d);
    r.resize(d, 0);
    r.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(base: &[u32], mut e: u64, modp: &[u32], p: u32) -> Vec<u32> {
    let d = modp.len() - 1;
    let mut acc = vec![0u32; d];
    acc[0] = 1 % p;
    let mut b = base.to_vec();
    b.resize(d, 0);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modp, p);
        }
        b = poly_mulmod(&b, &b, modp, p);
        e >>= 1;
    }
    acc
}

fn is_one(v: &[u32]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// Evaluate `poly` (coefficients in F_p) at `y` in F_p[x]/modp.
fn poly_eval_mod(poly: &[u32], y: &[u32], modp: &[u32], p: u32) -> Vec<u32> {
    let d = modp.len() - 1;
    let mut acc = vec![0u32; d];
    for &c in poly.iter().rev() {
        acc = poly_mulmod(&acc, y, modp, p);
        acc[0] = (acc[0] + c) % p;
    }
    acc
}

fn build_level(p: u32, f: u32, m: u32, lower: &[Level]) -> Result<Level> {
    let deg = f * m;
    let order64 = (p as u64).pow(deg) - 1;
    let order = order64 as u32;
    let primes: Vec<u64> = factor(order64).into_iter().map(|(l, _)| l).collect();
    let mut x = vec![0u32; deg as usize];
    if deg > 1 {
        x[1] = 1;
    }
    let total = (p as u64).pow(deg);
    let mut chosen: Option<Vec<u32>> = None;
    'cand: for idx in 0..total {
        // c_0 is the most significant digit of idx
        let mut poly = vec![0u32; deg as usize + 1];
        let mut t = idx;
        for i in (0..deg as usize).rev() {
            poly[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        poly[deg as usize] = 1;
        if poly[0] == 0 {
            continue;
        }
        let root: Vec<u32> = if deg == 1 {
            vec![(p - poly[0]) % p]
        } else {
            x.clone()
        };
        // the root must have order exactly p^deg - 1
        if !is_one(&poly_powmod(&root, order64, &poly, p)) {
            continue;
        }
        for &l in &primes {
            if is_one(&poly_powmod(&root, order64 / l, &poly, p)) {
                continue 'cand;
            }
        }
        for a in 1..m {
            if !m.is_multiple_of(a) {
                continue;
            }
            let sub = &lower[a as usize - 1];
            let e = order64 / sub.order as u64;
            let y = poly_powmod(&root, e, &poly, p);
            if poly_eval_mod(&sub.poly, &y, &poly, p).iter().any(|&c| c != 0) {
                continue 'cand;
            }
        }
        chosen = Some(poly);
        break;
    }
    let poly = chosen.ok_or(Error::NoCompatiblePolynomial { p: p as u64, degree: deg })?;

    let size = order as usize + 1;
    let d = deg as usize;
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![u32::MAX; size];
    let mut digits = vec![0u32; d];
    digits[0] = 1;
    let pw: Vec<u32> = (0..d).map(|i| p.pow(i as u32)).collect();
    for k in 0..order as usize {
        let enc: u32 = digits.iter().zip(&pw).map(|(a, b)| a * b).sum();
        exp[k] = enc;
        log[enc as usize] = k as u32;
        // multiply by the root x
        if d == 1 {
            digits[0] = (digits[0] as u64 * ((p - poly[0]) % p) as u64 % p as u64) as u32;
        } else {
            let top = digits[d - 1];
            for i in (1..d).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for i in 0..d {
                    digits[i] = (digits[i] + (p - top * poly[i] % p)) % p;
                }
            }
        }
    }
    debug_assert!(log.iter().skip(1).all(|&l| l != u32::MAX));

    let add_enc = |a: u32, b: u32| -> u32 {
        let mut out = 0u32;
        let (mut a, mut b) = (a, b);
        for &w in &pw {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    };
    // Zech logs: log(1 + g^k)
    let mut zech = vec![u32::MAX; order as usize];
    for k in 0..order as usize {
        let enc = exp[k];
        let d0 = enc % p;
        let shifted = enc - d0 + (d0 + 1) % p;
        zech[k] = log[shifted as usize];
    }
    // traces of the power basis x^i, then extend linearly
    let frob_sum = |k: u64| -> u32 {
        let mut acc = 0u32;
        let mut e = k;
        for _ in 0..deg {
            acc = add_enc(acc, exp[(e % order64) as usize]);
            e = e * p as u64 % order64;
        }
        acc
    };
    let mut basis_tr = vec![0u32; d];
    for (i, bt) in basis_tr.iter_mut().enumerate() {
        let t = frob_sum(i as u64);
        debug_assert!(t < p);
        *bt = t;
    }
    let mut trace = vec![0u8; order as usize];
    for k in 0..order as usize {
        let mut enc = exp[k];
        let mut t = 0u32;
        for &bt in &basis_tr {
            t += (enc % p) * bt;
            enc /= p;
        }
        trace[k] = (t % p) as u8;
    }
    Ok(Level { m, p, deg, order, poly, exp, log, zech, trace })
}

impl FieldTower {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn level(&self, m: u32) -> Result<&Level> {
        if m == 0 {
            return Err(Error::LevelMissing(0));
        }
        self.levels.get(m as usize - 1).ok_or(Error::LevelMissing(m))
    }

    /// Level 1, the base field F_q.
    pub fn base(&self) -> &Level {
        &self.levels[0]
    }

    pub fn require(&self, m: u32) -> Result<&Level> {
        self.level(m).map_err(|_| Error::TowerTooShallow { needed: m, have: self.max_level() })
    }

    /// Embedding F_{q^a} → F_{q^b}, a | b.
    pub fn embed(&self, a: u32, b: u32, x: Elem) -> Result<Elem> {
        let la = self.level(a)?;
        let lb = self.level(b)?;
        if !b.is_multiple_of(a) {
            return Err(Error::InvalidArgument(format!("{a} does not divide {b}")));
        }
        Ok(match x.log() {
            None => Elem::ZERO,
            Some(k) => lb.from_log(k as u64 * (lb.order() / la.order())),
        })
    }

    /// Inverse of [`embed`](Self::embed): `None` when x is not in the subfield.
    pub fn descend(&self, b: u32, a: u32, x: Elem) -> Result<Option<Elem>> {
        let la = self.level(a)?;
        let lb = self.level(b)?;
        if !b.is_multiple_of(a) {
            return Err(Error::InvalidArgument(format!("{a} does not divide {b}")));
        }
        Ok(match x.log() {
            None => Some(Elem::ZERO),
            Some(k) => {
                let step = lb.order() / la.order();
                if (k as u64).is_multiple_of(step) {
                    Some(la.from_log(k as u64 / step))
                } else {
                    None
                }
            }
        })
    }

    /// x ↦ x^{q^i} on F_{q^m}.
    pub fn frobenius(&self, m: u32, x: Elem, i: u32) -> Result<Elem> {
        let l = self.level(m)?;
        Ok(match x.log() {
            None => Elem::ZERO,
            Some(k) => {
                let qi = super::numth::mod_pow(self.q, i as u64, l.order());
                l.from_log(k as u64 * qi % l.order())
            }
        })
    }

    /// Norm F_{q^b} → F_{q^a}; with compatible generators this is reduction
    /// of the log modulo q^a - 1.
    pub fn norm(&self, b: u32, a: u32, x: Elem) -> Result<Elem> {
        let la = self.level(a)?;
        self.level(b)?;
        if !b.is_multiple_of(a) {
            return Err(Error::InvalidArgument(format!("{a} does not divide {b}")));
        }
        Ok(match x.log() {
            None => Elem::ZERO,
            Some(k) => la.from_log(k as u64),
        })
    }

    /// Trace F_{q^b} → F_{q^a}.
    pub fn trace(&self, b: u32, a: u32, x: Elem) -> Result<Elem> {
        let lb = self.level(b)?;
        if !b.is_multiple_of(a) {
            return Err(Error::InvalidArgument(format!("{a} does not divide {b}")));
        }
        let mut acc = Elem::ZERO;
        for i in 0..b / a {
            acc = lb.add(acc, self.frobenius(b, x, i * a)?);
        }
        Ok(self.descend(b, a, acc)?.expect("trace lands in the subfield"))
    }

    pub fn field_map(&self, m: u32, x: Elem, kind: FieldMap) -> Result<MapValue> {
        Ok(match kind {
            FieldMap::Frobenius(i) => MapValue::Elem { level: m, value: self.frobenius(m, x, i)? },
            FieldMap::TraceToFq => MapValue::Elem { level: 1, value: self.trace(m, 1, x)? },
            FieldMap::NormToFq => MapValue::Elem { level: 1, value: self.norm(m, 1, x)? },
            FieldMap::TraceToFp => MapValue::Prime(self.level(m)?.trace_fp(x)),
        })
    }

    pub fn record(&self) -> TowerRecord {
        TowerRecord {
            p: self.p,
            f: self.f,
            levels: self
                .levels
                .iter()
                .map(|l| LevelRecord { m: l.m, size: l.size(), defining_poly: l.poly.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_relation() {
        let t = build_tower(2, 2, 1).unwrap();
        let l = t.base();
        assert_eq!(l.defining_poly(), &[1, 1, 1]);
        let w = l.gen();
        // ω² = ω + 1
        assert_eq!(l.mul(w, w), l.add(w, Elem::ONE));
        assert_eq!(l.trace_fp(w), 1);
    }

    #[test]
    fn prime_field_generators() {
        let t3 = build_tower(3, 1, 2).unwrap();
        assert_eq!(t3.base().to_int(t3.base().gen()), Some(2));
        let g9 = t3.level(2).unwrap().gen();
        let g3 = t3.base().gen();
        assert_eq!(t3.norm(2, 1, g9).unwrap(), g3);
        assert_eq!(t3.level(2).unwrap().pow(g9, 4), t3.embed(1, 2, g3).unwrap());
        let t5 = build_tower(5, 1, 1).unwrap();
        assert_eq!(t5.base().to_int(t5.base().gen()), Some(3));
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(build_tower(4, 1, 1).err(), Some(Error::NotPrime(4)));
        assert!(matches!(build_tower_with_cap(2, 1, 10, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn addition_matches_digits() {
        let t = build_tower(3, 2, 2).unwrap();
        for m in 1..=2 {
            let l = t.level(m).unwrap();
            for a in l.elements() {
                for b in l.elements().step_by(7) {
                    let da = l.to_digits(a);
                    let db = l.to_digits(b);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                    assert_eq!(l.add(a, b), l.from_digits(&sum));
                    assert_eq!(l.sub(l.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn embeddings_commute() {
        let t = build_tower(2, 1, 6).unwrap();
        for x in t.base().elements() {
            let a = t.embed(2, 6, t.embed(1, 2, x).unwrap()).unwrap();
            let b = t.embed(3, 6, t.embed(1, 3, x).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, t.embed(1, 6, x).unwrap());
        }
    }
}
