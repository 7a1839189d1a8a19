//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element is stored in the power basis 1, ζ, …, ζ^{φ(N)-1} with integer
//! numerators over one positive common denominator, reduced modulo the N-th
//! cyclotomic polynomial. That form is unique, so equality and the zero test
//! are coefficient comparisons. Elements of different conductors are combined
//! by lifting both into Q(ζ_lcm).
//!
//! [`RootSum`] is the unreduced accumulator used in hot loops: an integer
//! count for every exponent in Z/N. Character sums are collected there and
//! reduced once.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::numth::{divisors, euler_phi, gcd, lcm, mobius};

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().expect("poisoned").get(&n) {
        return p.clone();
    }
    // Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}; multiply first, then divide exactly.
    let mut poly: Vec<i128> = vec![1];
    let ds = divisors(n as u64);
    for &d in &ds {
        if mobius(n as u64 / d) == 1 {
            let d = d as usize;
            let mut out = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                out[i + d] += c;
                out[i] -= c;
            }
            poly = out;
        }
    }
    for &d in &ds {
        if mobius(n as u64 / d) == -1 {
            let d = d as usize;
            // divide by x^d - 1
            let mut rem = poly.clone();
            let qlen = rem.len() - d;
            let mut quo = vec![0i128; qlen];
            for i in (d..rem.len()).rev() {
                let c = rem[i];
                if c != 0 {
                    quo[i - d] = c;
                    rem[i - d] += c;
                    rem[i] = 0;
                }
            }
            debug_assert!(rem.iter().all(|&c| c == 0));
            poly = quo;
        }
    }
    let out: Arc<Vec<i64>> = Arc::new(poly.into_iter().map(|c| c as i64).collect());
    debug_assert_eq!(out.len() as u64 - 1, euler_phi(n as u64));
    poly_cache().lock().expect("poisoned").insert(n, out.clone());
    out
}

/// Reduce a polynomial in ζ_n (any length) to the power basis, in i128 with
/// overflow detection.
fn reduce_i128(n: u32, mut v: Vec<i128>) -> Option<Vec<i128>> {
    let nn = n as usize;
    if v.len() > nn {
        let mut folded = vec![0i128; nn];
        for (i, c) in v.into_iter().enumerate() {
            folded[i % nn] = folded[i % nn].checked_add(c)?;
        }
        v = folded;
    }
    let phi_poly = cyclotomic_poly(n);
    let deg = phi_poly.len() - 1;
    for i in (deg..v.len()).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        let base = i - deg;
        for (j, &pj) in phi_poly[..deg].iter().enumerate() {
            if pj != 0 {
                let t = c.checked_mul(pj as i128)?;
                v[base + j] = v[base + j].checked_sub(t)?;
            }
        }
        v[i] = 0;
    }
    v.truncate(deg);
    v.resize(deg, 0);
    Some(v)
}

fn reduce_big(n: u32, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let nn = n as usize;
    if v.len() > nn {
        let mut folded = vec![BigInt::zero(); nn];
        for (i, c) in v.into_iter().enumerate() {
            folded[i % nn] += c;
        }
        v = folded;
    }
    let phi_poly = cyclotomic_poly(n);
    let deg = phi_poly.len() - 1;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        let base = i - deg;
        for (j, &pj) in phi_poly[..deg].iter().enumerate() {
            if pj != 0 {
                v[base + j] -= &c * pj;
            }
        }
    }
    v.truncate(deg);
    v.resize(deg, BigInt::zero());
    v
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(n: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycNum { n, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(n: u32) -> Self {
        let deg = euler_phi(n as u64) as usize;
        CycNum { n, num: vec![BigInt::zero(); deg], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(n: u32, v: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = v.numer().clone();
        Self::from_parts(n, z.num, v.denom().clone())
    }

    /// ζ_n^e.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let e = e.rem_euclid(n as i64) as usize;
        let mut v = vec![0i128; n as usize];
        v[e] = 1;
        let red = reduce_i128(n, v).expect("monomial reduction overflow");
        CycNum { n, num: red.into_iter().map(BigInt::from).collect(), den: BigInt::one() }
    }

    /// Σ_e counts[e] ζ_n^e; `counts.len()` may be any multiple-free length,
    /// exponents are read modulo n.
    pub fn from_counts(n: u32, counts: &[i64]) -> Self {
        let v: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        match reduce_i128(n, v) {
            Some(red) => CycNum { n, num: red.into_iter().map(BigInt::from).collect(), den: BigInt::one() },
            None => {
                let v = counts.iter().map(|&c| BigInt::from(c)).collect();
                CycNum { n, num: reduce_big(n, v), den: BigInt::one() }
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn map_basis(&self, m: u32, map: impl Fn(usize) -> usize) -> CycNum {
        let mut fits = true;
        let mut v = vec![0i128; m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match c.to_i64() {
                Some(x) => {
                    let k = map(i);
                    v[k] += x as i128;
                }
                None => {
                    fits = false;
                    break;
                }
            }
        }
        if fits {
            if let Some(red) = reduce_i128(m, v) {
                return CycNum::from_parts(m, red.into_iter().map(BigInt::from).collect(), self.den.clone());
            }
        }
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[map(i)] += c;
        }
        CycNum::from_parts(m, reduce_big(m, v), self.den.clone())
    }

    /// The same number viewed in Q(ζ_m); requires n | m.
    pub fn lift(&self, m: u32) -> CycNum {
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        self.map_basis(m, |i| i * step)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> CycNum {
        let n = self.n as usize;
        self.map_basis(self.n, |i| (n - i) % n)
    }

    /// The Galois automorphism ζ ↦ ζ^a, gcd(a, n) = 1.
    pub fn galois(&self, a: u64) -> CycNum {
        let n = self.n as u64;
        assert_eq!(gcd(a % n, n), 1, "galois exponent must be a unit");
        self.map_basis(self.n, |i| ((i as u64 * a) % n) as usize)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycNum::from_parts(self.n, num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        let num = self.num.iter().map(|c| c * k).collect();
        CycNum::from_parts(self.n, num, self.den.clone())
    }

    /// Multiplicative inverse, `None` for zero. Uses the norm from Q(x):
    /// x^{-1} = (product of the other distinct conjugates) / N(x).
    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycNum::from_rational(self.n, &r.recip()));
        }
        let n = self.n as u64;
        let mut conjugates: Vec<CycNum> = vec![self.clone()];
        for a in 2..n {
            if gcd(a, n) != 1 {
                continue;
            }
            let s = self.galois(a);
            if !conjugates.iter().any(|c| c.num == s.num && c.den == s.den) {
                conjugates.push(s);
            }
        }
        let mut others = CycNum::one(self.n);
        for c in &conjugates[1..] {
            others = &others * c;
        }
        let norm = (&others * self)
            .as_rational()
            .expect("norm of a cyclotomic element must be rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = CycNum::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the embedding ζ_N ↦ exp(2πi/N).
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.n as u64, b.n as u64) as u32;
            (a.lift(m), b.lift(m))
        }
    }

    fn add_same(a: &CycNum, b: &CycNum, sign: i64) -> CycNum {
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                if sign > 0 {
                    x * &fa + y * &fb
                } else {
                    x * &fa - y * &fb
                }
            })
            .collect();
        CycNum::from_parts(a.n, num, l)
    }

    fn mul_same(a: &CycNum, b: &CycNum) -> CycNum {
        let deg = a.num.len();
        let small = |v: &[BigInt]| -> Option<Vec<i64>> {
            v.iter()
                .map(|c| c.to_i64().filter(|x| x.unsigned_abs() < (1u64 << 40)))
                .collect()
        };
        if let (Some(x), Some(y)) = (small(&a.num), small(&b.num)) {
            let mut prod = vec![0i128; 2 * deg - 1];
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in y.iter().enumerate() {
                    prod[i + j] += xi as i128 * yj as i128;
                }
            }
            if let Some(red) = reduce_i128(a.n, prod) {
                return CycNum::from_parts(
                    a.n,
                    red.into_iter().map(BigInt::from).collect(),
                    &a.den * &b.den,
                );
            }
        }
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, xi) in a.num.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in b.num.iter().enumerate() {
                if !yj.is_zero() {
                    prod[i + j] += xi * yj;
                }
            }
        }
        CycNum::from_parts(a.n, reduce_big(a.n, prod), &a.den * &b.den)
    }

    pub fn to_exact(&self) -> ExactValue {
        ExactValue {
            conductor: self.n,
            coeffs: self
                .coeffs()
                .iter()
                .map(|c| {
                    if c.denom().is_one() {
                        c.numer().to_string()
                    } else {
                        format!("{}/{}", c.numer(), c.denom())
                    }
                })
                .collect(),
        }
    }

    pub fn from_exact(v: &ExactValue) -> Option<CycNum> {
        let deg = euler_phi(v.conductor as u64) as usize;
        if v.coeffs.len() != deg || v.conductor == 0 {
            return None;
        }
        let mut acc = CycNum::zero(v.conductor);
        for (i, s) in v.coeffs.iter().enumerate() {
            let r: BigRational = match s.split_once('/') {
                Some((a, b)) => BigRational::new(a.parse().ok()?, b.parse().ok()?),
                None => BigRational::from_integer(s.parse().ok()?),
            };
            let mut term = CycNum::zero(v.conductor);
            term.num[i] = r.numer().clone();
            term.den = r.denom().clone();
            term.normalize();
            acc = &acc + &term;
        }
        Some(acc)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = CycNum::common(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            terms.push(match i {
                0 => format!("{r}"),
                1 => format!("{r}*z{}", self.n),
                _ => format!("{r}*z{}^{i}", self.n),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            CycNum::add_same(self, rhs, 1)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::add_same(&a, &b, 1)
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            CycNum::add_same(self, rhs, -1)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::add_same(&a, &b, -1)
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            CycNum::mul_same(self, rhs)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::mul_same(&a, &b)
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Lossless serialized form of a [`CycNum`]: power-basis coefficients as
/// reduced fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

/// Unreduced integer combination of N-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    n: u32,
    counts: Vec<i64>,
}

impl RootSum {
    pub fn new(n: u32) -> Self {
        RootSum { n, counts: vec![0; n as usize] }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    #[inline]
    pub fn add_root(&mut self, e: u64, c: i64) {
        let k = (e % self.n as u64) as usize;
        self.counts[k] += c;
    }

    pub fn add_assign(&mut self, other: &RootSum) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Adds `c · ζ^shift · other`, where `other` has a conductor dividing ours.
    pub fn add_scaled(&mut self, other: &RootSum, shift: u64, c: i64) {
        assert_eq!(self.n % other.n, 0);
        let step = (self.n / other.n) as u64;
        for (k, &v) in other.counts.iter().enumerate() {
            if v != 0 {
                self.add_root(k as u64 * step + shift, c * v);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Cyclic convolution of two sums of the same conductor.
    pub fn mul(&self, other: &RootSum) -> RootSum {
        assert_eq!(self.n, other.n);
        let n = self.n as usize;
        let mut out = vec![0i64; n];
        let rhs: Vec<(usize, i64)> = other
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect();
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(j, b) in &rhs {
                let k = if i + j >= n { i + j - n } else { i + j };
                out[k] += a * b;
            }
        }
        RootSum { n: self.n, counts: out }
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::from_counts(self.n, &self.counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u32, 3, 6, 12, 15, 24] {
            let mut acc = CycNum::zero(n);
            for e in 0..n as i64 {
                acc = &acc + &CycNum::root_of_unity(n, e);
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }

    #[test]
    fn zeta3_identity() {
        // (ζ - ζ²)² = -3
        let z = CycNum::root_of_unity(3, 1);
        let z2 = CycNum::root_of_unity(3, 2);
        let d = &z - &z2;
        assert_eq!(&d * &d, CycNum::from_int(3, -3));
    }

    #[test]
    fn lift_and_mixed_conductors() {
        let a = CycNum::root_of_unity(3, 1);
        let b = CycNum::root_of_unity(6, 2);
        assert_eq!(a, b);
        let c = CycNum::root_of_unity(4, 1);
        let prod = &a * &c;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, CycNum::root_of_unity(12, 7));
    }

    #[test]
    fn inverse_and_conj() {
        let x = &CycNum::root_of_unity(7, 1) + &CycNum::from_int(7, 2);
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, CycNum::one(7));
        let z = CycNum::root_of_unity(12, 5);
        assert_eq!(&z * &z.conj(), CycNum::one(12));
        assert!(CycNum::zero(5).inv().is_none());
    }

    #[test]
    fn exact_round_trip() {
        let x = (&CycNum::root_of_unity(8, 3) + &CycNum::from_int(8, 5))
            .scale(&BigRational::new(3.into(), 7.into()));
        let e = x.to_exact();
        assert_eq!(CycNum::from_exact(&e).unwrap(), x);
    }

    #[test]
    fn root_sum_product() {
        let mut a = RootSum::new(5);
        a.add_root(1, 1);
        a.add_root(4, -1);
        let sq = a.mul(&a).to_cyc();
        let direct = {
            let d = &CycNum::root_of_unity(5, 1) - &CycNum::root_of_unity(5, 4);
            &d * &d
        };
        assert_eq!(sq, direct);
    }
}
