//! Univariate polynomials over a tower level, constant coefficient first.

use crate::arith::{Elem, Level};

use super::matrix::Mat;

pub type Poly = Vec<Elem>;

/// t^n + a_1 t^{n-1} + … + a_n from (a_1, …, a_n).
pub fn from_charpoly(a: &[Elem]) -> Poly {
    let mut p: Poly = a.iter().rev().copied().collect();
    p.push(Elem::ONE);
    p
}

/// Inverse of [`from_charpoly`] for a monic polynomial.
pub fn to_charpoly(p: &[Elem]) -> Vec<Elem> {
    let n = p.len() - 1;
    (1..=n).map(|i| p[n - i]).collect()
}

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Elem]) -> usize {
    trim(p.to_vec()).len() - 1
}

pub fn mul(k: &Level, a: &[Elem], b: &[Elem]) -> Poly {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(out)
}

/// Division by a monic polynomial: (quotient, remainder).
pub fn divrem_monic(k: &Level, a: &[Elem], b: &[Elem]) -> (Poly, Poly) {
    let a = trim(a.to_vec());
    let db = b.len() - 1;
    debug_assert_eq!(b[db], Elem::ONE);
    if a.len() <= db {
        return (vec![Elem::ZERO], a);
    }
    let mut r = a.clone();
    let mut quo = vec![Elem::ZERO; a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c.is_zero() {
            continue;
        }
        quo[i - db] = c;
        for j in 0..=db {
            r[i - db + j] = k.sub(r[i - db + j], k.mul(c, b[j]));
        }
    }
    r.truncate(db.max(1));
    (trim(quo), trim(r))
}

pub fn is_zero(p: &[Elem]) -> bool {
    p.iter().all(|x| x.is_zero())
}

pub fn eval(k: &Level, p: &[Elem], x: Elem) -> Elem {
    p.iter().rev().fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

/// p(X) for a square matrix X.
pub fn eval_matrix(k: &Level, p: &[Elem], x: &Mat) -> Mat {
    let n = x.rows();
    let mut acc = Mat::zeros(n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(k, x).add(k, &Mat::identity(n).scale(k, c));
    }
    acc
}

/// All monic polynomials of the given degree.
pub fn all_monic(k: &Level, deg: usize) -> Vec<Poly> {
    let elems: Vec<Elem> = k.elements().collect();
    let s = elems.len();
    let total = s.pow(deg as u32);
    (0..total)
        .map(|mut idx| {
            let mut p = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                p.push(elems[idx % s]);
                idx /= s;
            }
            p.push(Elem::ONE);
            p
        })
        .collect()
}

/// Monic divisors of degree `deg` of a monic polynomial.
pub fn monic_divisors(k: &Level, c: &[Elem], deg: usize) -> Vec<Poly> {
    all_monic(k, deg)
        .into_iter()
        .filter(|d| is_zero(&divrem_monic(k, c, d).1))
        .collect()
}

/// Companion matrix of (a_1, …, a_m): C e_j = e_{j+1}, last column
/// (-a_m, …, -a_1) from top to bottom.
pub fn companion(k: &Level, a: &[Elem]) -> Mat {
    let m = a.len();
    let mut c = Mat::zeros(m, m);
    for j in 0..m.saturating_sub(1) {
        c.set(j + 1, j, Elem::ONE);
    }
    for i in 0..m {
        c.set(i, m - 1, k.neg(a[m - 1 - i]));
    }
    c
}
