//! Brute-force Q_1-orbit census on matrices of a fixed characteristic
//! polynomial, and the count predicted by the stratification recursion.
//!
//! A normalized point [[C(a), y], [0, x_E]] is determined up to Q_1 by
//! x_E up to GL(E)-conjugacy together with the class of y in the cokernel of
//! B ↦ C(a)B − B x_E. Through the Bernstein solver that cokernel is a
//! quotient of row vectors, E* / R, and R is the row space of a_t(x_E).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::arith::{Elem, Level};
use crate::error::{Error, Result};

use super::matrix::{Echelon, Mat};
use super::poly::{self, companion};
use super::strata::{all_rows, solve_lemma, stratum_index};

/// Invertible matrices with first column e_1.
pub fn q1_elements(k: &Level, n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for top in all_rows(k, n - 1) {
        for d in Mat::general_linear(k, n - 1) {
            let mut h = Mat::identity(n);
            for (j, &v) in top.iter().enumerate() {
                h.set(0, j + 1, v);
            }
            h.set_block(1, 1, &d);
            out.push(h);
        }
    }
    out
}

/// Orbit statistics for one characteristic polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// stratum m → sizes of the Q_1-orbits in X_m, sorted
    pub orbits: BTreeMap<usize, Vec<usize>>,
}

impl Census {
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.orbits.iter().map(|(&m, v)| (m, v.len())).collect()
    }

    pub fn total(&self) -> usize {
        self.orbits.values().map(Vec::len).sum()
    }
}

/// Brute-force orbit partition under conjugation by Q_1(F_q). The cap bounds
/// q^{n²}.
pub fn orbit_census(k: &Level, n: usize, c: &[Elem], cap: u64) -> Result<Census> {
    let size = k.size().checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: format!("{n}x{n} matrices"), size, cap });
    }
    let group: Vec<(Mat, Mat)> = q1_elements(k, n)
        .into_iter()
        .map(|h| {
            let hi = h.inverse(k).expect("invertible");
            (h, hi)
        })
        .collect();
    let mut seen = HashSet::new();
    let mut census = Census::default();
    for x in Mat::all(k, n, n) {
        if x.charpoly(k) != c || x.det(k).is_zero() || seen.contains(&x.key()) {
            continue;
        }
        let mut orbit = HashSet::new();
        for (h, hi) in &group {
            orbit.insert(h.mul(k, &x).mul(k, hi).key());
        }
        let m = stratum_index(k, &x);
        census.orbits.entry(m).or_default().push(orbit.len());
        seen.extend(orbit);
    }
    for v in census.orbits.values_mut() {
        v.sort_unstable();
    }
    Ok(census)
}

/// R ⊂ E*: first rows w_1 of the solver applied to C(a)B − B x_E, spanned
/// over a basis of all B.
pub fn literal_relations(k: &Level, a: &[Elem], x_e: &Mat) -> Result<Echelon> {
    let m = a.len();
    let e = x_e.rows();
    let c = companion(k, a);
    let mut span = Echelon::new(e);
    for i in 0..m {
        for j in 0..e {
            let mut b = Mat::zeros(m, e);
            b.set(i, j, Elem::ONE);
            let y = c.mul(k, &b).sub(k, &b.mul(k, x_e));
            let (w1, _) = solve_lemma(k, &c, x_e, &y)?;
            span.insert(k, &w1.row(0));
        }
    }
    Ok(span)
}

/// Row space of a_t(x_E).
pub fn polynomial_relations(k: &Level, a: &[Elem], x_e: &Mat) -> Echelon {
    let at = poly::eval_matrix(k, &poly::from_charpoly(a), x_e);
    let mut span = Echelon::new(x_e.rows());
    for i in 0..at.rows() {
        span.insert(k, &at.row(i));
    }
    span
}

/// Number of GL(E)-orbits on pairs (x', v̄) with c(x') = target and
/// v̄ ∈ E*/rowspace(a_t(x')), under (x', v) ↦ (g x' g^{-1}, v g^{-1}).
/// Also asserts that the row space agrees with the literal cokernel.
fn pair_orbits(k: &Level, a: &[Elem], target: &[Elem], gl: &[(Mat, Mat)]) -> Result<usize> {
    let e = target.len();
    let mut seen: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut count = 0;
    let canon = |k: &Level, x: &Mat, v: &[Elem]| -> Result<(Vec<u32>, Vec<u32>)> {
        let rel = polynomial_relations(k, a, x);
        let lit = literal_relations(k, a, x)?;
        if rel.basis() != lit.basis() {
            return Err(Error::SolverSingular);
        }
        let r = rel.reduce(k, v);
        Ok((x.key(), r.iter().map(|e| e.raw()).collect()))
    };
    for x in Mat::general_linear(k, e) {
        if x.charpoly(k) != target {
            continue;
        }
        for v in all_rows(k, e) {
            let key = canon(k, &x, &v)?;
            if seen.contains(&key) {
                continue;
            }
            count += 1;
            for (g, gi) in gl {
                let gx = g.mul(k, &x).mul(k, gi);
                let gv = gi.vec_mul(k, &v);
                seen.insert(canon(k, &gx, &gv)?);
            }
        }
    }
    Ok(count)
}

/// Orbit counts per stratum predicted by the recursion: Σ over monic
/// divisors a_t of degree m of the pair-orbit count on GL(n−m), and 1 for
/// m = n.
pub fn recursion_prediction(k: &Level, n: usize, c: &[Elem]) -> Result<BTreeMap<usize, usize>> {
    let cp = poly::from_charpoly(c);
    let mut out = BTreeMap::new();
    for m in 1..=n {
        let mut total = 0;
        let gl: Vec<(Mat, Mat)> = Mat::general_linear(k, n - m)
            .into_iter()
            .map(|g| {
                let gi = g.inverse(k).expect("invertible");
                (g, gi)
            })
            .collect();
        for at in poly::monic_divisors(k, &cp, m) {
            let a = poly::to_charpoly(&at);
            if a[m - 1].is_zero() {
                continue;
            }
            if m == n {
                total += 1;
                continue;
            }
            let (quo, _) = poly::divrem_monic(k, &cp, &at);
            total += pair_orbits(k, &a, &poly::to_charpoly(&quo), &gl)?;
        }
        if total > 0 {
            out.insert(m, total);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tower;

    #[test]
    fn gl1_single_orbit() {
        let t = build_tower(3, 1, 1).unwrap();
        let k = t.base();
        for u in k.units() {
            let c = vec![k.neg(u)];
            let census = orbit_census(k, 1, &c, 1 << 20).unwrap();
            assert_eq!(census.total(), 1);
            assert_eq!(recursion_prediction(k, 1, &c).unwrap(), census.counts());
        }
    }

    #[test]
    fn gl2_unipotent_has_both_strata() {
        let t = build_tower(3, 1, 1).unwrap();
        let k = t.base();
        // (t-1)^2 = t^2 - 2t + 1
        let c = vec![k.from_int(-2), k.from_int(1)];
        let census = orbit_census(k, 2, &c, 1 << 20).unwrap();
        assert!(census.orbits.contains_key(&1) && census.orbits.contains_key(&2));
        assert_eq!(recursion_prediction(k, 2, &c).unwrap(), census.counts());
    }
}
