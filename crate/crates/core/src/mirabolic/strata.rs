//! The stratification G = ⊔ X_m by the dimension of the x-cyclic span of
//! e_1, companion normal forms, Bernstein coordinates on a stratum, and the
//! characteristic polynomial along left U_Q-cosets.
//!
//! All actions are left actions. Vectors are columns; U_Q is the group of
//! matrices [[1, s], [0, I]] with s a row vector of length n-1.

use serde::Serialize;

use crate::arith::{Elem, Level};
use crate::error::{Error, Result};

use super::matrix::{Echelon, Mat};
use super::poly::{self, companion};

fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = Elem::ONE;
    v
}

/// e_1, x e_1, …, x^{m-1} e_1 where m is the first power that becomes
/// dependent.
pub fn krylov_basis(k: &Level, x: &Mat) -> Vec<Vec<Elem>> {
    let n = x.rows();
    let mut span = Echelon::new(n);
    let mut out = Vec::new();
    let mut v = unit_vector(n, 0);
    while span.insert(k, &v) {
        out.push(v.clone());
        v = x.mul_vec(k, &v);
    }
    out
}

/// m = dim span{e_1, x e_1, x² e_1, …}.
pub fn stratum_index(k: &Level, x: &Mat) -> usize {
    krylov_basis(k, x).len()
}

/// g_F ∈ Q_{F,1} (first column e_1) with g_F^{-1} x_F g_F companion, and the
/// companion coefficients (a_1, …, a_m).
pub fn companion_normalize(k: &Level, x_f: &Mat) -> Result<(Mat, Vec<Elem>)> {
    let m = x_f.rows();
    let basis = krylov_basis(k, x_f);
    if basis.len() != m {
        return Err(Error::NotCyclic);
    }
    let g = Mat::from_cols(&basis);
    let ginv = g.inverse(k)?;
    let last = x_f.mul_vec(k, &basis[m - 1]);
    // x^m e_1 = -(a_m e_1 + a_{m-1} x e_1 + … + a_1 x^{m-1} e_1)
    let coords = ginv.mul_vec(k, &last);
    let a: Vec<Elem> = (1..=m).map(|i| k.neg(coords[m - i])).collect();
    debug_assert_eq!(ginv.mul(k, x_f).mul(k, &g), companion(k, &a));
    Ok((g, a))
}

/// A matrix conjugated by Q_1 into block form [[C(a), y], [0, x_E]].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub m: usize,
    /// conjugator h ∈ Q_1 with x' = h^{-1} x h
    pub h: Mat,
    pub x: Mat,
}

/// Q_1-conjugate x so that F = span of the Krylov vectors becomes the span
/// of e_1, …, e_m and x_F becomes a companion matrix. The basis is the
/// Krylov basis completed greedily by standard vectors.
pub fn normalize(k: &Level, x: &Mat) -> Result<Normalized> {
    let n = x.rows();
    let mut cols = krylov_basis(k, x);
    let m = cols.len();
    let mut span = Echelon::new(n);
    for v in &cols {
        span.insert(k, v);
    }
    for i in 0..n {
        let e = unit_vector(n, i);
        if span.insert(k, &e) {
            cols.push(e);
        }
    }
    let h = Mat::from_cols(&cols);
    let xn = h.inverse(k)?.mul(k, x).mul(k, &h);
    Ok(Normalized { m, h, x: xn })
}

/// Bernstein coordinates (a, x_E, v_1, v_{m-1}) of a normalized point, with
/// x = u(v_1) u(v_{m-1}) diag(x_F, x_E) u(v_{m-1})^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumData {
    pub m: usize,
    pub a: Vec<Elem>,
    pub x_e: Mat,
    /// m × (n-m), nonzero only in the first row
    pub v1: Mat,
    /// m × (n-m), zero in the last row
    pub v_m1: Mat,
}

/// Check the block shape [[C(a), y], [0, x_E]] and return (a, y, x_E).
pub fn split_normalized(k: &Level, x: &Mat, m: usize) -> Result<(Vec<Elem>, Mat, Mat)> {
    let n = x.rows();
    if m == 0 || m > n {
        return Err(Error::NotNormalized(format!("stratum index {m} out of range")));
    }
    let x_f = x.block(0, 0, m, m);
    let a: Vec<Elem> = (1..=m).map(|i| k.neg(x_f.get(m - i, m - 1))).collect();
    if x_f != companion(k, &a) {
        return Err(Error::NotNormalized("F-block is not a companion matrix".into()));
    }
    if !x.block(m, 0, n - m, m).is_zero() {
        return Err(Error::NotNormalized("F is not x-stable".into()));
    }
    Ok((a, x.block(0, m, m, n - m), x.block(m, m, n - m, n - m)))
}

/// The linear map (v_1, v_{m-1}) ↦ v_1 + v_{m-1} x_E - x_F v_{m-1}.
pub fn lemma_map(k: &Level, x_f: &Mat, x_e: &Mat, v1: &Mat, v_m1: &Mat) -> Mat {
    v1.add(k, &v_m1.mul(k, x_e)).sub(k, &x_f.mul(k, v_m1))
}

/// Inverse of [`lemma_map`] for companion x_F, solved from the last row up:
/// row m gives r_{m-1} = -y_m, row i gives r_{i-1} = r_i x_E - y_i, and row 1
/// leaves w_1 = y_1 - r_1 x_E.
pub fn solve_lemma(k: &Level, x_f: &Mat, x_e: &Mat, y: &Mat) -> Result<(Mat, Mat)> {
    let m = x_f.rows();
    let e = x_e.rows();
    let a: Vec<Elem> = (1..=m).map(|i| k.neg(x_f.get(m - i, m - 1))).collect();
    if *x_f != companion(k, &a) {
        return Err(Error::NotNormalized("solver needs a companion F-block".into()));
    }
    let mut v_m1 = Mat::zeros(m, e);
    // rows indexed 0..m; r_i lives in row i-1
    let mut r = vec![vec![Elem::ZERO; e]; m + 1];
    if m >= 2 {
        r[m - 1] = y.row(m - 1).iter().map(|&c| k.neg(c)).collect();
        for i in (2..m).rev() {
            let rx = x_e.vec_mul(k, &r[i]);
            r[i - 1] = rx.iter().zip(y.row(i - 1)).map(|(&a, b)| k.sub(a, b)).collect();
        }
    }
    for i in 1..m {
        for j in 0..e {
            v_m1.set(i - 1, j, r[i][j]);
        }
    }
    let r1x = if m >= 2 { x_e.vec_mul(k, &r[1]) } else { vec![Elem::ZERO; e] };
    let mut w1 = Mat::zeros(m, e);
    for j in 0..e {
        w1.set(0, j, k.sub(y.get(0, j), r1x[j]));
    }
    if lemma_map(k, x_f, x_e, &w1, &v_m1) != *y {
        return Err(Error::SolverSingular);
    }
    Ok((w1, v_m1))
}

fn block_unipotent(v: &Mat) -> Mat {
    let (m, e) = (v.rows(), v.cols());
    let mut u = Mat::identity(m + e);
    u.set_block(0, m, v);
    u
}

/// Bernstein coordinates of a normalized point of X_m.
pub fn bernstein_coords(k: &Level, x: &Mat, m: usize) -> Result<StratumData> {
    let (a, y, x_e) = split_normalized(k, x, m)?;
    let x_f = companion(k, &a);
    let (w1, v_m1) = solve_lemma(k, &x_f, &x_e, &y)?;
    // the reassembly product has (v_1 + v_{m-1}) x_E - x_F v_{m-1} in the
    // corner, so v_1 = w_1 x_E^{-1}
    let v1 = if x_e.rows() == 0 { w1 } else { w1.mul(k, &x_e.inverse(k)?) };
    Ok(StratumData { m, a, x_e, v1, v_m1 })
}

/// u(v_1) u(v_{m-1}) diag(x_F, x_E) u(v_{m-1})^{-1}.
pub fn reassemble(k: &Level, sd: &StratumData) -> Mat {
    let m = sd.m;
    let e = sd.x_e.rows();
    let mut d = Mat::zeros(m + e, m + e);
    d.set_block(0, 0, &companion(k, &sd.a));
    d.set_block(m, m, &sd.x_e);
    block_unipotent(&sd.v1)
        .mul(k, &block_unipotent(&sd.v_m1))
        .mul(k, &d)
        .mul(k, &block_unipotent(&sd.v_m1.neg(k)))
}

/// [[1, s], [0, I]].
pub fn uq_element(k: &Level, s: &[Elem]) -> Mat {
    let n = s.len() + 1;
    let mut u = Mat::identity(n);
    for (j, &v) in s.iter().enumerate() {
        u.set(0, j + 1, v);
    }
    let _ = k;
    u
}

/// All row vectors of length len.
pub fn all_rows(k: &Level, len: usize) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = k.elements().collect();
    let s = elems.len();
    (0..s.pow(len as u32))
        .map(|mut idx| {
            (0..len)
                .map(|_| {
                    let e = elems[idx % s];
                    idx /= s;
                    e
                })
                .collect()
        })
        .collect()
}

/// Output of [`coset_charpoly`].
#[derive(Clone, Debug, Serialize)]
pub struct CosetCharpoly {
    /// coefficients of c(u_L x_F) from the closed formula
    pub b: Vec<u32>,
    pub formula_matches_direct: bool,
    pub factorization_holds: bool,
    pub last_coefficient_fixed: bool,
}

/// Closed formula for c(u_L x_F): with v_i = -s_i,
/// b_r = a_r + Σ_{i<r} a_i v_{r-i} + v_r for r < m, and b_m = a_m.
pub fn coset_formula(k: &Level, a: &[Elem], s: &[Elem]) -> Vec<Elem> {
    let m = a.len();
    let v: Vec<Elem> = (0..m.saturating_sub(1)).map(|i| k.neg(s[i])).collect();
    let mut b = Vec::with_capacity(m);
    for r in 1..m {
        let mut acc = k.add(a[r - 1], v[r - 1]);
        for i in 1..r {
            acc = k.add(acc, k.mul(a[i - 1], v[r - i - 1]));
        }
        b.push(acc);
    }
    b.push(a[m - 1]);
    b
}

/// Evaluate c(ux) for u = [[1, s], [0, I]] against the closed formula and
/// the factorization c(ux) = c(u_L x_F) c(x_E); x must be normalized.
pub fn coset_charpoly(k: &Level, x: &Mat, m: usize, s: &[Elem]) -> Result<(Vec<Elem>, CosetCharpoly)> {
    let n = x.rows();
    if s.len() + 1 != n {
        return Err(Error::InvalidArgument("row vector has the wrong length".into()));
    }
    let (a, _y, x_e) = split_normalized(k, x, m)?;
    let b = coset_formula(k, &a, s);
    let u = uq_element(k, s);
    let ux = u.mul(k, x);
    let direct = ux.charpoly(k);
    let ul = uq_element(k, &s[..m - 1]);
    let ulxf = ul.mul(k, &companion(k, &a));
    let formula_matches_direct = ulxf.charpoly(k) == b;
    let product = poly::mul(k, &poly::from_charpoly(&b), &poly::from_charpoly(&x_e.charpoly(k)));
    let factorization_holds = poly::to_charpoly(&product) == direct;
    let last_coefficient_fixed = b[m - 1] == a[m - 1];
    let codes = b.iter().map(|&e| super::matrix::elem_code(k, e) as u32).collect();
    Ok((
        b,
        CosetCharpoly { b: codes, formula_matches_direct, factorization_holds, last_coefficient_fixed },
    ))
}

/// l_x(s) = c(ux) - c(x), as a vector in A^n.
pub fn l_x(k: &Level, x: &Mat, s: &[Elem]) -> Vec<Elem> {
    let c0 = x.charpoly(k);
    let c1 = uq_element(k, s).mul(k, x).charpoly(k);
    c1.iter().zip(&c0).map(|(&a, &b)| k.sub(a, b)).collect()
}

/// Rank of the linear map l_x, from the images of the standard basis of U_Q.
pub fn l_x_rank(k: &Level, x: &Mat) -> usize {
    let n = x.rows();
    let rows: Vec<Elem> = (0..n - 1)
        .flat_map(|i| {
            let mut s = vec![Elem::ZERO; n - 1];
            s[i] = Elem::ONE;
            l_x(k, x, &s)
        })
        .collect();
    if n == 1 {
        return 0;
    }
    Mat::from_elems(n - 1, n, rows).rank(k)
}
