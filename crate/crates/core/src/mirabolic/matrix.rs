//! Dense matrices over one level of a field tower.

use std::fmt;

use crate::arith::{Elem, Level};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    e: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, e: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_elems(rows: usize, cols: usize, e: Vec<Elem>) -> Self {
        assert_eq!(e.len(), rows * cols);
        Mat { rows, cols, e }
    }

    /// Integer entries mapped through Z → F_p.
    pub fn from_ints(k: &Level, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let e = rows.iter().flat_map(|row| row.iter().map(|&v| k.from_int(v))).collect();
        Mat { rows: r, cols: c, e }
    }

    pub fn diag(d: &[Elem]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.e[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.e
    }

    /// Hashable identity of the matrix.
    pub fn key(&self) -> Vec<u32> {
        self.e.iter().map(|x| x.raw()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_cols(cols: &[Vec<Elem>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn mul(&self, k: &Level, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.e[idx] = k.add(out.e[idx], k.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, k: &Level, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let e = self.e.iter().zip(&other.e).map(|(&a, &b)| k.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, e }
    }

    pub fn sub(&self, k: &Level, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let e = self.e.iter().zip(&other.e).map(|(&a, &b)| k.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, e }
    }

    pub fn neg(&self, k: &Level) -> Mat {
        Mat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|&a| k.neg(a)).collect() }
    }

    pub fn scale(&self, k: &Level, s: Elem) -> Mat {
        Mat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|&a| k.mul(a, s)).collect() }
    }

    pub fn mul_vec(&self, k: &Level, v: &[Elem]) -> Vec<Elem> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Elem::ZERO;
                for (j, &x) in v.iter().enumerate() {
                    acc = k.add(acc, k.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, k: &Level, v: &[Elem]) -> Vec<Elem> {
        (0..self.cols)
            .map(|j| {
                let mut acc = Elem::ZERO;
                for (i, &x) in v.iter().enumerate() {
                    acc = k.add(acc, k.mul(x, self.get(i, j)));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self, k: &Level) -> Elem {
        (0..self.rows.min(self.cols)).fold(Elem::ZERO, |acc, i| k.add(acc, self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    /// Row echelon form (in place copy), returning (rank, det when square).
    fn eliminate(&self, k: &Level) -> (usize, Elem) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = Elem::ONE;
        for c in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                det = Elem::ZERO;
                continue;
            };
            if piv != rank {
                for j in 0..m.cols {
                    let (a, b) = (m.get(piv, j), m.get(rank, j));
                    m.set(piv, j, b);
                    m.set(rank, j, a);
                }
                det = k.neg(det);
            }
            let pv = m.get(rank, c);
            det = k.mul(det, pv);
            let inv = k.inv(pv).expect("nonzero pivot");
            for i in rank + 1..m.rows {
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = k.mul(f, inv);
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        if rank < m.cols.min(m.rows) {
            det = Elem::ZERO;
        }
        (rank, det)
    }

    pub fn rank(&self, k: &Level) -> usize {
        self.eliminate(k).0
    }

    pub fn det(&self, k: &Level) -> Elem {
        assert!(self.is_square());
        if self.rows == 0 {
            return Elem::ONE;
        }
        self.eliminate(k).1
    }

    pub fn inverse(&self, k: &Level) -> Result<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(Error::Singular)?;
            for j in 0..n {
                let (x, y) = (a.get(piv, j), a.get(c, j));
                a.set(piv, j, y);
                a.set(c, j, x);
                let (x, y) = (inv.get(piv, j), inv.get(c, j));
                inv.set(piv, j, y);
                inv.set(c, j, x);
            }
            let s = k.inv(a.get(c, c)).expect("pivot");
            for j in 0..n {
                a.set(c, j, k.mul(a.get(c, j), s));
                inv.set(c, j, k.mul(inv.get(c, j), s));
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, k.sub(a.get(i, j), k.mul(f, a.get(c, j))));
                    inv.set(i, j, k.sub(inv.get(i, j), k.mul(f, inv.get(c, j))));
                }
            }
        }
        Ok(inv)
    }

    /// g x g^{-1}.
    pub fn conjugate(&self, k: &Level, g: &Mat) -> Result<Mat> {
        Ok(g.mul(k, self).mul(k, &g.inverse(k)?))
    }

    /// Characteristic polynomial coefficients (a_1, …, a_n) with
    /// c(x) = t^n + a_1 t^{n-1} + … + a_n, via a Hessenberg reduction.
    pub fn charpoly(&self, k: &Level) -> Vec<Elem> {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // similarity transform to upper Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else {
                continue;
            };
            if piv != c + 1 {
                // swap rows and columns piv, c+1
                for j in 0..n {
                    let (a, b) = (h.get(piv, j), h.get(c + 1, j));
                    h.set(piv, j, b);
                    h.set(c + 1, j, a);
                }
                for i in 0..n {
                    let (a, b) = (h.get(i, piv), h.get(i, c + 1));
                    h.set(i, piv, b);
                    h.set(i, c + 1, a);
                }
            }
            let inv = k.inv(h.get(c + 1, c)).expect("pivot");
            for i in c + 2..n {
                let f = h.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = k.mul(f, inv);
                // row_i -= f row_{c+1}; col_{c+1} += f col_i
                for j in 0..n {
                    let v = k.sub(h.get(i, j), k.mul(f, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = k.add(h.get(r, c + 1), k.mul(f, h.get(r, i)));
                    h.set(r, c + 1, v);
                }
            }
        }
        // p_j = det(t I - H[..j, ..j]), polynomials low degree first
        let mut polys: Vec<Vec<Elem>> = vec![vec![Elem::ONE]];
        for j in 0..n {
            // (t - h_jj) p_j
            let prev = &polys[j];
            let mut next = vec![Elem::ZERO; j + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = k.add(next[d + 1], c);
                next[d] = k.sub(next[d], k.mul(h.get(j, j), c));
            }
            let mut prod = Elem::ONE;
            for i in (0..j).rev() {
                prod = k.mul(prod, h.get(i + 1, i));
                let coeff = k.mul(h.get(i, j), prod);
                if coeff.is_zero() {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = k.sub(next[d], k.mul(coeff, c));
                }
            }
            polys.push(next);
        }
        let top = &polys[n];
        // top = Σ c_d t^d, a_i = c_{n-i}
        (1..=n).map(|i| top[n - i]).collect()
    }

    /// All n×n matrices over the level, in a fixed order.
    pub fn all(k: &Level, rows: usize, cols: usize) -> Vec<Mat> {
        let elems: Vec<Elem> = k.elements().collect();
        let s = elems.len();
        let total = s.pow((rows * cols) as u32);
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut e = Vec::with_capacity(rows * cols);
            for _ in 0..rows * cols {
                e.push(elems[idx % s]);
                idx /= s;
            }
            out.push(Mat { rows, cols, e });
        }
        out
    }

    /// All invertible n×n matrices.
    pub fn general_linear(k: &Level, n: usize) -> Vec<Mat> {
        Mat::all(k, n, n).into_iter().filter(|m| !m.det(k).is_zero()).collect()
    }

    /// Uniform element of GL(n) by rejection.
    pub fn random_invertible(k: &Level, n: usize, rng: &mut impl rand::Rng) -> Mat {
        let elems: Vec<Elem> = k.elements().collect();
        loop {
            let e = (0..n * n).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
            let x = Mat::from_elems(n, n, e);
            if !x.det(k).is_zero() {
                return x;
            }
        }
    }

    pub fn display(&self, k: &Level) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| elem_label(k, self.get(i, j))).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Row-major entries as integers when the field is prime, and as
    /// power-basis digit vectors flattened to base-p integers otherwise.
    pub fn to_ints(&self, k: &Level) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| elem_code(k, self.get(i, j))).collect())
            .collect()
    }
}

/// Integer code of an element: its power-basis digits read in base p.
pub fn elem_code(k: &Level, x: Elem) -> u64 {
    let digits = k.to_digits(x);
    let p = k.p() as u64;
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64)
}

pub fn elem_label(k: &Level, x: Elem) -> String {
    if k.degree_over_fp() == 1 {
        elem_code(k, x).to_string()
    } else if x.is_zero() {
        "0".into()
    } else {
        format!("g^{}", x.raw())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols)
                    .map(|j| {
                        let x = self.get(i, j);
                        if x.is_zero() {
                            "0".into()
                        } else {
                            format!("g{}", x.raw())
                        }
                    })
                    .collect();
                r.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Incremental row echelon basis of a subspace of F^n.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    /// (pivot column, row with 1 at pivot and zeros at other pivots)
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of v modulo the subspace.
    pub fn reduce(&self, k: &Level, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let f = v[*pc];
            if f.is_zero() {
                continue;
            }
            for j in 0..self.n {
                v[j] = k.sub(v[j], k.mul(f, row[j]));
            }
        }
        v
    }

    pub fn contains(&self, k: &Level, v: &[Elem]) -> bool {
        self.reduce(k, v).iter().all(|x| x.is_zero())
    }

    /// Adds v; returns false when v was already in the span.
    pub fn insert(&mut self, k: &Level, v: &[Elem]) -> bool {
        let r = self.reduce(k, v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = k.inv(r[pc]).expect("nonzero");
        let r: Vec<Elem> = r.iter().map(|&x| k.mul(x, inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[pc];
            if f.is_zero() {
                continue;
            }
            for j in 0..self.n {
                row[j] = k.sub(row[j], k.mul(f, r[j]));
            }
        }
        self.rows.push((pc, r));
        self.rows.sort_by_key(|(pc, _)| *pc);
        true
    }

    /// Reduced echelon basis, sorted by pivot: a canonical description of
    /// the subspace.
    pub fn basis(&self) -> Vec<Vec<Elem>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tower;

    #[test]
    fn charpoly_and_inverse() {
        let t = build_tower(5, 1, 1).unwrap();
        let k = t.base();
        let x = Mat::from_ints(k, &[vec![1, 1], vec![1, 2]]);
        // t² - 3t + 1
        assert_eq!(x.charpoly(k), vec![k.from_int(-3), k.from_int(1)]);
        let inv = x.inverse(k).unwrap();
        assert_eq!(x.mul(k, &inv), Mat::identity(2));
    }

    #[test]
    fn charpoly_matches_det_expansion_3x3() {
        let t = build_tower(3, 1, 1).unwrap();
        let k = t.base();
        for m in Mat::all(k, 3, 3).into_iter().step_by(37) {
            let c = m.charpoly(k);
            // c(s) = det(sI - m) for every s ∈ F_3
            for s in k.elements() {
                let si = Mat::diag(&[s, s, s]).sub(k, &m);
                let mut val = k.pow(s, 3);
                for (i, &a) in c.iter().enumerate() {
                    val = k.add(val, k.mul(a, k.pow(s, 2 - i as i64)));
                }
                assert_eq!(si.det(k), val);
            }
            assert_eq!(k.neg(c[0]), m.trace(k));
        }
    }
}
