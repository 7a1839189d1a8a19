//! Rank normal form of the lower-left block under the Levi of a maximal
//! parabolic. With l = diag(A, D) the block c of x becomes D c A^{-1}; orbits
//! are classified by rank c, and the representative has anti-diagonal ones
//! starting in the top-right corner of c.

use serde::Serialize;

use crate::arith::{Elem, Level};
use crate::error::{Error, Result};

use super::matrix::Mat;

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicClass {
    pub rank: usize,
    /// l ∈ GL(n_1) × GL(n_2), block diagonal
    #[serde(skip)]
    pub conjugator: Mat,
    #[serde(skip)]
    pub normal_form: Mat,
}

/// P c Q = [[I_r, 0], [0, 0]] by full pivoting; returns (r, P, Q).
fn full_pivot(k: &Level, c: &Mat) -> (usize, Mat, Mat) {
    let (rows, cols) = (c.rows(), c.cols());
    let mut a = c.clone();
    let mut p = Mat::identity(rows);
    let mut q = Mat::identity(cols);
    let mut r = 0;
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero())
        else {
            break;
        };
        swap_rows(&mut a, r, pi);
        swap_rows(&mut p, r, pi);
        swap_cols(&mut a, r, pj);
        swap_cols(&mut q, r, pj);
        let inv = k.inv(a.get(r, r)).expect("pivot is a unit");
        for j in 0..cols {
            a.set(r, j, k.mul(inv, a.get(r, j)));
        }
        for j in 0..rows {
            p.set(r, j, k.mul(inv, p.get(r, j)));
        }
        for i in 0..rows {
            let f = a.get(i, r);
            if i == r || f.is_zero() {
                continue;
            }
            for j in 0..cols {
                a.set(i, j, k.sub(a.get(i, j), k.mul(f, a.get(r, j))));
            }
            for j in 0..rows {
                p.set(i, j, k.sub(p.get(i, j), k.mul(f, p.get(r, j))));
            }
        }
        for j in 0..cols {
            let f = a.get(r, j);
            if j == r || f.is_zero() {
                continue;
            }
            for i in 0..rows {
                a.set(i, j, k.sub(a.get(i, j), k.mul(f, a.get(i, r))));
            }
            for i in 0..cols {
                q.set(i, j, k.sub(q.get(i, j), k.mul(f, q.get(i, r))));
            }
        }
        r += 1;
    }
    (r, p, q)
}

fn swap_rows(a: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let (x, y) = (a.get(i, c), a.get(j, c));
        a.set(i, c, y);
        a.set(j, c, x);
    }
}

fn swap_cols(a: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows() {
        let (x, y) = (a.get(r, i), a.get(r, j));
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

/// The pivot shape: ones at (i, n_1 − 1 − i) for i < r.
pub fn pivot_shape(n2: usize, n1: usize, r: usize) -> Mat {
    let mut s = Mat::zeros(n2, n1);
    for i in 0..r {
        s.set(i, n1 - 1 - i, Elem::ONE);
    }
    s
}

/// Rank of the lower-left n_2 × n_1 block and a Levi element conjugating x
/// to a representative whose lower-left block is the pivot shape.
pub fn parabolic_rank_classify(k: &Level, x: &Mat, n1: usize, n2: usize) -> Result<ParabolicClass> {
    let n = x.rows();
    if n1 + n2 != n || n1 == 0 || n2 == 0 {
        return Err(Error::InvalidArgument(format!("split ({n1},{n2}) does not fit {n}")));
    }
    let c = x.block(n1, 0, n2, n1);
    let (r, p, q) = full_pivot(k, &c);
    if c == pivot_shape(n2, n1, r) {
        return Ok(ParabolicClass { rank: r, conjugator: Mat::identity(n), normal_form: x.clone() });
    }
    let mut rev = Mat::zeros(n1, n1);
    for i in 0..n1 {
        rev.set(i, n1 - 1 - i, Elem::ONE);
    }
    // D c A^{-1} = P c Q J, so A = (Q J)^{-1} and D = P
    let a = q.mul(k, &rev).inverse(k)?;
    let mut l = Mat::zeros(n, n);
    l.set_block(0, 0, &a);
    l.set_block(n1, n1, &p);
    let normal_form = x.conjugate(k, &l)?;
    debug_assert_eq!(normal_form.block(n1, 0, n2, n1), pivot_shape(n2, n1, r));
    Ok(ParabolicClass { rank: r, conjugator: l, normal_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_tower;

    #[test]
    fn borel_and_off_borel() {
        let t = build_tower(3, 1, 1).unwrap();
        let k = t.base();
        let b = Mat::from_ints(k, &[vec![1, 2], vec![0, 1]]);
        let cls = parabolic_rank_classify(k, &b, 1, 1).unwrap();
        assert_eq!(cls.rank, 0);
        assert_eq!(cls.conjugator, Mat::identity(2));
        let x = Mat::from_ints(k, &[vec![0, 1], vec![2, 0]]);
        let cls = parabolic_rank_classify(k, &x, 1, 1).unwrap();
        assert_eq!(cls.rank, 1);
        assert_eq!(cls.normal_form.get(1, 0), Elem::ONE);
    }
}
