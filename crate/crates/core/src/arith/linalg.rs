//! Exact Gauss–Jordan elimination over cyclotomic fields.

use num_traits::One;

use super::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// A solution of an exact linear system. Free unknowns are set to zero.
#[derive(Clone, Debug)]
pub struct Solution {
    pub values: Vec<CycNum>,
    pub rank: usize,
    /// unknowns without a pivot
    pub free: Vec<usize>,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.free.is_empty()
    }
}

fn is_one(x: &CycNum) -> bool {
    x.as_rational().is_some_and(|r| r.is_one())
}

/// Solves Σ_j a_ij x_j = b_i. Pivots with rational entries are preferred,
/// which keeps most row operations to rational rescaling. Returns
/// SystemInconsistent when a reduced row reads 0 = b with b ≠ 0.
pub fn solve_exact(unknowns: usize, rows: Vec<(Vec<CycNum>, CycNum)>) -> Result<Solution> {
    let mut rows = rows;
    for (a, _) in &rows {
        if a.len() != unknowns {
            return Err(Error::InvalidArgument("row length differs from the number of unknowns".into()));
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..unknowns {
        let candidates = (next..rows.len()).filter(|&i| !rows[i].0[col].is_zero());
        let mut best = None;
        for i in candidates {
            let rational = rows[i].0[col].as_rational().is_some();
            if rational {
                best = Some(i);
                break;
            }
            best.get_or_insert(i);
        }
        let Some(pi) = best else { continue };
        rows.swap(next, pi);
        let pv = rows[next].0[col].clone();
        if !is_one(&pv) {
            let (a, b) = &mut rows[next];
            match pv.as_rational() {
                Some(r) => {
                    let inv = r.recip();
                    for x in a.iter_mut() {
                        if !x.is_zero() {
                            *x = x.scale(&inv);
                        }
                    }
                    *b = b.scale(&inv);
                }
                None => {
                    let inv = pv.inv().expect("nonzero pivot");
                    for x in a.iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &inv;
                        }
                    }
                    *b = &*b * &inv;
                }
            }
        }
        let (prow, prhs) = rows[next].clone();
        for (i, (a, b)) in rows.iter_mut().enumerate() {
            if i == next || a[col].is_zero() {
                continue;
            }
            let f = a[col].clone();
            match f.as_rational() {
                Some(r) => {
                    for (x, y) in a.iter_mut().zip(&prow) {
                        if !y.is_zero() {
                            *x = &*x - &y.scale(&r);
                        }
                    }
                    *b = &*b - &prhs.scale(&r);
                }
                None => {
                    for (x, y) in a.iter_mut().zip(&prow) {
                        if !y.is_zero() {
                            *x = &*x - &(y * &f);
                        }
                    }
                    *b = &*b - &(&prhs * &f);
                }
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if let Some((i, _)) = rows.iter().enumerate().skip(next).find(|(_, (_, b))| !b.is_zero()) {
        return Err(Error::SystemInconsistent(format!("equation {i} reduces to 0 = nonzero")));
    }
    let mut values = vec![CycNum::zero(1); unknowns];
    for &(r, c) in &pivots {
        values[c] = rows[r].1.clone();
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..unknowns).filter(|c| !pivot_cols.contains(c)).collect();
    Ok(Solution { values, rank: pivots.len(), free })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_over_q_zeta3() {
        let z = CycNum::root_of_unity(3, 1);
        let one = CycNum::one(1);
        // x + ζ y = 1 + ζ², x - y = 1 - ζ  →  x = 1, y = ζ
        let rows = vec![
            (vec![one.clone(), z.clone()], &one + &z.pow(2)),
            (vec![one.clone(), -&one], &one - &z),
            (vec![one.scale_int(2), (&z - &one)], &one.scale_int(2) + &(&z.pow(2) - &z)),
        ];
        let s = solve_exact(2, rows).unwrap();
        assert!(s.is_unique());
        assert_eq!(s.values[0], one);
        assert_eq!(s.values[1], z);
    }

    #[test]
    fn inconsistent_and_deficient() {
        let one = CycNum::one(1);
        let rows = vec![(vec![one.clone(), one.clone()], one.clone()), (vec![one.clone(), one.clone()], CycNum::zero(1))];
        assert!(matches!(solve_exact(2, rows), Err(Error::SystemInconsistent(_))));
        let rows = vec![(vec![one.clone(), one.clone()], one.clone())];
        let s = solve_exact(2, rows).unwrap();
        assert_eq!((s.rank, s.free.clone()), (1, vec![1]));
    }
}
