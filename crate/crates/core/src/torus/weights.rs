//! Weight systems of representations of the dual group of ∏ GL(n_i), with
//! their block structure and the Weyl group bookkeeping.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A representation given by name or by an explicit weight list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepSpec {
    Named(String),
    Explicit(Vec<WeightEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightEntry {
    WithMult { weight: Vec<i64>, mult: usize },
    Plain(Vec<i64>),
}

impl RepSpec {
    pub fn named(s: &str) -> Self {
        RepSpec::Named(s.to_string())
    }

    pub fn label(&self) -> String {
        match self {
            RepSpec::Named(s) => s.clone(),
            RepSpec::Explicit(ws) => {
                let parts: Vec<String> = ws
                    .iter()
                    .map(|w| match w {
                        WeightEntry::WithMult { weight, mult } => format!("{weight:?}x{mult}"),
                        WeightEntry::Plain(v) => format!("{v:?}"),
                    })
                    .collect();
                parts.join(" ")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeightSystem {
    shape: Vec<usize>,
    /// distinct weights in decreasing lexicographic order
    distinct: Vec<Vec<i64>>,
    mult: Vec<usize>,
    /// slot -> index into `distinct`; slots of one weight are consecutive
    slot_weight: Vec<usize>,
    block_start: Vec<usize>,
    rank: usize,
}

fn compositions(k: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in compositions(k - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn expand_named(shape: &[usize], name: &str) -> Result<Vec<(Vec<i64>, usize)>> {
    let bad = || Error::InvalidArgument(format!("unknown representation name {name:?}"));
    if shape.len() != 1 {
        return Err(Error::InvalidArgument(
            "named representations need a single GL(n) factor; give explicit weights".into(),
        ));
    }
    let n = shape[0];
    let std_twisted = |k: i64| -> Vec<(Vec<i64>, usize)> {
        (0..n)
            .map(|i| {
                let mut v = vec![k; n];
                v[i] += 1;
                (v, 1)
            })
            .collect()
    };
    if name == "std" {
        return Ok(std_twisted(0));
    }
    if name == "det" {
        return Ok(vec![(vec![1; n], 1)]);
    }
    if let Some(k) = name.strip_prefix("sym") {
        let k: i64 = k.parse().map_err(|_| bad())?;
        if k < 1 {
            return Err(bad());
        }
        return Ok(compositions(k, n).into_iter().map(|v| (v, 1)).collect());
    }
    for prefix in ["std*det^", "std_tensor_det_", "std*det"] {
        if let Some(k) = name.strip_prefix(prefix) {
            let k: i64 = if k.is_empty() { 1 } else { k.parse().map_err(|_| bad())? };
            return Ok(std_twisted(k));
        }
    }
    Err(bad())
}

/// Integer rank of a matrix (fraction-free elimination).
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let a = m[rank][c];
                let b = m[i][c];
                let g = num_integer::gcd(a, b);
                for k in 0..cols {
                    m[i][k] = m[i][k] * (a / g) - m[rank][k] * (b / g);
                }
            }
        }
        rank += 1;
    }
    rank
}

impl WeightSystem {
    pub fn from_spec(shape: &[usize], rep: &RepSpec) -> Result<Self> {
        let entries = match rep {
            RepSpec::Named(name) => expand_named(shape, name)?,
            RepSpec::Explicit(list) => list
                .iter()
                .map(|e| match e {
                    WeightEntry::WithMult { weight, mult } => (weight.clone(), *mult),
                    WeightEntry::Plain(v) => (v.clone(), 1),
                })
                .collect(),
        };
        Self::new(shape, &entries)
    }

    /// Validate a weight multiset given as (weight, multiplicity) pairs.
    pub fn new(shape: &[usize], entries: &[(Vec<i64>, usize)]) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidArgument("shape must list positive sizes".into()));
        }
        let d: usize = shape.iter().sum();
        let mut merged: Vec<(Vec<i64>, usize)> = Vec::new();
        for (w, k) in entries {
            if w.len() != d {
                return Err(Error::InvalidArgument(format!("weight {w:?} does not have {d} entries")));
            }
            if *k == 0 {
                continue;
            }
            match merged.iter_mut().find(|(v, _)| v == w) {
                Some(e) => e.1 += k,
                None => merged.push((w.clone(), *k)),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidArgument("empty weight system".into()));
        }
        merged.sort_by(|a, b| b.0.cmp(&a.0));

        let factors = factor_ranges(shape);
        for (w, _) in &merged {
            let mut total = 0;
            for f in &factors {
                let s: i64 = w[f.clone()].iter().sum();
                if s < 0 {
                    return Err(Error::NotSigmaPositive(format!("{w:?} pairs negatively with a determinant")));
                }
                total += s;
            }
            if total <= 0 {
                return Err(Error::NotSigmaPositive(format!("{w:?} pairs trivially with the determinant")));
            }
        }
        // stability under the adjacent transpositions generating W
        for f in &factors {
            for i in f.start..f.end.saturating_sub(1) {
                for (w, k) in &merged {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    match merged.iter().find(|(u, _)| *u == v) {
                        Some((_, k2)) if k2 == k => {}
                        _ => return Err(Error::NotWStable),
                    }
                }
            }
        }
        let distinct: Vec<Vec<i64>> = merged.iter().map(|e| e.0.clone()).collect();
        let rank = integer_rank(&distinct);
        if rank < d {
            return Err(Error::NotSurjective { rank, dim: d });
        }
        let mult: Vec<usize> = merged.iter().map(|e| e.1).collect();
        let mut slot_weight = Vec::new();
        let mut block_start = Vec::new();
        for (i, &k) in mult.iter().enumerate() {
            block_start.push(slot_weight.len());
            slot_weight.extend(std::iter::repeat_n(i, k));
        }
        Ok(WeightSystem { shape: shape.to_vec(), distinct, mult, slot_weight, block_start, rank })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Torus rank d.
    pub fn dim(&self) -> usize {
        self.shape.iter().sum()
    }

    /// Total number of weights with multiplicity.
    pub fn r(&self) -> usize {
        self.slot_weight.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn distinct(&self) -> &[Vec<i64>] {
        &self.distinct
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// The weight sitting in slot s.
    pub fn slot(&self, s: usize) -> &[i64] {
        &self.distinct[self.slot_weight[s]]
    }

    pub fn slot_weight_index(&self, s: usize) -> usize {
        self.slot_weight[s]
    }

    /// Slot ranges A_i, one per distinct weight.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        self.block_start.iter().zip(&self.mult).map(|(&s, &k)| s..s + k).collect()
    }

    /// Coordinate ranges of the GL(n_i) factors.
    pub fn factors(&self) -> Vec<Range<usize>> {
        factor_ranges(&self.shape)
    }

    /// Elements of W = ∏ S_{n_i}, acting on coordinates.
    pub fn weyl_group(&self) -> Vec<Perm> {
        Perm::block_preserving(&self.factors())
    }

    /// Elements of the factor S_{n_j} ⊂ W.
    pub fn weyl_factor(&self, j: usize) -> Vec<Perm> {
        let d = self.dim();
        let f = self.factors()[j].clone();
        let mut ranges = Vec::new();
        for i in 0..d {
            if !f.contains(&i) {
                ranges.push(i..i + 1);
            } else if i == f.start {
                ranges.push(f.clone());
            }
        }
        Perm::block_preserving(&ranges)
    }

    /// Σ_λ = ∏ S_{r_i}: permutations of slots preserving every block.
    pub fn sigma_lambda(&self) -> Vec<Perm> {
        Perm::block_preserving(&self.blocks())
    }

    /// (wλ)_{w(i)} = λ_i.
    pub fn act(&self, w: &Perm, weight: &[i64]) -> Vec<i64> {
        let mut out = vec![0; weight.len()];
        for (i, &x) in weight.iter().enumerate() {
            out[w.apply(i)] = x;
        }
        out
    }

    /// Index map on distinct weights induced by w.
    pub fn weight_permutation(&self, w: &Perm) -> Result<Vec<usize>> {
        self.distinct
            .iter()
            .map(|lam| {
                let img = self.act(w, lam);
                self.distinct.iter().position(|v| *v == img).ok_or(Error::NotWStable)
            })
            .collect()
    }

    /// Canonical lift ξ of w: block A_i goes to A_{w(i)} preserving order.
    pub fn weyl_lift(&self, w: &Perm) -> Result<WeylLift> {
        if w.len() != self.dim() {
            return Err(Error::InvalidLift(format!("{w:?} does not act on {} coordinates", self.dim())));
        }
        let wp = self.weight_permutation(w)?;
        let mut img = vec![0; self.r()];
        for (s, slot) in img.iter_mut().enumerate() {
            let i = self.slot_weight[s];
            let k = s - self.block_start[i];
            *slot = self.block_start[wp[i]] + k;
        }
        let xi = Perm::from_images(img).expect("block map is a bijection");
        self.lift_with(w, xi)
    }

    /// Validate an arbitrary lift ξ ∈ Σ'_λ of w.
    pub fn lift_with(&self, w: &Perm, xi: Perm) -> Result<WeylLift> {
        if xi.len() != self.r() {
            return Err(Error::InvalidLift("lift has the wrong number of slots".into()));
        }
        for s in 0..self.r() {
            if self.act(w, self.slot(s)) != self.slot(xi.apply(s)) {
                return Err(Error::InvalidLift(format!("{xi:?} does not cover {w:?}")));
            }
        }
        let epsilon = xi.sign() * w.sign();
        Ok(WeylLift { w: w.clone(), xi, epsilon })
    }

    /// Smallest tower level holding every twisted point and fixed fiber for
    /// the canonical lifts and all of Σ_λ.
    pub fn required_level(&self) -> u32 {
        let mut need = 1u64;
        for w in self.weyl_group() {
            if let Ok(l) = self.weyl_lift(&w) {
                need = need.max(lift_level(&l));
            }
        }
        for xi in self.sigma_lambda() {
            let id = Perm::identity(self.dim());
            need = need.max(cycle_lcm(&xi).max(cycle_lcm(&id)));
        }
        need as u32
    }
}

pub fn factor_ranges(shape: &[usize]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut s = 0;
    for &n in shape {
        out.push(s..s + n);
        s += n;
    }
    out
}

pub fn cycle_lcm(p: &Perm) -> u64 {
    p.cycles()
        .iter()
        .fold(1, |acc, c| crate::arith::numth::lcm(acc, c.len() as u64))
}

pub fn lift_level(l: &WeylLift) -> u64 {
    crate::arith::numth::lcm(cycle_lcm(&l.w), cycle_lcm(&l.xi))
}

/// A Weyl element together with a slot permutation covering it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylLift {
    pub w: Perm,
    pub xi: Perm,
    /// sign_r(ξ)·sign_W(w)
    pub epsilon: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_systems() {
        let std = WeightSystem::from_spec(&[2], &RepSpec::named("std")).unwrap();
        assert_eq!(std.distinct(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(std.r(), 2);
        let sym2 = WeightSystem::from_spec(&[2], &RepSpec::named("sym2")).unwrap();
        assert_eq!(sym2.distinct(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(sym2.rank(), 2);
        let twisted = WeightSystem::from_spec(&[2], &RepSpec::named("std*det^1")).unwrap();
        assert_eq!(twisted.distinct(), &[vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn rejections() {
        let det = WeightSystem::new(&[2], &[(vec![1, 1], 1)]);
        assert_eq!(det.err(), Some(Error::NotSurjective { rank: 1, dim: 2 }));
        let unstable = WeightSystem::new(&[2], &[(vec![1, 0], 1)]);
        assert_eq!(unstable.err(), Some(Error::NotWStable));
        let neg = WeightSystem::new(&[1], &[(vec![-1], 1)]);
        assert!(matches!(neg, Err(Error::NotSigmaPositive(_))));
    }

    #[test]
    fn canonical_lifts() {
        let swap = Perm::transposition(2, 0, 1);
        let std = WeightSystem::from_spec(&[2], &RepSpec::named("std")).unwrap();
        let l = std.weyl_lift(&swap).unwrap();
        assert_eq!(l.xi, Perm::transposition(2, 0, 1));
        assert_eq!(l.epsilon, 1);
        let sym2 = WeightSystem::from_spec(&[2], &RepSpec::named("sym2")).unwrap();
        let l = sym2.weyl_lift(&swap).unwrap();
        assert_eq!(l.xi, Perm::transposition(3, 0, 2));
        assert_eq!(l.epsilon, 1);
        let sym3 = WeightSystem::from_spec(&[2], &RepSpec::named("sym3")).unwrap();
        assert_eq!(sym3.weyl_lift(&swap).unwrap().epsilon, -1);
        let id = Perm::identity(2);
        assert_eq!(std.weyl_lift(&id).unwrap().xi, Perm::identity(2));
    }
}
