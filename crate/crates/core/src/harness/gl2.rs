//! The character table of GL(2, F_q) and the oracle built from it: a class
//! function Σ_π (dim π / |G|) γ_π χ_π whose generic γ_π are Mellin
//! transforms of the torus traces and whose remaining γ_π are solved for.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{solve_exact, CycNum, Elem, FieldTower, Level, MultCharacter, RootSum};
use crate::arith::numth::lcm;
use crate::error::{Error, Result};
use crate::induction::GammaTrace;
use crate::mirabolic::{companion, Mat};
use crate::perm::Perm;
use crate::torus::mellin_root_sum;

/// Integer combination of roots of unity of order q² − 1.
pub type Sparse = Vec<(u64, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    Central,
    Jordan,
    Split,
    Elliptic,
}

#[derive(Clone, Debug)]
pub struct Gl2Class {
    pub kind: ClassKind,
    /// logs: [a] for central and Jordan, [a, b] for split, [α] at level 2
    /// for elliptic
    pub params: Vec<u64>,
    pub size: u64,
    pub rep: Mat,
    pub charpoly: Vec<Elem>,
}

impl Gl2Class {
    pub fn is_regular(&self) -> bool {
        self.kind != ClassKind::Central
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    OneDim,
    SteinbergTwist,
    Principal,
    Cuspidal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gl2Irrep {
    pub family: Family,
    /// character exponents: j for χ_j of F_q^x, k for Θ_k of F_{q²}^x
    pub params: Vec<u64>,
    pub dim: u64,
}

pub struct Gl2Table {
    q: u64,
    order: u64,
    conductor: u32,
    pub classes: Vec<Gl2Class>,
    pub irreps: Vec<Gl2Irrep>,
    /// values[irrep][class]
    values: Vec<Vec<Sparse>>,
    central_index: HashMap<Elem, usize>,
    regular_index: HashMap<Vec<Elem>, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orthogonality {
    pub classes: usize,
    pub irreps: usize,
    pub dim_square_sum_ok: bool,
    pub class_sizes_ok: bool,
    pub rows_ok: bool,
    pub columns_ok: bool,
}

impl Orthogonality {
    pub fn ok(&self) -> bool {
        self.classes == self.irreps && self.dim_square_sum_ok && self.class_sizes_ok && self.rows_ok && self.columns_ok
    }
}

impl Gl2Table {
    pub fn build(tower: &FieldTower) -> Result<Self> {
        let q = tower.q();
        if q > 11 {
            return Err(Error::CapExceeded { what: "GL(2) character table".into(), size: q, cap: 11 });
        }
        let k = tower.base();
        let k2 = tower.require(2)?;
        let n = q * q - 1;
        let qm = q - 1;
        let order = (q * q - 1) * (q * q - q);
        let mut classes = Vec::new();
        for la in 0..qm {
            let a = k.from_log(la);
            let rep = Mat::diag(&[a, a]);
            classes.push(Gl2Class { kind: ClassKind::Central, params: vec![la], size: 1, charpoly: rep.charpoly(k), rep });
        }
        for la in 0..qm {
            let a = k.from_log(la);
            let mut rep = Mat::diag(&[a, a]);
            rep.set(0, 1, Elem::ONE);
            classes.push(Gl2Class { kind: ClassKind::Jordan, params: vec![la], size: q * q - 1, charpoly: rep.charpoly(k), rep });
        }
        for la in 0..qm {
            for lb in la + 1..qm {
                let rep = Mat::diag(&[k.from_log(la), k.from_log(lb)]);
                classes.push(Gl2Class { kind: ClassKind::Split, params: vec![la, lb], size: q * (q + 1), charpoly: rep.charpoly(k), rep });
            }
        }
        for l in 0..n {
            let conj = l * q % n;
            if l % (q + 1) == 0 || conj < l {
                continue;
            }
            let alpha = k2.from_log(l);
            let tr = tower.trace(2, 1, alpha)?;
            let nm = tower.norm(2, 1, alpha)?;
            let rep = companion(k, &[k.neg(tr), nm]);
            classes.push(Gl2Class { kind: ClassKind::Elliptic, params: vec![l], size: q * (q - 1), charpoly: rep.charpoly(k), rep });
        }

        let mut irreps = Vec::new();
        for j in 0..qm {
            irreps.push(Gl2Irrep { family: Family::OneDim, params: vec![j], dim: 1 });
        }
        for j in 0..qm {
            irreps.push(Gl2Irrep { family: Family::SteinbergTwist, params: vec![j], dim: q });
        }
        for j1 in 0..qm {
            for j2 in j1 + 1..qm {
                irreps.push(Gl2Irrep { family: Family::Principal, params: vec![j1, j2], dim: q + 1 });
            }
        }
        for kk in 0..n {
            let conj = kk * q % n;
            if conj <= kk {
                continue;
            }
            irreps.push(Gl2Irrep { family: Family::Cuspidal, params: vec![kk], dim: q - 1 });
        }

        // exponent of χ_j(a) = ζ_{q-1}^{j la} as a power of ζ_{q²-1}
        let e1 = |j: u64, la: u64| (q + 1) * (j * la % qm) % n;
        let values = irreps
            .iter()
            .map(|ir| {
                classes
                    .iter()
                    .map(|c| {
                        let pr = &c.params;
                        let iq = q as i64;
                        match (ir.family, c.kind) {
                            (Family::OneDim, ClassKind::Central | ClassKind::Jordan) => vec![(e1(ir.params[0], 2 * pr[0]), 1)],
                            (Family::OneDim, ClassKind::Split) => vec![(e1(ir.params[0], pr[0] + pr[1]), 1)],
                            (Family::OneDim, ClassKind::Elliptic) => vec![(e1(ir.params[0], pr[0]), 1)],
                            (Family::SteinbergTwist, ClassKind::Central) => vec![(e1(ir.params[0], 2 * pr[0]), iq)],
                            (Family::SteinbergTwist, ClassKind::Jordan) => vec![],
                            (Family::SteinbergTwist, ClassKind::Split) => vec![(e1(ir.params[0], pr[0] + pr[1]), 1)],
                            (Family::SteinbergTwist, ClassKind::Elliptic) => vec![(e1(ir.params[0], pr[0]), -1)],
                            (Family::Principal, ClassKind::Central) => {
                                vec![(e1(ir.params[0] + ir.params[1], pr[0]), iq + 1)]
                            }
                            (Family::Principal, ClassKind::Jordan) => vec![(e1(ir.params[0] + ir.params[1], pr[0]), 1)],
                            (Family::Principal, ClassKind::Split) => {
                                let (j1, j2) = (ir.params[0], ir.params[1]);
                                vec![((e1(j1, pr[0]) + e1(j2, pr[1])) % n, 1), ((e1(j1, pr[1]) + e1(j2, pr[0])) % n, 1)]
                            }
                            (Family::Principal, ClassKind::Elliptic) => vec![],
                            (Family::Cuspidal, ClassKind::Central) => vec![(ir.params[0] * (q + 1) * pr[0] % n, iq - 1)],
                            (Family::Cuspidal, ClassKind::Jordan) => vec![(ir.params[0] * (q + 1) * pr[0] % n, -1)],
                            (Family::Cuspidal, ClassKind::Split) => vec![],
                            (Family::Cuspidal, ClassKind::Elliptic) => {
                                let kk = ir.params[0];
                                vec![(kk * pr[0] % n, -1), (kk * pr[0] % n * q % n, -1)]
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        let mut central_index = HashMap::new();
        let mut regular_index = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            if c.kind == ClassKind::Central {
                central_index.insert(c.rep.get(0, 0), i);
            } else {
                regular_index.insert(c.charpoly.clone(), i);
            }
        }
        Ok(Gl2Table { q, order, conductor: n as u32, classes, irreps, values, central_index, regular_index })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// |GL(2, F_q)|.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn sparse(&self, irrep: usize, class: usize) -> &Sparse {
        &self.values[irrep][class]
    }

    pub fn value(&self, irrep: usize, class: usize) -> CycNum {
        let mut acc = RootSum::new(self.conductor);
        for &(e, c) in &self.values[irrep][class] {
            acc.add_root(e, c);
        }
        acc.to_cyc()
    }

    /// The class of an invertible matrix: scalars by their entry, everything
    /// else (all regular) by the characteristic polynomial.
    pub fn class_of(&self, k: &Level, x: &Mat) -> usize {
        let a = x.get(0, 0);
        if x.get(0, 1).is_zero() && x.get(1, 0).is_zero() && x.get(1, 1) == a {
            return self.central_index[&a];
        }
        self.regular_index[&x.charpoly(k)]
    }

    fn pairing(&self, a: &Sparse, b: &Sparse, weight: i64, acc: &mut RootSum) {
        let n = self.conductor as u64;
        for &(e, c) in a {
            for &(f, d) in b {
                acc.add_root(e + n - f, c * d * weight);
            }
        }
    }

    /// Exact row and column orthogonality, Σ dim² = |G| and Σ |C| = |G|.
    pub fn check_orthogonality(&self) -> Orthogonality {
        let g = self.order as i64;
        let dim_square_sum_ok = self.irreps.iter().map(|r| r.dim * r.dim).sum::<u64>() == self.order;
        let class_sizes_ok = self.classes.iter().map(|c| c.size).sum::<u64>() == self.order;
        let nr = self.irreps.len();
        let nc = self.classes.len();
        let rows_ok = (0..nr).into_par_iter().all(|i| {
            (i..nr).all(|j| {
                let mut acc = RootSum::new(self.conductor);
                for c in 0..nc {
                    self.pairing(&self.values[i][c], &self.values[j][c], self.classes[c].size as i64, &mut acc);
                }
                acc.to_cyc() == CycNum::from_int(1, if i == j { g } else { 0 })
            })
        });
        let columns_ok = (0..nc).into_par_iter().all(|a| {
            (a..nc).all(|b| {
                let mut acc = RootSum::new(self.conductor);
                for i in 0..nr {
                    self.pairing(&self.values[i][a], &self.values[i][b], 1, &mut acc);
                }
                let expect = if a == b { g / self.classes[a].size as i64 } else { 0 };
                acc.to_cyc() == CycNum::from_int(1, expect)
            })
        });
        Orthogonality { classes: nc, irreps: nr, dim_square_sum_ok, class_sizes_ok, rows_ok, columns_ok }
    }
}

/// Whether the expansion uses χ_π(g) or χ_π(g^{-1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    Direct,
    Inverse,
}

/// The solved oracle.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub convention: Convention,
    /// outcome of each attempted convention
    pub attempts: Vec<(Convention, String)>,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub u_id: CycNum,
    pub u_swap: CycNum,
    /// γ of α∘det and of St ⊗ α∘det, indexed by the exponent of α
    pub gamma_one_dim: Vec<CycNum>,
    pub gamma_steinberg: Vec<CycNum>,
    /// the oracle class function on every class
    pub class_values: Vec<CycNum>,
    /// oracle = φ on every regular class
    pub residual_zero: bool,
    /// the system stays consistent with u_id = q and u_swap = −q imposed
    pub pinned_units_consistent: bool,
}

impl Oracle {
    pub fn rank_deficient(&self) -> bool {
        self.rank < self.unknowns
    }
}

/// Σ_π χ_π(g^{±1}) mellin_π over one generic family, as a number.
fn generic_part(table: &Gl2Table, mellins: &[(usize, RootSum)], class: usize, conv: Convention, m: u32) -> CycNum {
    let n = table.conductor as u64;
    let step = m as u64 / n;
    let mut acc = RootSum::new(m);
    for (ir, rs) in mellins {
        for &(e, c) in table.sparse(*ir, class) {
            let e = match conv {
                Convention::Direct => e,
                Convention::Inverse => (n - e) % n,
            };
            acc.add_scaled(rs, e * step, c);
        }
    }
    acc.to_cyc()
}

/// The system with the extra equations u_id = q, u_swap = −q.
fn pinned_rows(rows: &[(Vec<CycNum>, CycNum)], unknowns: usize, q: u64) -> Vec<(Vec<CycNum>, CycNum)> {
    let mut out = rows.to_vec();
    for (j, v) in [(unknowns - 2, q as i64), (unknowns - 1, -(q as i64))] {
        let mut a = vec![CycNum::zero(1); unknowns];
        a[j] = CycNum::one(1);
        out.push((a, CycNum::from_int(1, v)));
    }
    out
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Builds the oracle for φ = `gamma`. Generic γ_π are u_id·mellin(id, χ_1, χ_2)
/// and u_swap·mellin(swap, Θ); the two units and the non-generic γ values are
/// unknowns of an exact linear system with one equation per regular class.
/// The non-generic unknowns enter through f_1(d) = Σ_α (γ_α/|G|) α(d) and
/// f_2(d) = Σ_α (q γ_{St,α}/|G|) α(d), an invertible change of variables.
pub fn oracle_phi(table: &Gl2Table, gamma: &GammaTrace) -> Result<Oracle> {
    let torus = gamma.torus();
    let tower = torus.tower();
    if torus.ws().dim() != 2 {
        return Err(Error::InvalidArgument("the oracle needs GL(2)".into()));
    }
    let q = table.q;
    let qm = q - 1;
    let m = lcm(tower.p(), table.conductor as u64) as u32;
    let id = Perm::identity(2);
    let swap = Perm::transposition(2, 0, 1);
    let mut principal = Vec::new();
    let mut cuspidal = Vec::new();
    for (i, ir) in table.irreps.iter().enumerate() {
        match ir.family {
            Family::Principal => {
                let th = [MultCharacter::new(tower, 1, ir.params[0] as i64)?, MultCharacter::new(tower, 1, ir.params[1] as i64)?];
                principal.push((i, mellin_root_sum(torus, &id, &th)?));
            }
            Family::Cuspidal => {
                let th = [MultCharacter::new(tower, 2, ir.params[0] as i64)?];
                cuspidal.push((i, mellin_root_sum(torus, &swap, &th)?));
            }
            _ => {}
        }
    }
    let g = table.order;
    let phi: Vec<Option<CycNum>> = table
        .classes
        .iter()
        .map(|c| if c.is_regular() { gamma.by_charpoly(&c.charpoly).map(Some) } else { Ok(None) })
        .collect::<Result<_>>()?;

    let unknowns = 2 * qm as usize + 2;
    let (iu, is) = (unknowns - 2, unknowns - 1);
    let mut attempts = Vec::new();
    let mut chosen = None;
    for conv in [Convention::Direct, Convention::Inverse] {
        let gen: Vec<(CycNum, CycNum)> = (0..table.classes.len())
            .into_par_iter()
            .map(|c| {
                let pp = generic_part(table, &principal, c, conv, m).scale(&ratio(q + 1, g));
                let cc = generic_part(table, &cuspidal, c, conv, m).scale(&ratio(q - 1, g));
                (pp, cc)
            })
            .collect();
        // f-index of det(g)^{±1}
        let det_index = |c: &Gl2Class| -> usize {
            let l = match c.kind {
                ClassKind::Central | ClassKind::Jordan => 2 * c.params[0],
                ClassKind::Split => c.params[0] + c.params[1],
                ClassKind::Elliptic => c.params[0],
            } % qm;
            (match conv {
                Convention::Direct => l,
                Convention::Inverse => (qm - l) % qm,
            }) as usize
        };
        let f_coeffs = |c: &Gl2Class| -> Vec<(usize, i64)> {
            let d = det_index(c);
            let f2 = qm as usize + d;
            match c.kind {
                ClassKind::Central => vec![(d, 1), (f2, q as i64)],
                ClassKind::Jordan => vec![(d, 1)],
                ClassKind::Split => vec![(d, 1), (f2, 1)],
                ClassKind::Elliptic => vec![(d, 1), (f2, -1)],
            }
        };
        let mut rows = Vec::new();
        for (ci, c) in table.classes.iter().enumerate() {
            let Some(rhs) = &phi[ci] else { continue };
            let mut a = vec![CycNum::zero(1); unknowns];
            for (j, v) in f_coeffs(c) {
                a[j] = CycNum::from_int(1, v);
            }
            a[iu] = gen[ci].0.clone();
            a[is] = gen[ci].1.clone();
            rows.push((a, rhs.clone()));
        }
        let equations = rows.len();
        let pinned = pinned_rows(&rows, unknowns, q);
        match solve_exact(unknowns, rows) {
            Ok(sol) => {
                attempts.push((conv, format!("consistent, rank {} of {}", sol.rank, unknowns)));
                if chosen.is_none() {
                    let values: Vec<CycNum> = table
                        .classes
                        .iter()
                        .enumerate()
                        .map(|(ci, c)| {
                            let mut v = &(&gen[ci].0 * &sol.values[iu]) + &(&gen[ci].1 * &sol.values[is]);
                            for (j, co) in f_coeffs(c) {
                                v = &v + &sol.values[j].scale_int(co);
                            }
                            v
                        })
                        .collect();
                    let pinned_ok = solve_exact(unknowns, pinned).is_ok();
                    chosen = Some((conv, sol, values, equations, pinned_ok));
                }
            }
            Err(Error::SystemInconsistent(msg)) => attempts.push((conv, format!("inconsistent: {msg}"))),
            Err(e) => return Err(e),
        }
    }
    let Some((convention, sol, class_values, equations, pinned_units_consistent)) = chosen else {
        return Err(Error::SystemInconsistent(format!("no convention is consistent: {attempts:?}")));
    };
    let residual_zero = table
        .classes
        .iter()
        .enumerate()
        .all(|(ci, _)| phi[ci].as_ref().is_none_or(|v| *v == class_values[ci]));
    // invert the change of variables: γ_α = |G|/(q-1) Σ_d f_1(d) α(d)^{-1}
    let recover = |offset: usize, factor: BigRational| -> Vec<CycNum> {
        (0..qm)
            .map(|j| {
                let mut acc = CycNum::zero(1);
                for d in 0..qm {
                    let root = CycNum::root_of_unity(qm.max(1) as u32, -((j * d % qm.max(1)) as i64));
                    acc = &acc + &(&sol.values[offset + d as usize] * &root);
                }
                acc.scale(&factor)
            })
            .collect()
    };
    let gamma_one_dim = recover(0, ratio(g, qm));
    let gamma_steinberg = recover(qm as usize, ratio(g, qm * q));
    Ok(Oracle {
        convention,
        attempts,
        unknowns,
        equations,
        rank: sol.rank,
        u_id: sol.values[iu].clone(),
        u_swap: sol.values[is].clone(),
        gamma_one_dim,
        gamma_steinberg,
        class_values,
        residual_zero,
        pinned_units_consistent,
    })
}

/// One coset U_B g with g ∉ B.
#[derive(Clone, Debug)]
pub struct CosetRecord {
    pub g: Mat,
    pub geometric: CycNum,
    pub oracle: Option<CycNum>,
    /// u_b g points where the two routes differ
    pub disagreements: usize,
}

impl CosetRecord {
    pub fn ok(&self) -> bool {
        self.geometric.is_zero() && self.oracle.as_ref().is_none_or(CycNum::is_zero) && self.disagreements == 0
    }
}

/// Σ_{b ∈ F_q} φ([[1, b], [0, 1]] g) for every g ∉ B, by the geometric route
/// and, when given, the oracle route, comparing the two pointwise.
pub fn vanishing_sweep_gl2(gamma: &GammaTrace, oracle: Option<(&Gl2Table, &Oracle)>) -> Result<Vec<CosetRecord>> {
    let k = gamma.torus().tower().base();
    let gs: Vec<Mat> = Mat::general_linear(k, 2).into_iter().filter(|g| !g.get(1, 0).is_zero()).collect();
    gs.into_par_iter()
        .map(|g| {
            let mut geometric = CycNum::zero(k.p());
            let mut orc = oracle.map(|_| CycNum::zero(k.p()));
            let mut disagreements = 0;
            for b in k.elements() {
                let mut u = Mat::identity(2);
                u.set(0, 1, b);
                let x = u.mul(k, &g);
                let v = gamma.phi_regular(&x)?;
                if let (Some((table, o)), Some(acc)) = (oracle, orc.as_mut()) {
                    let w = &o.class_values[table.class_of(k, &x)];
                    if *w != v {
                        disagreements += 1;
                    }
                    *acc = &*acc + w;
                }
                geometric = &geometric + &v;
            }
            Ok(CosetRecord { g, geometric, oracle: orc, disagreements })
        })
        .collect()
}
