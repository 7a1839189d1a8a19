//! Character-sum transforms of the twisted traces: Mellin γ-factors, the
//! Kummer convolution scalar, and the determinant-fiber sums over W_j.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::numth::lcm;
use crate::arith::{gauss_sum, CycNum, Elem, MultCharacter, RootSum};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::hypergeometric::{hyper_sign, hyper_table};
use super::twisted::{Action, Torus};

/// Log of a w-cycle value in its own field, from its log at the table level.
fn descend_log(torus: &Torus, key: u32, cycle_len: usize, table_level: u32) -> Result<u64> {
    let tower = torus.tower();
    let big = tower.require(table_level)?.order();
    let small = tower.require(cycle_len as u32)?.order();
    Ok(key as u64 / (big / small))
}

fn check_theta(torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<()> {
    let cycles = w.cycles();
    if cycles.len() != theta.len() {
        return Err(Error::InvalidArgument(format!(
            "character has {} components, w has {} cycles",
            theta.len(),
            cycles.len()
        )));
    }
    for (c, chi) in cycles.iter().zip(theta) {
        if chi.level() as usize != c.len() {
            return Err(Error::InvalidArgument("character component on the wrong level".into()));
        }
        torus.tower().require(chi.level())?;
    }
    Ok(())
}

/// Σ_{t ∈ T_w(F_q)} ι-twisted trace at (w,t) times θ(t)^{-1}.
pub fn mellin_gamma(torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<CycNum> {
    Ok(mellin_root_sum(torus, w, theta)?.to_cyc())
}

/// [`mellin_gamma`] before reduction: a signed count of roots of unity of
/// order lcm(p, ord θ).
pub fn mellin_root_sum(torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<RootSum> {
    check_theta(torus, w, theta)?;
    let tower = torus.tower();
    let ws = torus.ws();
    let lift = ws.weyl_lift(w)?;
    let table = torus.table(&lift)?;
    let p = tower.p();
    let n = theta.iter().fold(p, |acc, c| lcm(acc, c.order())) as u32;
    let cycles = w.cycles();
    let unit = lift.epsilon * hyper_sign(ws);
    let mut acc = RootSum::new(n);
    for (key, sum) in table.entries() {
        let mut shift = 0u64;
        for ((c, chi), &k) in cycles.iter().zip(theta).zip(key) {
            let lg = descend_log(torus, k, c.len(), table.level())?;
            let lvl = tower.require(c.len() as u32)?;
            let e = chi.value_exp(lvl.from_log(lg)).expect("unit");
            let step = n as u64 / chi.order();
            // θ^{-1}
            shift += (chi.order() - e) % chi.order() * step;
        }
        acc.add_scaled(sum, shift, unit);
    }
    Ok(acc)
}

/// The characters χ_c of F_{q^{ℓ_c}}^× obtained by restricting θ∘p_λ to the
/// free coordinate of each ξ-cycle c.
pub fn cycle_characters(torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<Vec<MultCharacter>> {
    check_theta(torus, w, theta)?;
    let tower = torus.tower();
    let lift = torus.ws().weyl_lift(w)?;
    let table = torus.table(&lift)?;
    let wcycles = w.cycles();
    let mut out = Vec::new();
    for (ci, c) in table.xi_cycles().iter().enumerate() {
        let mut frac = BigRational::from_integer(BigInt::from(0));
        for (wi, (wc, chi)) in wcycles.iter().zip(theta).enumerate() {
            let k = table.coefficient(ci, wi);
            let lg = descend_log(torus, k as u32, wc.len(), table.level())?;
            let modulus = chi.modulus();
            let e = chi.exponent() as u128 * lg as u128 % modulus as u128;
            frac += BigRational::new(BigInt::from(e), BigInt::from(modulus));
        }
        let lc = tower.require(c.len() as u32)?;
        let j = frac * BigRational::from_integer(BigInt::from(lc.order()));
        if !j.is_integer() {
            return Err(Error::InvalidArgument("restricted character is not defined on its cycle field".into()));
        }
        let j: i64 = j.to_integer().try_into().map_err(|_| Error::InvalidArgument("overflow".into()))?;
        out.push(MultCharacter::new(tower, c.len() as u32, j)?);
    }
    Ok(out)
}

/// ∏_c g(χ_c^{-1}) over the ξ-cycles of the canonical lift of w.
pub fn gauss_product(torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<CycNum> {
    let mut acc = CycNum::one(1);
    for chi in cycle_characters(torus, w, theta)? {
        acc = &acc * &gauss_sum(torus.tower(), &chi.conj())?;
    }
    Ok(acc)
}

/// Normalization frozen from (w = id, θ = trivial): mellin = unit · ∏ g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MellinCalibration {
    pub unit: CycNum,
}

impl MellinCalibration {
    pub fn calibrate(torus: &Torus) -> Result<Self> {
        let d = torus.ws().dim();
        let id = Perm::identity(d);
        let triv: Vec<MultCharacter> = (0..d)
            .map(|_| MultCharacter::trivial(torus.tower(), 1))
            .collect::<Result<_>>()?;
        let m = mellin_gamma(torus, &id, &triv)?;
        let g = gauss_product(torus, &id, &triv)?;
        let unit = &m * &g.inv().ok_or(Error::InvalidArgument("vanishing Gauss product".into()))?;
        Ok(MellinCalibration { unit })
    }

    /// Whether mellin_gamma(w, θ) = unit · gauss_product(w, θ) exactly.
    pub fn check(&self, torus: &Torus, w: &Perm, theta: &[MultCharacter]) -> Result<bool> {
        let m = mellin_gamma(torus, w, theta)?;
        let g = gauss_product(torus, w, theta)?;
        Ok(m == &self.unit * &g)
    }
}

/// All characters of T_w(F_q): one component per w-cycle.
pub fn twisted_characters(torus: &Torus, w: &Perm) -> Result<Vec<Vec<MultCharacter>>> {
    let mut out: Vec<Vec<MultCharacter>> = vec![Vec::new()];
    for c in w.cycles() {
        let all = MultCharacter::all(torus.tower(), c.len() as u32)?;
        let mut next = Vec::with_capacity(out.len() * all.len());
        for prefix in &out {
            for chi in &all {
                let mut v = prefix.clone();
                v.push(*chi);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Computes x ↦ Σ_t t_Ψ(t) χ(t^{-1}x) on all of T(F_q), checks that its
/// ratio to χ(x) is constant, and returns the constant.
pub fn kummer_convolution_scalar(torus: &Torus, chi: &[MultCharacter]) -> Result<CycNum> {
    let tower = torus.tower();
    let ws = torus.ws();
    let d = ws.dim();
    if chi.len() != d || chi.iter().any(|c| c.level() != 1) {
        return Err(Error::InvalidArgument("need one character of F_q^x per coordinate".into()));
    }
    let table = hyper_table(tower, ws);
    let base = tower.base();
    let nq = base.order();
    let n = chi.iter().fold(tower.p(), |acc, c| lcm(acc, c.order())) as u32;
    let exp_of = |chi: &MultCharacter, log: u64| -> u64 {
        let e = chi.value_exp(base.from_log(log)).expect("unit");
        e * (n as u64 / chi.order())
    };
    let total = nq.pow(d as u32);
    let mut constant: Option<CycNum> = None;
    for mut idx in 0..total {
        let mut x = vec![0u64; d];
        for xi in x.iter_mut() {
            *xi = idx % nq;
            idx /= nq;
        }
        let mut acc = RootSum::new(n);
        for (tkey, sum) in &table {
            let mut shift = 0u64;
            for i in 0..d {
                let l = (x[i] + nq - tkey[i] as u64 % nq) % nq;
                shift += exp_of(&chi[i], l);
            }
            acc.add_scaled(sum, shift, 1);
        }
        let value = acc.to_cyc().scale_int(hyper_sign(ws));
        let chi_x: u64 = (0..d).map(|i| exp_of(&chi[i], x[i])).sum();
        let ratio = &value * &CycNum::root_of_unity(n, -(chi_x as i64));
        match &constant {
            None => constant = Some(ratio),
            Some(c) if *c == ratio => {}
            Some(_) => return Err(Error::NotConstant),
        }
    }
    Ok(constant.expect("torus is nonempty"))
}

/// (1/|W_j|) Σ_{w ∈ W_j} Σ_{t ∈ T_w(F_q), det_j(t) = z} trace(w, t), for every
/// z ∈ F_q^×, indexed by log z.
pub fn sigma_fiber_sums(torus: &Torus, j: usize, action: Action) -> Result<Vec<CycNum>> {
    let tower = torus.tower();
    let ws = torus.ws();
    let factors = ws.factors();
    let range = factors
        .get(j)
        .cloned()
        .ok_or_else(|| Error::InvalidArgument(format!("no factor {j}")))?;
    if range.len() < 2 {
        return Err(Error::InvalidArgument("the factor must have n_j >= 2".into()));
    }
    let nq = tower.base().order();
    let p = tower.p() as u32;
    let mut sums: Vec<RootSum> = (0..nq).map(|_| RootSum::new(p)).collect();
    let group = ws.weyl_factor(j);
    for w in &group {
        let lift = ws.weyl_lift(w)?;
        let unit = action.unit(&lift) * hyper_sign(ws);
        let table = torus.table(&lift)?;
        let wcycles = w.cycles();
        for (key, sum) in table.entries() {
            let mut det = 0u64;
            for (c, &k) in wcycles.iter().zip(key) {
                if range.contains(&c[0]) {
                    det += descend_log(torus, k, c.len(), table.level())?;
                }
            }
            sums[(det % nq) as usize].add_scaled(sum, 0, unit);
        }
    }
    let inv_w = BigRational::new(BigInt::from(1), BigInt::from(group.len()));
    Ok(sums.iter().map(|s| s.to_cyc().scale(&inv_w)).collect())
}

/// [`sigma_fiber_sums`] at one z, with the ι action.
pub fn sigma_fiber_sum(torus: &Torus, j: usize, z: Elem) -> Result<CycNum> {
    let k = z.log().ok_or_else(|| Error::InvalidArgument("z must be a unit".into()))?;
    Ok(sigma_fiber_sums(torus, j, Action::Twisted)?.swap_remove(k as usize))
}
