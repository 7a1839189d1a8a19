//! Σ_{u ∈ U_Q} φ(ux) on the top stratum of GL(3, F_3), by the direct sum and
//! by the determinant fiber of the characteristic polynomial.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::induction::{coset_vanishing_top, GammaTrace};
use gamma_acyclic::mirabolic::companion;
use gamma_acyclic::mirabolic::poly::{all_monic, to_charpoly};
use gamma_acyclic::torus::{sigma_fiber_sum, RepSpec, Torus, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(3, 1, 6)?;
    let k = tower.base();
    let ws = WeightSystem::from_spec(&[3], &RepSpec::named("std"))?;
    let torus = Torus::new(&tower, &ws);
    let gamma = GammaTrace::new(&torus)?;
    let mut n = 0;
    for a in all_monic(k, 3).iter().map(|p| to_charpoly(p)).filter(|a| !a[2].is_zero()) {
        let s = coset_vanishing_top(&gamma, &companion(k, &a))?;
        assert!(s.vanishes() && s.routes_agree());
        n += 1;
    }
    println!("{n} companion matrices: both routes give 0");
    for z in k.units() {
        println!("det = {:?}: W-averaged fiber sum = {}", k.to_int(z), sigma_fiber_sum(&torus, 0, z)?);
    }
    Ok(())
}
