//! Twisted traces on the GL(2) torus: for ρ = std the swap-twisted trace at
//! α ∈ F_{q²}^× is ψ(α), and the sign character shows up once a weight has
//! multiplicity two.

use gamma_acyclic::arith::{build_tower, psi_eval};
use gamma_acyclic::perm::Perm;
use gamma_acyclic::torus::{RepSpec, Torus, TwistedTorusPoint, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(5, 1, 2)?;
    let std = WeightSystem::from_spec(&[2], &RepSpec::named("std"))?;
    let torus = Torus::new(&tower, &std);
    let swap = Perm::transposition(2, 0, 1);
    let l2 = tower.level(2)?;
    let mut agree = 0;
    for alpha in l2.units() {
        let pt = TwistedTorusPoint::new(&tower, swap.clone(), vec![alpha])?;
        agree += (torus.twisted_stalk_trace(&pt)? == psi_eval(&tower, 2, alpha)?) as usize;
    }
    println!("std, w = swap: trace = ψ(α) at {agree} of {} points", l2.order());

    let doubled = WeightSystem::new(&[2], &[(vec![1, 0], 2), (vec![0, 1], 2)])?;
    let torus = Torus::new(&tower, &doubled);
    let id = Perm::identity(2);
    let pt = TwistedTorusPoint::split(&tower, &[tower.base().gen(), tower.base().from_int(2)])?;
    for xi in doubled.sigma_lambda() {
        let lift = doubled.lift_with(&id, xi.clone())?;
        println!("2·std, ξ = {xi:?}: local sum = {}", torus.local_sum(&lift, &pt)?);
    }
    Ok(())
}
