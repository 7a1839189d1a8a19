//! Solving for the class function that agrees with the gamma trace on
//! regular classes of GL(2, F_5).

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::harness::{oracle_phi, Gl2Table};
use gamma_acyclic::induction::GammaTrace;
use gamma_acyclic::torus::{RepSpec, Torus, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(5, 1, 2)?;
    let table = Gl2Table::build(&tower)?;
    for rep in ["std", "sym2", "std*det^1"] {
        let ws = WeightSystem::from_spec(&[2], &RepSpec::named(rep))?;
        let torus = Torus::new(&tower, &ws);
        let o = oracle_phi(&table, &GammaTrace::new(&torus)?)?;
        println!(
            "{rep}: {:?} convention, rank {}/{}, u_id = {}, u_swap = {}, residual zero: {}",
            o.convention, o.rank, o.unknowns, o.u_id, o.u_swap, o.residual_zero
        );
    }
    Ok(())
}
