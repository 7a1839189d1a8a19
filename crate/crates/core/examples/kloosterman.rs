//! Kloosterman sums as hypergeometric sums on G_m, and their Weil bound.

use gamma_acyclic::arith::{build_tower, kloosterman};
use gamma_acyclic::torus::{hyper_trace, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(7, 1, 1)?;
    let k = tower.base();
    let ws = WeightSystem::new(&[1], &[(vec![1], 2)])?;
    for t in k.units() {
        let kl = kloosterman(&tower, t, 2)?;
        assert_eq!(kl, hyper_trace(&tower, &ws, &[t])?);
        println!("t = {:?}: Kl_2 = {kl}  (|Kl_2| = {:.3} ≤ 2√7)", k.to_int(t), kl.abs());
    }
    Ok(())
}
