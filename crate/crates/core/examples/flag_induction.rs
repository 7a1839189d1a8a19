//! Parabolic induction from the torus as a sum over stable flags, compared
//! with the sum over orderings of eigenvalues.

use gamma_acyclic::arith::{build_tower, CycNum};
use gamma_acyclic::induction::{all_flags, has_distinct_roots, induced_trace, steinberg_fiber, HyperLookup};
use gamma_acyclic::mirabolic::Mat;
use gamma_acyclic::perm::Perm;
use gamma_acyclic::torus::{RepSpec, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(5, 1, 1)?;
    let k = tower.base();
    let ws = WeightSystem::from_spec(&[2], &RepSpec::named("std"))?;
    let hyper = HyperLookup::new(&tower, &ws);
    let flags = all_flags(k, 2, 1 << 16)?;
    println!("{} flags in F_5^2", flags.len());
    let mut shown = 0;
    for g in Mat::general_linear(k, 2) {
        let c = g.charpoly(k);
        if !has_distinct_roots(k, &c) || shown == 4 {
            continue;
        }
        let by_flags = induced_trace(k, &flags, &hyper, &g)?;
        let by_roots = steinberg_fiber(&tower, &c, &Perm::identity(2))?
            .iter()
            .fold(CycNum::zero(1), |acc, t| &acc + &hyper.get(t.values()));
        println!("g = {}: {by_flags} = {by_roots}", g.display(k));
        shown += 1;
    }
    Ok(())
}
