//! Q_1-orbits on GL(2, F_5) per characteristic polynomial, by brute force
//! and by the recursion over strata.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::mirabolic::poly::{all_monic, to_charpoly};
use gamma_acyclic::mirabolic::{elem_label, orbit_census, recursion_prediction};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(5, 1, 1)?;
    let k = tower.base();
    for c in all_monic(k, 2).iter().map(|p| to_charpoly(p)).filter(|a| !a[1].is_zero()).take(8) {
        let census = orbit_census(k, 2, &c, 1 << 20)?;
        let predicted = recursion_prediction(k, 2, &c)?;
        let label: Vec<String> = c.iter().map(|&x| elem_label(k, x)).collect();
        println!("c = {label:?}: orbits by stratum {:?}, recursion {:?}", census.counts(), predicted);
    }
    Ok(())
}
