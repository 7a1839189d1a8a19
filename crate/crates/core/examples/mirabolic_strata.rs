//! Strata of GL(3) by the dimension of the x-span of e_1, their Bernstein
//! coordinates, and the characteristic polynomial along a U_Q-coset.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::arith::{Elem, Level};
use gamma_acyclic::mirabolic::{all_rows, bernstein_coords, coset_charpoly, elem_label, normalize, reassemble, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(k: &Level, v: &[Elem]) -> String {
    format!("[{}]", v.iter().map(|&x| elem_label(k, x)).collect::<Vec<_>>().join(","))
}

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(3, 1, 1)?;
    let k = tower.base();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut counts = [0usize; 4];
    for i in 0..200 {
        let x = Mat::random_invertible(k, 3, &mut rng);
        let nz = normalize(k, &x)?;
        counts[nz.m] += 1;
        let sd = bernstein_coords(k, &nz.x, nz.m)?;
        assert_eq!(reassemble(k, &sd), nz.x);
        if i < 3 {
            println!("x = {}  m = {}  a = {}", x.display(k), nz.m, show(k, &sd.a));
            for s in all_rows(k, 2).iter().take(3) {
                let (b, chk) = coset_charpoly(k, &nz.x, nz.m, s)?;
                println!("  u = {}: c(ux) = {}, formula ok = {}", show(k, s), show(k, &b), chk.formula_matches_direct);
            }
        }
    }
    println!("stratum sizes in 200 samples: X_1 {} X_2 {} X_3 {}", counts[1], counts[2], counts[3]);
    Ok(())
}
