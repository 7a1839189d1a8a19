//! Rank normal form of the lower-left block under the Levi of a parabolic.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::mirabolic::{parabolic_rank_classify, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(3, 1, 1)?;
    let k = tower.base();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..4 {
        let x = Mat::random_invertible(k, 4, &mut rng);
        let cls = parabolic_rank_classify(k, &x, 2, 2)?;
        println!("x  = {}\nnf = {}  (rank {})\n", x.display(k), cls.normal_form.display(k), cls.rank);
    }
    Ok(())
}
