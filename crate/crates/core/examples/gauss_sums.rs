//! Gauss sums over F_9 and F_81: exact values, norms and a Hasse–Davenport lift.

use gamma_acyclic::arith::{build_tower, gauss_sum, MultCharacter};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(3, 2, 2)?;
    for chi in MultCharacter::all(&tower, 1)?.into_iter().filter(|c| !c.is_trivial()) {
        let g = gauss_sum(&tower, &chi)?;
        let norm = &g * &gauss_sum(&tower, &chi.conj())?;
        let lifted = gauss_sum(&tower, &chi.lift(&tower, 2)?)?;
        println!("order {:>2}: g = {g}", chi.order());
        println!("          g·ḡ = {norm}, |g| = {:.6}", g.abs());
        println!("          (−g)² = −g(χ∘N): {}", (-g.clone()).pow(2) == -lifted);
    }
    Ok(())
}
