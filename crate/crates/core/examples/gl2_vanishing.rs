//! Σ_b φ([[1, b], [0, 1]] g) = 0 for every g outside the Borel, by the
//! geometric route and the character-table route, plus a corrupted action
//! that breaks it.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::harness::{oracle_phi, vanishing_sweep_gl2, Gl2Table};
use gamma_acyclic::induction::GammaTrace;
use gamma_acyclic::torus::{Action, RepSpec, Torus, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let tower = build_tower(q, 1, 2)?;
    let table = Gl2Table::build(&tower)?;
    let ws = WeightSystem::from_spec(&[2], &RepSpec::named("sym2"))?;
    let torus = Torus::new(&tower, &ws);
    let gamma = GammaTrace::new(&torus)?;
    let oracle = oracle_phi(&table, &gamma)?;
    let recs = vanishing_sweep_gl2(&gamma, Some((&table, &oracle)))?;
    let ok = recs.iter().filter(|r| r.ok()).count();
    println!("q = {q}, sym2: {ok}/{} cosets vanish by both routes", recs.len());
    let bad = GammaTrace::with_action(&torus, Action::SignFlipped)?;
    let broken = vanishing_sweep_gl2(&bad, None)?.iter().filter(|r| !r.geometric.is_zero()).count();
    println!("sign-flipped action: {broken} cosets no longer vanish");
    Ok(())
}
