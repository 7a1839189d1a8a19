//! Mellin transforms of the torus traces factor as one unit times Gauss sums
//! over Frobenius orbits.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::torus::{mellin_gamma, twisted_characters, MellinCalibration, RepSpec, Torus, WeightSystem};

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(5, 1, 2)?;
    let ws = WeightSystem::from_spec(&[2], &RepSpec::named("sym2"))?;
    let torus = Torus::new(&tower, &ws);
    let cal = MellinCalibration::calibrate(&torus)?;
    println!("frozen unit: {}", cal.unit);
    for w in ws.weyl_group() {
        let thetas = twisted_characters(&torus, &w)?;
        let ok = thetas.iter().filter(|t| cal.check(&torus, &w, t).unwrap_or(false)).count();
        println!("w = {w:?}: {ok}/{} characters factor", thetas.len());
        println!("  e.g. {}", mellin_gamma(&torus, &w, &thetas[1])?);
    }
    Ok(())
}
