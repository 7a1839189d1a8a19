//! The character table of GL(2, F_4) and its orthogonality relations.

use gamma_acyclic::arith::build_tower;
use gamma_acyclic::harness::Gl2Table;

fn main() -> gamma_acyclic::Result<()> {
    let tower = build_tower(2, 2, 2)?;
    let table = Gl2Table::build(&tower)?;
    println!("|G| = {}, {} classes, {} irreducibles", table.order(), table.classes.len(), table.irreps.len());
    for (i, ir) in table.irreps.iter().enumerate().take(6) {
        let row: Vec<String> = (0..table.classes.len().min(6)).map(|c| table.value(i, c).to_string()).collect();
        println!("{:?}{:?} dim {}: {}", ir.family, ir.params, ir.dim, row.join(" | "));
    }
    println!("{:?}", table.check_orthogonality());
    Ok(())
}
