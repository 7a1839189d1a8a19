use gamma_acyclic::arith::{build_tower, CycNum};
use gamma_acyclic::harness::{oracle_phi, Convention, Gl2Table};
use gamma_acyclic::induction::GammaTrace;
use gamma_acyclic::torus::{RepSpec, Torus, WeightSystem};

/// (p, f, rep) where the regular classes do not determine every γ_π.
const DEFICIENT: [(u64, u32, &str); 5] =
    [(2, 1, "std"), (2, 1, "sym2"), (2, 1, "std*det^1"), (3, 1, "sym2"), (2, 2, "std*det^1")];

#[test]
fn oracle_units_conventions_and_rank() {
    for (p, f) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
        let tower = build_tower(p, f, 2).unwrap();
        let q = tower.q() as i64;
        let table = Gl2Table::build(&tower).unwrap();
        assert!(table.check_orthogonality().ok(), "q={q}");
        for rep in ["std", "sym2", "std*det^1"] {
            let w = WeightSystem::from_spec(&[2], &RepSpec::named(rep)).unwrap();
            let torus = Torus::new(&tower, &w);
            let o = oracle_phi(&table, &GammaTrace::new(&torus).unwrap()).unwrap();
            assert_eq!(o.convention, Convention::Direct);
            assert!(o.residual_zero && o.pinned_units_consistent, "{rep} q={q}");
            // χ_π(g^{-1}) only fits when the table is small or the system has slack
            let inverse_ok = o.attempts.iter().any(|(c, r)| *c == Convention::Inverse && r.starts_with("consistent"));
            assert_eq!(inverse_ok, q <= 3 || o.rank_deficient(), "{rep} q={q}: {:?}", o.attempts);
            assert_eq!(o.rank_deficient(), DEFICIENT.contains(&(p, f, rep)), "{rep} q={q}");
            if !o.rank_deficient() {
                assert_eq!((o.u_id.clone(), o.u_swap.clone()), (CycNum::from_int(1, q), CycNum::from_int(1, -q)));
            }
        }
    }
}
