use gamma_acyclic::arith::{build_tower, solve_exact, CycNum, Elem};
use gamma_acyclic::mirabolic::Mat;
use gamma_acyclic::perm::Perm;
use proptest::prelude::*;

fn cyc(n: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-4i64..=4, n as usize).prop_map(move |c| CycNum::from_counts(n, &c))
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop_oneof![Just(12u32), Just(15), Just(20), Just(24), Just(9)].prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, CycNum::zero(1));
        prop_assert_eq!(&a * &CycNum::one(1), a.clone());
    }

    #[test]
    fn conjugation_and_galois_are_ring_maps((a, b, _c) in triple(), k in 0u64..64) {
        let n = a.conductor() as u64;
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let u = (1..=n).map(|i| (i + k) % n).find(|&u| u > 0 && gamma_acyclic::arith::numth::gcd(u, n) == 1).unwrap_or(1);
        prop_assert_eq!((&a * &b).galois(u), &a.galois(u) * &b.galois(u));
        prop_assert_eq!((&a + &b).galois(u), &a.galois(u) + &b.galois(u));
    }

    #[test]
    fn inverse_and_complex_embedding((a, b, _c) in triple()) {
        if let Some(ai) = a.inv() {
            prop_assert_eq!(&a * &ai, CycNum::one(1));
        }
        let (x, y) = ((&a * &b).to_complex(), (a.to_complex(), b.to_complex()));
        let re = y.0.0 * y.1.0 - y.0.1 * y.1.1;
        let im = y.0.0 * y.1.1 + y.0.1 * y.1.0;
        let tol = 1e-8 * (1.0 + re.abs() + im.abs());
        prop_assert!((x.0 - re).abs() < tol && (x.1 - im).abs() < tol);
    }

    #[test]
    fn mixed_conductors_lift_to_the_lcm(a in cyc(4), b in cyc(6)) {
        let s = &a + &b;
        prop_assert_eq!(12 % s.conductor(), 0);
        prop_assert_eq!(&s - &b, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms_f27(x in 0u64..27, y in 0u64..27, z in 0u64..27) {
        let t = build_tower(3, 3, 1).unwrap();
        let k = t.base();
        let e = |v: u64| if v == 0 { Elem::ZERO } else { k.from_log(v - 1) };
        let (x, y, z) = (e(x), e(y), e(z));
        prop_assert_eq!(k.add(k.add(x, y), z), k.add(x, k.add(y, z)));
        prop_assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
        prop_assert_eq!(k.sub(k.add(x, y), y), x);
        if let Some(xi) = k.inv(x) {
            prop_assert_eq!(k.mul(x, xi), Elem::ONE);
        }
        prop_assert_eq!(t.frobenius(1, x, 3).unwrap(), x);
    }

    #[test]
    fn permutations_form_a_group(seed in 0usize..720, other in 0usize..720) {
        let all = Perm::all(6);
        let (a, b) = (&all[seed], &all[other]);
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(b).sign(), a.sign() * b.sign());
        prop_assert_eq!(a.compose(b).inverse(), b.inverse().compose(&a.inverse()));
    }

    #[test]
    fn conjugation_preserves_charpoly(entries in prop::collection::vec(0u64..5, 18)) {
        let t = build_tower(5, 1, 1).unwrap();
        let k = t.base();
        let m = |v: &[u64]| Mat::from_elems(3, 3, v.iter().map(|&c| k.from_int(c as i64)).collect());
        let (x, g) = (m(&entries[..9]), m(&entries[9..]));
        if !g.det(k).is_zero() {
            prop_assert_eq!(x.conjugate(k, &g).unwrap().charpoly(k), x.charpoly(k));
        }
    }

    #[test]
    fn exact_solver_recovers_planted_solutions(coef in prop::collection::vec(-3i64..=3, 12), sol in prop::collection::vec(-5i64..=5, 3)) {
        // rows of a 4×3 system over Q(ζ_3), right-hand side from a planted x
        let z = CycNum::root_of_unity(3, 1);
        let entry = |c: i64, i: usize| &CycNum::from_int(1, c) + &z.pow((i % 3) as u32).scale_int(c % 2);
        let xs: Vec<CycNum> = sol.iter().map(|&s| CycNum::from_int(1, s)).collect();
        let rows: Vec<(Vec<CycNum>, CycNum)> = (0..4)
            .map(|r| {
                let a: Vec<CycNum> = (0..3).map(|j| entry(coef[3 * r + j], r + j)).collect();
                let b = a.iter().zip(&xs).fold(CycNum::zero(1), |acc, (ai, xi)| &acc + &(ai * xi));
                (a, b)
            })
            .collect();
        let s = solve_exact(3, rows.clone()).unwrap();
        for (a, b) in &rows {
            let lhs = a.iter().zip(&s.values).fold(CycNum::zero(1), |acc, (ai, xi)| &acc + &(ai * xi));
            prop_assert_eq!(&lhs, b);
        }
        if s.is_unique() {
            prop_assert_eq!(s.values, xs);
        }
    }
}
