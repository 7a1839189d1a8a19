use gamma_acyclic::arith::{build_tower, psi_eval, CycNum, Elem, FieldTower, Level};
use gamma_acyclic::induction::{
    all_flags, borel_unipotent_sum, coset_vanishing_top, has_distinct_roots, induced_trace, is_regular,
    steinberg_fiber, GammaTrace, HyperLookup,
};
use gamma_acyclic::mirabolic::poly::all_monic;
use gamma_acyclic::mirabolic::{companion, Mat};
use gamma_acyclic::perm::Perm;
use gamma_acyclic::torus::{Action, RepSpec, Torus, WeightSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ws(n: usize, rep: &str) -> WeightSystem {
    WeightSystem::from_spec(&[n], &RepSpec::named(rep)).unwrap()
}

fn random_invertible(k: &Level, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let elems: Vec<Elem> = k.elements().collect();
    loop {
        let e = (0..n * n).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
        let x = Mat::from_elems(n, n, e);
        if !x.det(k).is_zero() {
            return x;
        }
    }
}

fn eigen_sum(tower: &FieldTower, hyper: &HyperLookup, c: &[Elem]) -> CycNum {
    let id = Perm::identity(c.len());
    steinberg_fiber(tower, c, &id)
        .unwrap()
        .iter()
        .fold(CycNum::zero(tower.p() as u32), |acc, pt| &acc + &hyper.get(pt.values()))
}

#[test]
fn flag_sum_matches_eigenvalue_orderings() {
    for (p, n, rep) in [(2u64, 2usize, "std"), (5, 2, "sym2"), (7, 2, "std"), (3, 3, "std"), (2, 3, "std")] {
        let tower = build_tower(p, 1, 1).unwrap();
        let k = tower.base();
        let w = ws(n, rep);
        let hyper = HyperLookup::new(&tower, &w);
        let flags = all_flags(k, n, 1 << 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let points: Vec<Mat> =
            if n == 2 { Mat::general_linear(k, 2) } else { (0..200).map(|_| random_invertible(k, n, &mut rng)).collect() };
        for g in points {
            let c = g.charpoly(k);
            if !has_distinct_roots(k, &c) {
                continue;
            }
            assert_eq!(induced_trace(k, &flags, &hyper, &g).unwrap(), eigen_sum(&tower, &hyper, &c));
        }
    }
}

#[test]
fn std_gamma_trace_is_psi_of_trace() {
    for (p, n) in [(3u64, 2usize), (5, 2), (7, 2), (2, 3), (3, 3)] {
        let tower = build_tower(p, 1, if n == 2 { 2 } else { 6 }).unwrap();
        let k = tower.base();
        let w = ws(n, "std");
        let torus = Torus::new(&tower, &w);
        let gamma = GammaTrace::new(&torus).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let points: Vec<Mat> =
            if n == 2 { Mat::general_linear(k, 2) } else { (0..150).map(|_| random_invertible(k, n, &mut rng)).collect() };
        for x in points {
            match gamma.phi_regular(&x) {
                Ok(v) => assert_eq!(v, psi_eval(&tower, 1, x.trace(k)).unwrap().scale_int(sign)),
                Err(_) => assert!(!is_regular(k, &x)),
            }
        }
    }
}

#[test]
fn phi_is_conjugation_invariant() {
    let tower = build_tower(3, 1, 2).unwrap();
    let k = tower.base();
    let w = ws(2, "sym2");
    let torus = Torus::new(&tower, &w);
    let gamma = GammaTrace::new(&torus).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let x = random_invertible(k, 2, &mut rng);
        let g = random_invertible(k, 2, &mut rng);
        if let Ok(v) = gamma.phi_regular(&x) {
            assert_eq!(gamma.phi_regular(&x.conjugate(k, &g).unwrap()).unwrap(), v);
        }
    }
}

#[test]
fn gl2_cosets_vanish_and_mutations_do_not() {
    for p in [2u64, 3, 5] {
        let tower = build_tower(p, 1, 2).unwrap();
        let k = tower.base();
        for rep in ["std", "sym2", "std*det^1"] {
            let w = ws(2, rep);
            let torus = Torus::new(&tower, &w);
            let gamma = GammaTrace::new(&torus).unwrap();
            let bad = GammaTrace::with_action(&torus, Action::SignFlipped).unwrap();
            let mut broken = false;
            for x in Mat::general_linear(k, 2) {
                if x.get(1, 0).is_zero() {
                    continue;
                }
                let s = coset_vanishing_top(&gamma, &x).unwrap();
                assert!(s.vanishes() && s.routes_agree(), "{rep} q={p} x={x:?}");
                broken |= !coset_vanishing_top(&bad, &x).unwrap().vanishes();
            }
            assert!(broken, "{rep} q={p}");
        }
    }
}

#[test]
fn gl3_top_stratum_cosets_vanish() {
    for p in [2u64, 3] {
        let tower = build_tower(p, 1, 6).unwrap();
        let k = tower.base();
        let w = ws(3, "std");
        let torus = Torus::new(&tower, &w);
        let gamma = GammaTrace::new(&torus).unwrap();
        for c in all_monic(k, 3) {
            if c[0].is_zero() {
                continue;
            }
            let a: Vec<Elem> = c[..3].iter().rev().copied().collect();
            let s = coset_vanishing_top(&gamma, &companion(k, &a)).unwrap();
            assert!(s.vanishes() && s.routes_agree());
        }
    }
}

#[test]
fn restriction_to_the_torus() {
    for p in [3u64, 5] {
        let tower = build_tower(p, 1, 2).unwrap();
        let k = tower.base();
        for rep in ["std", "sym2"] {
            let w = ws(2, rep);
            let torus = Torus::new(&tower, &w);
            let gamma = GammaTrace::new(&torus).unwrap();
            let hyper = HyperLookup::new(&tower, &w);
            for a in k.units() {
                for b in k.units() {
                    if a == b {
                        continue;
                    }
                    let lhs = borel_unipotent_sum(&gamma, &[a, b]).unwrap();
                    assert_eq!(lhs, hyper.get(&[a, b]).scale_int(p as i64));
                }
            }
        }
    }
}
