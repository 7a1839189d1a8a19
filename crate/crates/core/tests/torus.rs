use gamma_acyclic::arith::{build_tower, kloosterman, psi_eval, CycNum, MultCharacter};
use gamma_acyclic::perm::Perm;
use gamma_acyclic::torus::{
    hyper_trace, kummer_convolution_scalar, mellin_gamma, sigma_fiber_sum, sigma_fiber_sums,
    twisted_characters, Action, MellinCalibration, RepSpec, Torus, TwistedTorusPoint, WeightSystem,
};

fn ws(shape: &[usize], rep: &str) -> WeightSystem {
    WeightSystem::from_spec(shape, &RepSpec::named(rep)).unwrap()
}

#[test]
fn untwisted_trace_is_hyper_trace() {
    for (p, shape, rep) in [(3, vec![2], "std"), (5, vec![2], "sym2"), (3, vec![3], "std"), (5, vec![2], "std*det^1")] {
        let tower = build_tower(p, 1, 6).unwrap();
        let w = ws(&shape, rep);
        let torus = Torus::new(&tower, &w);
        for pt in torus.twisted_points(&Perm::identity(w.dim())).unwrap() {
            let a = torus.twisted_stalk_trace(&pt).unwrap();
            let b = hyper_trace(&tower, &w, pt.values()).unwrap();
            assert_eq!(a, b, "{rep} at {pt:?}");
        }
    }
}

#[test]
fn swap_trace_for_std_is_psi_of_trace() {
    let tower = build_tower(3, 1, 2).unwrap();
    let w = ws(&[2], "std");
    let torus = Torus::new(&tower, &w);
    let swap = Perm::transposition(2, 0, 1);
    let l2 = tower.level(2).unwrap();
    for alpha in l2.units() {
        let pt = TwistedTorusPoint::new(&tower, swap.clone(), vec![alpha]).unwrap();
        let v = torus.twisted_stalk_trace(&pt).unwrap();
        assert_eq!(v, psi_eval(&tower, 2, alpha).unwrap());
    }
}

#[test]
fn kloosterman_sign_action() {
    // ξ ∈ Σ_λ acting on G_m^r with all weights equal: local sum = sign(ξ)·t_Ψ
    let tower = build_tower(3, 1, 4).unwrap();
    for r in 2..=4 {
        let w = WeightSystem::new(&[1], &[(vec![1], r)]).unwrap();
        let torus = Torus::new(&tower, &w);
        let id = Perm::identity(1);
        for xi in w.sigma_lambda() {
            let lift = w.lift_with(&id, xi.clone()).unwrap();
            for t in tower.base().units() {
                let pt = TwistedTorusPoint::split(&tower, &[t]).unwrap();
                let naive = torus.local_sum(&lift, &pt).unwrap();
                let k = kloosterman(&tower, t, r).unwrap();
                assert_eq!(naive, k.scale_int(xi.sign()), "r={r} xi={xi:?}");
                assert_eq!(torus.trace_with(&lift, &pt, Action::Twisted).unwrap(), k);
            }
        }
    }
}

#[test]
fn sigma_fiber_sums_vanish() {
    for (p, shape, rep) in [(3, vec![2], "std"), (5, vec![2], "sym2"), (3, vec![3], "std"), (2, vec![3], "std"), (5, vec![2], "sym3")] {
        let tower = build_tower(p, 1, 6).unwrap();
        let w = ws(&shape, rep);
        let torus = Torus::new(&tower, &w);
        for z in tower.base().units() {
            assert!(sigma_fiber_sum(&torus, 0, z).unwrap().is_zero(), "{rep} q={p}");
        }
    }
}

#[test]
fn sigma_fiber_mutations_do_not_vanish() {
    let tower = build_tower(5, 1, 2).unwrap();
    let w = ws(&[2], "sym3");
    let torus = Torus::new(&tower, &w);
    let sums = sigma_fiber_sums(&torus, 0, Action::Untwisted).unwrap();
    assert!(sums.iter().any(|s| !s.is_zero()));
    let w = ws(&[2], "std");
    let torus = Torus::new(&tower, &w);
    let sums = sigma_fiber_sums(&torus, 0, Action::SignFlipped).unwrap();
    assert!(sums.iter().any(|s| !s.is_zero()));
}

#[test]
fn mellin_factorization_gl2() {
    for p in [2u64, 3, 5] {
        let tower = build_tower(p, 1, 2).unwrap();
        for rep in ["std", "sym2", "std*det^1"] {
            let w = ws(&[2], rep);
            let torus = Torus::new(&tower, &w);
            let cal = MellinCalibration::calibrate(&torus).unwrap();
            for g in w.weyl_group() {
                for theta in twisted_characters(&torus, &g).unwrap() {
                    assert!(cal.check(&torus, &g, &theta).unwrap(), "{rep} q={p} w={g:?}");
                }
            }
        }
    }
}

#[test]
fn mellin_gl1_q3() {
    let tower = build_tower(3, 1, 1).unwrap();
    let w = ws(&[1], "std");
    let torus = Torus::new(&tower, &w);
    let triv = vec![MultCharacter::trivial(&tower, 1).unwrap()];
    assert_eq!(mellin_gamma(&torus, &Perm::identity(1), &triv).unwrap(), CycNum::from_int(1, 1));
    assert_eq!(kummer_convolution_scalar(&torus, &triv).unwrap(), CycNum::from_int(1, 1));
}

#[test]
fn kummer_constant_for_all_characters() {
    let tower = build_tower(3, 1, 1).unwrap();
    let w = ws(&[2], "sym2");
    let torus = Torus::new(&tower, &w);
    for a in 0..2 {
        for b in 0..2 {
            let chi = vec![MultCharacter::new(&tower, 1, a).unwrap(), MultCharacter::new(&tower, 1, b).unwrap()];
            kummer_convolution_scalar(&torus, &chi).unwrap();
        }
    }
}
