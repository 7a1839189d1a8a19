//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! elapsed time and budget; the test fails if any criterion does.
//!
//! Run with `cargo test -p gamma-acyclic --test acceptance -- --nocapture`.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use gamma_acyclic::arith::{build_tower, gauss_sum, kloosterman, CycNum, Elem, FieldTower, MultCharacter};
use gamma_acyclic::harness::{oracle_phi, vanishing_sweep_gl2, Gl2Table};
use gamma_acyclic::induction::{
    all_flags, borel_unipotent_sum, coset_vanishing_top, has_distinct_roots, induced_trace, steinberg_fiber,
    GammaTrace, HyperLookup,
};
use gamma_acyclic::mirabolic::poly::{all_monic, eval_matrix, from_charpoly, to_charpoly};
use gamma_acyclic::mirabolic::{
    all_rows, companion, coset_charpoly, l_x_rank, lemma_map, normalize, orbit_census, recursion_prediction,
    solve_lemma, stratum_index, Mat,
};
use gamma_acyclic::perm::Perm;
use gamma_acyclic::torus::{
    kummer_convolution_scalar, sigma_fiber_sum, twisted_characters, Action, MellinCalibration, RepSpec, Torus,
    TwistedTorusPoint, WeightSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2026;
/// Magnitude tolerance for |g(χ)| = q^{m/2}; everything else is exact.
const MAGNITUDE_TOL: f64 = 1e-9;

type Verdict = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

/// (p, f) for each q.
fn pf(q: u64) -> (u64, u32) {
    match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => (q, 1),
    }
}

fn tower(q: u64, levels: u32) -> FieldTower {
    let (p, f) = pf(q);
    build_tower(p, f, levels).unwrap()
}

fn named(n: usize, rep: &str) -> WeightSystem {
    WeightSystem::from_spec(&[n], &RepSpec::named(rep)).unwrap()
}

fn unit_charpolys(k: &gamma_acyclic::arith::Level, n: usize) -> Vec<Vec<Elem>> {
    all_monic(k, n).iter().map(|p| to_charpoly(p)).filter(|a| !a[n - 1].is_zero()).collect()
}

// 1
fn gauss_identities() -> Verdict {
    let mut exact = 0;
    let mut hd = 0;
    let mut worst = 0f64;
    for q in [3u64, 4, 5, 7, 9] {
        let t = tower(q, 3);
        for m in 1..=3u32 {
            let qm = q.pow(m);
            let want = (qm as f64).sqrt();
            for chi in MultCharacter::all(&t, m).map_err(e)? {
                if chi.is_trivial() {
                    continue;
                }
                let g = gauss_sum(&t, &chi).map_err(e)?;
                worst = worst.max((g.abs() - want).abs());
                if m == 1 || qm <= 125 {
                    let prod = &g * &gauss_sum(&t, &chi.conj()).map_err(e)?;
                    let rhs = CycNum::from_int(1, chi.at_minus_one(&t).map_err(e)? * qm as i64);
                    ensure(prod == rhs, || format!("g g-bar at q={q} m={m} {chi:?}"))?;
                    exact += 1;
                }
            }
        }
        for chi in MultCharacter::all(&t, 1).map_err(e)? {
            if chi.is_trivial() {
                continue;
            }
            let g = -gauss_sum(&t, &chi).map_err(e)?;
            for m in 2..=3 {
                let lifted = -gauss_sum(&t, &chi.lift(&t, m).map_err(e)?).map_err(e)?;
                ensure(g.pow(m) == lifted, || format!("Hasse-Davenport at q={q} m={m} {chi:?}"))?;
                hd += 1;
            }
        }
    }
    ensure(worst < MAGNITUDE_TOL, || format!("|g| off by {worst:e}"))?;
    Ok(format!("{exact} exact norm identities (q^m <= 125), {hd} lifts, max magnitude error {worst:.1e}"))
}

// 2
fn hyper_is_kloosterman() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3, 4, 5, 7] {
        let t = tower(q, 1);
        for r in 1..=4 {
            let ws = WeightSystem::new(&[1], &[(vec![1], r)]).map_err(e)?;
            let hyper = HyperLookup::new(&t, &ws);
            for x in t.base().units() {
                ensure(hyper.get(&[x]) == kloosterman(&t, x, r).map_err(e)?, || format!("q={q} r={r} t={x:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (q, r, t) triples"))
}

/// The listed weight systems have multiplicity-free weights, so Σ_λ is
/// trivial for them; 2·std and r·[1] on G_m carry nontrivial Σ_λ.
fn sign_systems() -> Vec<(String, WeightSystem)> {
    let mut out: Vec<(String, WeightSystem)> =
        vec![("GL2 std".into(), named(2, "std")), ("GL2 sym2".into(), named(2, "sym2")), ("GL3 std".into(), named(3, "std"))];
    out.push(("GL2 2std".into(), WeightSystem::new(&[2], &[(vec![1, 0], 2), (vec![0, 1], 2)]).unwrap()));
    out.push(("GL3 2std".into(), WeightSystem::new(&[3], &[(vec![1, 0, 0], 2), (vec![0, 1, 0], 2), (vec![0, 0, 1], 2)]).unwrap()));
    for r in 2..=4 {
        out.push((format!("Gm r={r}"), WeightSystem::new(&[1], &[(vec![1], r)]).unwrap()));
    }
    out
}

// 3
fn sign_character() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut nontrivial = 0;
    for q in [2u64, 3, 4, 5] {
        for (name, ws) in sign_systems() {
            let t = tower(q, ws.required_level());
            let units: Vec<Elem> = t.base().units().collect();
            let torus = Torus::new(&t, &ws);
            let hyper = HyperLookup::new(&t, &ws);
            let id = Perm::identity(ws.dim());
            let sigma = ws.sigma_lambda();
            if sigma.len() > 1 {
                nontrivial += 1;
            }
            for _ in 0..20 {
                let x: Vec<Elem> = (0..ws.dim()).map(|_| units[rng.gen_range(0..units.len())]).collect();
                let pt = TwistedTorusPoint::split(&t, &x).map_err(e)?;
                let untwisted = hyper.get(&x);
                for xi in &sigma {
                    let lift = ws.lift_with(&id, xi.clone()).map_err(e)?;
                    let local = torus.local_sum(&lift, &pt).map_err(e)?;
                    ensure(local == untwisted.scale_int(xi.sign()), || format!("{name} q={q} xi={xi:?}"))?;
                }
            }
        }
    }
    Ok(format!("20 points per system, q <= 5; {nontrivial} (system, q) pairs with nontrivial Σ_λ"))
}

// 4
fn kummer_constant() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3, 4, 5] {
        let t = tower(q, 1);
        for ws in [named(2, "std"), named(2, "sym2"), named(3, "std")] {
            let torus = Torus::new(&t, &ws);
            for chi in twisted_characters(&torus, &Perm::identity(ws.dim())).map_err(e)? {
                kummer_convolution_scalar(&torus, &chi).map_err(|err| format!("q={q} {chi:?}: {err:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} characters, ratio constant on T(F_q)"))
}

// 5
fn mellin_factorization() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3, 4, 5] {
        let t = tower(q, 2);
        for rep in ["std", "sym2", "std*det^1"] {
            let ws = named(2, rep);
            let torus = Torus::new(&t, &ws);
            let cal = MellinCalibration::calibrate(&torus).map_err(e)?;
            for w in ws.weyl_group() {
                for theta in twisted_characters(&torus, &w).map_err(e)? {
                    ensure(cal.check(&torus, &w, &theta).map_err(e)?, || format!("{rep} q={q} w={w:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} pairs (w, θ), one calibration per (ρ, q)"))
}

// 6
fn coset_formula_and_rank() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3, 4] {
        let t = tower(q, 1);
        let k = t.base();
        for dim in 2..=4usize {
            let rows = all_rows(k, dim - 1);
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (q << 8) ^ dim as u64);
            for _ in 0..500 {
                let x = Mat::random_invertible(k, dim, &mut rng);
                let nz = normalize(k, &x).map_err(e)?;
                ensure(l_x_rank(k, &nz.x) == nz.m - 1, || format!("rank at q={q} n={dim}"))?;
                for s in &rows {
                    let (_, c) = coset_charpoly(k, &nz.x, nz.m, s).map_err(e)?;
                    ensure(c.formula_matches_direct && c.factorization_holds && c.last_coefficient_fixed, || {
                        format!("q={q} n={dim} x={} u={s:?}", x.display(k))
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} (x, u) pairs, 500 points per (n, q)"))
}

// 7
fn cokernel_bijectivity() -> Verdict {
    let mut cases = 0;
    let mut shared = 0;
    for q in [2u64, 3] {
        let t = tower(q, 1);
        let k = t.base();
        for a in unit_charpolys(k, 2) {
            let c = companion(k, &a);
            for x_e in Mat::general_linear(k, 1) {
                if eval_matrix(k, &from_charpoly(&a), &x_e).det(k).is_zero() {
                    shared += 1;
                }
                let mut images = HashSet::new();
                for s in all_rows(k, 2) {
                    let v1 = Mat::from_elems(2, 1, vec![s[0], Elem::ZERO]);
                    let vm = Mat::from_elems(2, 1, vec![s[1], Elem::ZERO]);
                    let y = lemma_map(k, &c, &x_e, &v1, &vm);
                    ensure(solve_lemma(k, &c, &x_e, &y).map_err(e)? == (v1, vm), || format!("round trip q={q} a={a:?}"))?;
                    images.insert(y.key());
                }
                ensure(images.len() as u64 == q * q, || format!("not bijective q={q} a={a:?}"))?;
                cases += 1;
            }
        }
    }
    ensure(shared > 0, || "no shared-eigenvalue case was reached".into())?;
    Ok(format!("{cases} (a, x_E) cases, {shared} with shared eigenvalues"))
}

// 8
fn census() -> Verdict {
    let mut polys = 0;
    let mut orbits = 0;
    for (q, n) in [(2u64, 2usize), (3, 2), (4, 2), (5, 2), (2, 3)] {
        let t = tower(q, 1);
        let k = t.base();
        for a in unit_charpolys(k, n) {
            let c = orbit_census(k, n, &a, 1 << 22).map_err(e)?;
            let want = recursion_prediction(k, n, &a).map_err(e)?;
            ensure(c.counts() == want, || format!("q={q} n={n} c={a:?}: {:?} vs {want:?}", c.counts()))?;
            polys += 1;
            orbits += c.total();
        }
    }
    Ok(format!("{polys} characteristic polynomials, {orbits} Q_1-orbits"))
}

// 9
fn induction_consistency() -> Verdict {
    let mut n = 0;
    let cases: Vec<(u64, usize, &str)> =
        vec![(2, 2, "std"), (3, 2, "std"), (4, 2, "std"), (5, 2, "sym2"), (7, 2, "std"), (7, 2, "sym2"), (2, 3, "std"), (3, 3, "std")];
    for (q, dim, rep) in cases {
        let t = tower(q, 1);
        let k = t.base();
        let ws = named(dim, rep);
        let hyper = HyperLookup::new(&t, &ws);
        let flags = all_flags(k, dim, 1 << 20).map_err(e)?;
        let id = Perm::identity(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ q);
        let points: Vec<Mat> = if dim == 2 {
            Mat::general_linear(k, 2)
        } else {
            (0..200).map(|_| Mat::random_invertible(k, dim, &mut rng)).collect()
        };
        for g in points {
            let c = g.charpoly(k);
            if !has_distinct_roots(k, &c) {
                continue;
            }
            let eig = steinberg_fiber(&t, &c, &id)
                .map_err(e)?
                .iter()
                .fold(CycNum::zero(1), |acc, pt| &acc + &hyper.get(pt.values()));
            ensure(induced_trace(k, &flags, &hyper, &g).map_err(e)? == eig, || format!("q={q} {rep} g={}", g.display(k)))?;
            n += 1;
        }
    }
    Ok(format!("{n} split regular semisimple points"))
}

/// W-action corruptions that must break the GL(2) vanishing, each on a ρ
/// where it differs from the true action.
fn mutation_breaks(t: &FieldTower, rep: &str, action: Action) -> Result<bool, String> {
    let ws = named(2, rep);
    let torus = Torus::new(t, &ws);
    let bad = GammaTrace::with_action(&torus, action).map_err(e)?;
    Ok(vanishing_sweep_gl2(&bad, None).map_err(e)?.iter().any(|r| !r.geometric.is_zero()))
}

// 10
fn gl2_main() -> Verdict {
    let mut cosets = 0;
    let mut points = 0;
    let mut notes = Vec::new();
    for q in [2u64, 3, 4, 5, 7] {
        let t = tower(q, 2);
        let table = Gl2Table::build(&t).map_err(e)?;
        ensure(table.check_orthogonality().ok(), || format!("character table q={q}"))?;
        for rep in ["std", "sym2", "std*det^1"] {
            let ws = named(2, rep);
            let torus = Torus::new(&t, &ws);
            let gamma = GammaTrace::new(&torus).map_err(e)?;
            let oracle = oracle_phi(&table, &gamma).map_err(|err| format!("oracle {rep} q={q}: {err:?}"))?;
            if oracle.rank_deficient() {
                notes.push(format!("{rep}@{q}: rank {}/{}", oracle.rank, oracle.unknowns));
            }
            for r in vanishing_sweep_gl2(&gamma, Some((&table, &oracle))).map_err(e)? {
                ensure(r.geometric.is_zero(), || format!("geometric {rep} q={q} g={}", r.g.display(t.base())))?;
                ensure(r.oracle.as_ref().is_some_and(CycNum::is_zero), || format!("oracle {rep} q={q}"))?;
                ensure(r.disagreements == 0, || format!("routes differ {rep} q={q}"))?;
                cosets += 1;
                points += q;
            }
            // sign(ξ)sign(w) = +1 here, so the untwisted action equals the
            // true one; the sign-flipped action is the corruption that differs
            ensure(mutation_breaks(&t, rep, Action::SignFlipped)?, || format!("sign-flipped survives {rep} q={q}"))?;
        }
        // sym3 has sign(ξ)sign(w) = −1 on the swap, so dropping the twist is
        // a genuine corruption
        ensure(mutation_breaks(&t, "sym3", Action::Untwisted)?, || format!("untwisted survives sym3 q={q}"))?;
    }
    Ok(format!(
        "{cosets} cosets, {points} points compared; mutations break; oracle rank deficiency: {}",
        if notes.is_empty() { "none".into() } else { notes.join(", ") }
    ))
}

// 11
fn gl3_top() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3] {
        let t = tower(q, 6);
        let k = t.base();
        let ws = named(3, "std");
        let torus = Torus::new(&t, &ws);
        let gamma = GammaTrace::new(&torus).map_err(e)?;
        let mut xs: Vec<Mat> = unit_charpolys(k, 3).iter().map(|a| companion(k, a)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ q);
        let target = xs.len() + 100;
        while xs.len() < target {
            let x = Mat::random_invertible(k, 3, &mut rng);
            if stratum_index(k, &x) == 3 {
                xs.push(x);
            }
        }
        for x in &xs {
            let s = coset_vanishing_top(&gamma, x).map_err(e)?;
            ensure(s.vanishes() && s.routes_agree(), || format!("q={q} x={}", x.display(k)))?;
            n += 1;
        }
    }
    let mut fibers = 0;
    for (q, dim, rep) in [(2u64, 2usize, "std"), (3, 2, "sym2"), (5, 2, "std*det^1"), (5, 2, "std"), (2, 3, "std"), (3, 3, "std")] {
        let t = tower(q, if dim == 2 { 2 } else { 6 });
        let ws = named(dim, rep);
        let torus = Torus::new(&t, &ws);
        for z in t.base().units() {
            ensure(sigma_fiber_sum(&torus, 0, z).map_err(e)?.is_zero(), || format!("fiber q={q} {rep} z={z:?}"))?;
            fibers += 1;
        }
    }
    Ok(format!("{n} top-stratum points, {fibers} determinant fibers"))
}

// 12
fn restriction() -> Verdict {
    let mut n = 0;
    for q in [2u64, 3, 4, 5] {
        let t = tower(q, 2);
        let k = t.base();
        for rep in ["std", "sym2", "std*det^1"] {
            let ws = named(2, rep);
            let torus = Torus::new(&t, &ws);
            let gamma = GammaTrace::new(&torus).map_err(e)?;
            let hyper = HyperLookup::new(&t, &ws);
            let mut unit: Option<CycNum> = None;
            for a in k.units() {
                for b in k.units().filter(|&b| b != a) {
                    let lhs = borel_unipotent_sum(&gamma, &[a, b]).map_err(e)?;
                    let h = hyper.get(&[a, b]);
                    if h.is_zero() {
                        ensure(lhs.is_zero(), || format!("q={q} {rep}"))?;
                        continue;
                    }
                    let r = &lhs * &h.inv().unwrap();
                    match &unit {
                        None => unit = Some(r),
                        Some(u) => ensure(*u == r, || format!("ratio varies q={q} {rep}"))?,
                    }
                    n += 1;
                }
            }
            if let Some(u) = unit {
                ensure(u == CycNum::from_int(1, q as i64), || format!("unit {u} ≠ q at q={q} {rep}"))?;
            }
        }
    }
    Ok(format!("{n} distinct-eigenvalue points; calibrated unit = q throughout"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Verdict,
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Gauss sum identities", budget: s(10), run: gauss_identities },
        Criterion { id: 2, name: "hypergeometric sum = Kloosterman sum", budget: s(30), run: hyper_is_kloosterman },
        Criterion { id: 3, name: "Σ_λ acts by the sign character", budget: s(60), run: sign_character },
        Criterion { id: 4, name: "Kummer convolution is scalar", budget: s(120), run: kummer_constant },
        Criterion { id: 5, name: "Mellin transform = unit × Gauss sums", budget: s(60), run: mellin_factorization },
        Criterion { id: 6, name: "coset char poly formula and rank", budget: s(60), run: coset_formula_and_rank },
        Criterion { id: 7, name: "cokernel map is bijective", budget: s(60), run: cokernel_bijectivity },
        Criterion { id: 8, name: "Q_1-orbit census = recursion", budget: s(300), run: census },
        Criterion { id: 9, name: "flag sum = eigenvalue-ordering sum", budget: s(120), run: induction_consistency },
        Criterion { id: 10, name: "GL(2) unipotent coset sums vanish", budget: s(600), run: gl2_main },
        Criterion { id: 11, name: "GL(3) top-stratum sums vanish", budget: s(600), run: gl3_top },
        Criterion { id: 12, name: "restriction to the torus", budget: s(60), run: restriction },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match verdict {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d),
        };
        println!(
            "{} [{:>2}] {:<40} {:>8.2}s / {:>4}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
