use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::numth::lcm;
use crate::arith::{build_tower, gauss_sum, kloosterman, CycNum, Elem, FieldTower, Level, MultCharacter};
use crate::error::{Error, Result};
use crate::induction::{
    all_flags, borel_unipotent_sum, coset_vanishing_top, has_distinct_roots, induced_trace, is_regular,
    steinberg_fiber, GammaTrace, HyperLookup,
};
use crate::mirabolic::poly::{all_monic, eval_matrix, from_charpoly, mul, to_charpoly};
use crate::mirabolic::{
    all_rows, bernstein_coords, companion, companion_normalize, coset_charpoly, l_x_rank, lemma_map, normalize,
    orbit_census, parabolic_rank_classify, pivot_shape, reassemble, recursion_prediction, solve_lemma,
    stratum_index, uq_element, Mat,
};
use crate::perm::Perm;
use crate::torus::{
    kummer_convolution_scalar, sigma_fiber_sums, twisted_characters, Action, MellinCalibration, Torus,
    TwistedTorusPoint, WeightSystem,
};

use super::config::Config;
use super::gl2::{oracle_phi, vanishing_sweep_gl2, Gl2Table};
use super::report::{CheckRecord, Parameters, Report, Status, SuiteReport};

/// Gauss-sum norm identities are checked exactly at levels with q^m up to
/// this size; beyond it the cyclotomic products get expensive.
pub const GAUSS_EXACT_LIMIT: u64 = 125;
const RING_AXIOM_TRIPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Arith,
    Torus,
    Mirabolic,
    Induction,
    Gl2Main,
    Gl3Top,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Arith, Suite::Torus, Suite::Mirabolic, Suite::Induction, Suite::Gl2Main, Suite::Gl3Top, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arith => "arith",
            Suite::Torus => "torus",
            Suite::Mirabolic => "mirabolic",
            Suite::Induction => "induction",
            Suite::Gl2Main => "gl2-main",
            Suite::Gl3Top => "gl3-top",
            Suite::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown suite {s:?}; try `verify list-suites`")))
    }

    pub fn summary(self) -> &'static str {
        match self {
            Suite::Arith => "finite-field tower, Gauss and Kloosterman sums, cyclotomic arithmetic",
            Suite::Torus => "hypergeometric traces on twisted tori and their Mellin transforms",
            Suite::Mirabolic => "mirabolic strata, the coset characteristic polynomial, orbit census",
            Suite::Induction => "flag induction and the gamma trace on the regular locus",
            Suite::Gl2Main => "unipotent coset sums of the gamma function on GL(2)",
            Suite::Gl3Top => "top-stratum coset sums on GL(3) and determinant-fiber sums",
            Suite::Oracle => "the GL(2) character-table oracle",
        }
    }

    pub fn explain(self) -> &'static str {
        match self {
            Suite::Arith => {
                "Builds F_q ⊂ F_{q^2} ⊂ … ⊂ F_{q^M} with norm-compatible generators and checks that the \
                 embeddings are ring maps. For every nontrivial character χ of F_{q^m}^× it checks \
                 g(χ)g(χ̄) = χ(−1)q^m exactly (for q^m ≤ 125) and |g(χ)| = q^{m/2} in floating point. \
                 Hasse–Davenport is checked as (−g(χ))^m = −g(χ∘N) for χ on F_q^× and m ≤ min(3, M). \
                 The hypergeometric sum of r copies of the weight 1 on G_m is compared with the \
                 Kloosterman sum (−1)^r Σ_{x_1⋯x_r = t} ψ(x_1 + ⋯ + x_r). Seeded random triples test \
                 the field axioms of Q(ζ_N)."
            }
            Suite::Torus => {
                "For the weight system λ of ρ on the diagonal torus T, the twisted trace at a point of \
                 T_w(F_q) is the signed sum of ψ(Σ x_s) over x with ξF(x) = x and p_λ(x) = t, where ξ \
                 lifts w to the slots. Checks: the untwisted trace equals the hypergeometric sum; every \
                 ξ in the stabilizer Σ_λ acts through its sign; the trace does not depend on the lift; \
                 the Mellin transform over T_w(F_q) equals one frozen unit times a product of Gauss sums \
                 over Frobenius orbits; t_Ψ ⋆ χ is a multiple of χ for every character χ of T(F_q); and \
                 the W_j-average of the twisted traces summed over a fiber of det_j vanishes, while the \
                 same sum with a corrupted W-action does not."
            }
            Suite::Mirabolic => {
                "Q is the stabilizer of the line through e_1 and U_Q its unipotent radical. X_m is the \
                 locus where e_1 generates an m-dimensional x-stable subspace. Checks: X_m is stable \
                 under left U_Q; Q_1-normalization to [[C(a), y], [0, x_E]] round-trips and factors the \
                 characteristic polynomial; (v_1, v_{m−1}) ↦ v_1 + v_{m−1}x_E − C(a)v_{m−1} is bijective; \
                 the characteristic polynomial of ux for u ∈ U_Q follows b_r = a_r + Σ a_i v_{r−i} + v_r \
                 and the linear part has rank m − 1; Q_1-orbit counts per characteristic polynomial match \
                 the recursion over strata; parabolic rank normal forms are idempotent."
            }
            Suite::Induction => {
                "Compares the flag-variety sum Σ_{gF = F} t_Ψ(g|gr F) with the sum over eigenvalue \
                 orderings on regular semisimple points, checks that the gamma trace φ = (1/|W|) Σ_w \
                 Σ_{c(t) = c(x)} (twisted trace) is a class function, that for ρ = std it equals \
                 (−1)^n ψ(tr x), that Σ_{u ∈ U_B} φ(ut) = q·t_Ψ(t) on the torus, and that the sums \
                 Σ_{u ∈ U_Q} φ(ux) vanish on the top stratum by two independent routes."
            }
            Suite::Gl2Main => {
                "For every g ∈ GL(2, F_q) outside the Borel subgroup B, Σ_{b ∈ F_q} φ([[1, b], [0, 1]]g) = 0 \
                 exactly. The sum is computed from the twisted torus traces and, independently, from the \
                 character table of GL(2, F_q); the two routes are compared pointwise. Corrupting the \
                 W-action must break the vanishing."
            }
            Suite::Gl3Top => {
                "On GL(3), the sums Σ_{u ∈ U_Q} φ(ux) vanish for x with cyclic vector e_1: for the \
                 companion matrix of every cubic with nonzero constant term and for 100 seeded random \
                 points, by the direct sum over u and by the sum over the determinant fiber of the \
                 characteristic polynomial. The W-averaged determinant-fiber sums on the torus vanish \
                 for every value of det."
            }
            Suite::Oracle => {
                "Builds the character table of GL(2, F_q) (q ≤ 11), checks both orthogonality relations \
                 exactly, and solves for the class function Σ_π (dim π/|G|) γ_π χ_π that agrees with φ \
                 on regular classes. Generic γ_π are Mellin transforms of the torus traces up to two \
                 unknown units; the rest are unknowns of an exact linear system over Q(ζ). Reports the \
                 convention that makes the system consistent, its rank, the units, and the Mellin \
                 calibration."
            }
        }
    }

    /// Whether the suite makes sense for this configuration.
    pub fn applicable(self, cfg: &Config) -> Result<()> {
        let bad = |why: &str| Err(Error::ConfigInvalid(format!("suite {} {why}", self.name())));
        let n = cfg.gl_n();
        match self {
            Suite::Arith | Suite::Torus => Ok(()),
            Suite::Mirabolic => match n {
                Some(2..=4) => Ok(()),
                _ => bad("needs a single GL(n) factor with 2 ≤ n ≤ 4"),
            },
            Suite::Induction => match n {
                Some(2..=3) => Ok(()),
                _ => bad("needs a single GL(n) factor with n ∈ {2, 3}"),
            },
            Suite::Gl2Main | Suite::Oracle => match n {
                Some(2) if cfg.q() <= 11 || self == Suite::Gl2Main => Ok(()),
                Some(2) => bad("builds the GL(2) character table, which is capped at q ≤ 11"),
                _ => bad("needs shape [2]"),
            },
            Suite::Gl3Top => match n {
                Some(3) => Ok(()),
                _ => bad("needs shape [3]"),
            },
        }
    }

    /// Smallest tower level the suite can run with, and the level it uses
    /// when the config leaves M open.
    pub fn tower_levels(self, ws: &WeightSystem) -> (u32, u32) {
        let weyl = ws.required_level();
        let n = ws.dim() as u64;
        let steinberg = (1..=n).fold(1, lcm) as u32;
        match self {
            Suite::Arith => (1, 3),
            Suite::Torus => (weyl, weyl),
            Suite::Mirabolic => (1, 1),
            Suite::Induction | Suite::Gl2Main | Suite::Gl3Top | Suite::Oracle => {
                let l = weyl.max(steinberg);
                (l, l)
            }
        }
    }
}

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Outcome {
    verdict: Verdict,
    value: Option<CycNum>,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    let d = detail.into();
    Outcome { verdict: if ok { Verdict::Pass(d) } else { Verdict::Fail(d) }, value: None }
}

fn skipped(detail: impl Into<String>) -> Outcome {
    Outcome { verdict: Verdict::Skip(detail.into()), value: None }
}

impl Outcome {
    fn with_value(mut self, v: CycNum) -> Self {
        self.value = Some(v);
        self
    }
}

struct Ctx<'a> {
    cfg: &'a Config,
    tower: &'a FieldTower,
    ws: &'a WeightSystem,
    torus: &'a Torus<'a>,
    seed: u64,
    timings: bool,
}

impl<'a> Ctx<'a> {
    fn k(&self) -> &'a Level {
        self.tower.base()
    }

    fn cap(&self) -> u64 {
        self.cfg.enumeration_cap()
    }

    fn q(&self) -> u64 {
        self.tower.q()
    }

    /// An RNG that depends only on the seed and the check name.
    fn rng(&self, check: &str) -> ChaCha8Rng {
        let h = check.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x1000_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    fn check(&self, name: &str, f: impl FnOnce() -> Result<Outcome>) -> CheckRecord {
        let start = Instant::now();
        let mut rec = match f() {
            Ok(o) => {
                let mut r = match o.verdict {
                    Verdict::Pass(d) => CheckRecord::new(name, true, d),
                    Verdict::Fail(d) => CheckRecord::new(name, false, d),
                    Verdict::Skip(d) => CheckRecord::skip(name, d),
                };
                if let Some(v) = &o.value {
                    r = r.with_value(v);
                }
                r
            }
            Err(e) => CheckRecord::error(name, &e),
        };
        if self.timings {
            rec.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        rec
    }

    fn gamma(&self) -> Result<GammaTrace<'a>> {
        GammaTrace::new(self.torus)
    }
}

fn points_of(k: &Level, n: usize, samples: usize, rng: &mut ChaCha8Rng, cap: u64) -> Vec<Mat> {
    if (k.size() as f64).powi((n * n) as i32) <= cap as f64 && n <= 2 {
        Mat::general_linear(k, n)
    } else {
        (0..samples).map(|_| Mat::random_invertible(k, n, rng)).collect()
    }
}

/// Monic polynomials of degree n with nonzero constant term, as c(x) coefficients.
fn unit_charpolys(k: &Level, n: usize) -> Vec<Vec<Elem>> {
    all_monic(k, n).iter().map(|p| to_charpoly(p)).filter(|a| !a[n - 1].is_zero()).collect()
}

// ---------------------------------------------------------------- arith

fn arith(cx: &Ctx) -> Vec<CheckRecord> {
    vec![
        cx.check("tower-embeddings", || tower_embeddings(cx)),
        cx.check("gauss-norm", || gauss_norm(cx)),
        cx.check("gauss-magnitude", || gauss_magnitude(cx)),
        cx.check("hasse-davenport", || hasse_davenport(cx)),
        cx.check("kloosterman-is-hypergeometric", || kloosterman_hyper(cx)),
        cx.check("cyclotomic-ring-axioms", || ring_axioms(cx)),
    ]
}

fn tower_embeddings(cx: &Ctx) -> Result<Outcome> {
    let t = cx.tower;
    let mut pairs = 0u64;
    for a in 1..=t.max_level() {
        let la = t.level(a)?;
        for b in (2 * a..=t.max_level()).step_by(a as usize) {
            if la.size().pow(2) > cx.cap() {
                continue;
            }
            let lb = t.level(b)?;
            if t.norm(b, a, lb.gen())? != la.gen() {
                return Ok(outcome(false, format!("N(gen_{b}) ≠ gen_{a}")));
            }
            for x in la.elements() {
                let ex = t.embed(a, b, x)?;
                for y in la.elements() {
                    let ey = t.embed(a, b, y)?;
                    if t.embed(a, b, la.add(x, y))? != lb.add(ex, ey) || t.embed(a, b, la.mul(x, y))? != lb.mul(ex, ey) {
                        return Ok(outcome(false, format!("embedding {a} → {b} is not a ring map")));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(outcome(true, format!("{pairs} pairs; norms of generators compatible")))
}

fn exact_levels(cx: &Ctx) -> Vec<u32> {
    (1..=cx.tower.max_level()).filter(|&m| m == 1 || cx.q().pow(m) <= GAUSS_EXACT_LIMIT).collect()
}

fn gauss_norm(cx: &Ctx) -> Result<Outcome> {
    let mut n = 0;
    for m in exact_levels(cx) {
        let qm = cx.q().pow(m) as i64;
        for chi in MultCharacter::all(cx.tower, m)? {
            if chi.is_trivial() {
                continue;
            }
            let lhs = &gauss_sum(cx.tower, &chi)? * &gauss_sum(cx.tower, &chi.conj())?;
            let rhs = CycNum::from_int(1, chi.at_minus_one(cx.tower)? * qm);
            if lhs != rhs {
                return Ok(outcome(false, format!("level {m}, χ = {chi:?}")));
            }
            n += 1;
        }
    }
    Ok(outcome(true, format!("{n} characters at levels {:?}", exact_levels(cx))))
}

fn gauss_magnitude(cx: &Ctx) -> Result<Outcome> {
    let mut worst = 0f64;
    let mut n = 0;
    for m in 1..=cx.tower.max_level() {
        if cx.q().pow(m) > 4 * GAUSS_EXACT_LIMIT.pow(2) {
            break;
        }
        let want = (cx.q() as f64).powf(m as f64 / 2.0);
        for chi in MultCharacter::all(cx.tower, m)? {
            if !chi.is_trivial() {
                worst = worst.max((gauss_sum(cx.tower, &chi)?.abs() - want).abs());
                n += 1;
            }
        }
    }
    Ok(outcome(worst < 1e-9, format!("{n} characters, max | |g| − q^(m/2) | = {worst:.2e}")))
}

fn hasse_davenport(cx: &Ctx) -> Result<Outcome> {
    let top = cx.tower.max_level().min(3);
    let mut n = 0;
    for chi in MultCharacter::all(cx.tower, 1)? {
        if chi.is_trivial() {
            continue;
        }
        let g = -gauss_sum(cx.tower, &chi)?;
        for m in 2..=top {
            let lifted = -gauss_sum(cx.tower, &chi.lift(cx.tower, m)?)?;
            if g.pow(m) != lifted {
                return Ok(outcome(false, format!("χ = {chi:?}, m = {m}")));
            }
            n += 1;
        }
    }
    if top < 2 {
        return Ok(skipped("tower has a single level"));
    }
    Ok(outcome(true, format!("{n} (χ, m) pairs, m ≤ {top}")))
}

fn kloosterman_hyper(cx: &Ctx) -> Result<Outcome> {
    let qm = cx.q() - 1;
    let mut done = Vec::new();
    for r in 1..=4usize {
        if qm.pow(r as u32) > cx.cap() {
            break;
        }
        let ws = WeightSystem::new(&[1], &[(vec![1], r)])?;
        let hyper = HyperLookup::new(cx.tower, &ws);
        for t in cx.k().units() {
            if hyper.get(&[t]) != kloosterman(cx.tower, t, r)? {
                return Ok(outcome(false, format!("r = {r}, t = {t:?}")));
            }
        }
        done.push(r);
    }
    Ok(outcome(true, format!("r ∈ {done:?}, all t ∈ F_q^×")))
}

fn random_cyc(rng: &mut ChaCha8Rng, n: u32) -> CycNum {
    let counts: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    CycNum::from_counts(n, &counts)
}

fn ring_axioms(cx: &Ctx) -> Result<Outcome> {
    let n = lcm(cx.tower.p(), cx.q() - 1) as u32;
    let mut rng = cx.rng("cyclotomic-ring-axioms");
    for i in 0..RING_AXIOM_TRIPLES {
        let (a, b, c) = (random_cyc(&mut rng, n), random_cyc(&mut rng, n), random_cyc(&mut rng, n));
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &b == &b * &a
            && (&a * &b).conj() == &a.conj() * &b.conj()
            && a.conj().conj() == a
            && a.inv().is_none_or(|ai| (&a * &ai) == CycNum::one(1));
        let (x, y) = ((&a * &b).to_complex(), (a.to_complex(), b.to_complex()));
        let prod = (y.0 .0 * y.1 .0 - y.0 .1 * y.1 .1, y.0 .0 * y.1 .1 + y.0 .1 * y.1 .0);
        let scale = 1.0 + prod.0.abs() + prod.1.abs();
        if !ok || (x.0 - prod.0).abs() > 1e-9 * scale || (x.1 - prod.1).abs() > 1e-9 * scale {
            return Ok(outcome(false, format!("triple {i} in Q(ζ_{n})")));
        }
    }
    Ok(outcome(true, format!("{RING_AXIOM_TRIPLES} triples in Q(ζ_{n})")))
}

// ---------------------------------------------------------------- torus

fn torus_suite(cx: &Ctx) -> Vec<CheckRecord> {
    let hyper = HyperLookup::new(cx.tower, cx.ws);
    vec![
        cx.check("untwisted-is-hypergeometric", || untwisted(cx, &hyper)),
        cx.check("sign-character", || sign_character(cx, &hyper)),
        cx.check("lift-independence", || lift_independence(cx)),
        cx.check("mellin-factorization", || mellin(cx)),
        cx.check("kummer-convolution", || kummer(cx)),
        cx.check("sigma-fiber-vanishing", || sigma_fibers(cx)),
        cx.check("sign-flipped-control", || control(cx, Action::SignFlipped)),
        cx.check("untwisted-control", || control(cx, Action::Untwisted)),
    ]
}

fn untwisted(cx: &Ctx, hyper: &HyperLookup) -> Result<Outcome> {
    let pts = cx.torus.twisted_points(&Perm::identity(cx.ws.dim()))?;
    for pt in &pts {
        if cx.torus.twisted_stalk_trace(pt)? != hyper.get(pt.values()) {
            return Ok(outcome(false, format!("at {pt:?}")));
        }
    }
    Ok(outcome(true, format!("{} points of T(F_q)", pts.len())))
}

fn sample_split_points(cx: &Ctx, check: &str, count: usize) -> Result<Vec<TwistedTorusPoint>> {
    let mut rng = cx.rng(check);
    let units: Vec<Elem> = cx.k().units().collect();
    (0..count)
        .map(|_| {
            let t: Vec<Elem> = (0..cx.ws.dim()).map(|_| units[rng.gen_range(0..units.len())]).collect();
            TwistedTorusPoint::split(cx.tower, &t)
        })
        .collect()
}

fn sign_character(cx: &Ctx, hyper: &HyperLookup) -> Result<Outcome> {
    let id = Perm::identity(cx.ws.dim());
    let pts = sample_split_points(cx, "sign-character", 20)?;
    let sigma = cx.ws.sigma_lambda();
    for xi in &sigma {
        let lift = cx.ws.lift_with(&id, xi.clone())?;
        for pt in &pts {
            let t = hyper.get(pt.values());
            if cx.torus.local_sum(&lift, pt)? != t.scale_int(xi.sign())
                || cx.torus.trace_with(&lift, pt, Action::Twisted)? != t
            {
                return Ok(outcome(false, format!("ξ = {xi:?} at {pt:?}")));
            }
        }
    }
    Ok(outcome(true, format!("|Σ_λ| = {}, 20 points", sigma.len())))
}

fn lift_independence(cx: &Ctx) -> Result<Outcome> {
    let sigma: Vec<Perm> = cx.ws.sigma_lambda().into_iter().filter(|t| !t.is_identity()).take(3).collect();
    if sigma.is_empty() {
        return Ok(skipped("Σ_λ is trivial: every weight has multiplicity one, so the lift is unique"));
    }
    let mut n = 0;
    for w in cx.ws.weyl_group() {
        let canonical = cx.ws.weyl_lift(&w)?;
        let pts = cx.torus.twisted_points(&w)?;
        for tau in &sigma {
            let other = cx.ws.lift_with(&w, canonical.xi.compose(tau))?;
            for pt in &pts {
                if cx.torus.trace_with(&other, pt, Action::Twisted)? != cx.torus.twisted_stalk_trace(pt)? {
                    return Ok(outcome(false, format!("w = {w:?}, τ = {tau:?} at {pt:?}")));
                }
                n += 1;
            }
        }
    }
    Ok(outcome(true, format!("{n} (lift, point) pairs")))
}

fn mellin(cx: &Ctx) -> Result<Outcome> {
    let cal = MellinCalibration::calibrate(cx.torus)?;
    let mut n = 0u64;
    for w in cx.ws.weyl_group() {
        let thetas = twisted_characters(cx.torus, &w)?;
        if (thetas.len() as u64).pow(2) > cx.cap() {
            return Ok(skipped(format!("{} characters of T_w exceed the enumeration cap", thetas.len())));
        }
        for theta in &thetas {
            if !cal.check(cx.torus, &w, theta)? {
                return Ok(outcome(false, format!("w = {w:?}, θ = {theta:?}")).with_value(cal.unit));
            }
            n += 1;
        }
    }
    Ok(outcome(true, format!("{n} pairs (w, θ), one calibration")).with_value(cal.unit))
}

fn kummer(cx: &Ctx) -> Result<Outcome> {
    let d = cx.ws.dim() as u32;
    let qm = cx.q() - 1;
    if (qm as f64).powi(3 * d as i32) > cx.cap() as f64 * 64.0 {
        return Ok(skipped(format!("(q−1)^{} exceeds the enumeration cap", 3 * d)));
    }
    let chis = twisted_characters(cx.torus, &Perm::identity(d as usize))?;
    for chi in &chis {
        match kummer_convolution_scalar(cx.torus, chi) {
            Ok(_) => {}
            Err(Error::NotConstant) => return Ok(outcome(false, format!("χ = {chi:?}"))),
            Err(e) => return Err(e),
        }
    }
    Ok(outcome(true, format!("{} characters of T(F_q)", chis.len())))
}

fn gl_factors(ws: &WeightSystem) -> Vec<usize> {
    ws.factors().iter().enumerate().filter(|(_, r)| r.len() >= 2).map(|(j, _)| j).collect()
}

fn sigma_fibers(cx: &Ctx) -> Result<Outcome> {
    let js = gl_factors(cx.ws);
    if js.is_empty() {
        return Ok(skipped("no factor with n_j ≥ 2"));
    }
    for &j in &js {
        let sums = sigma_fiber_sums(cx.torus, j, Action::Twisted)?;
        if let Some(z) = sums.iter().position(|s| !s.is_zero()) {
            return Ok(outcome(false, format!("factor {j}, det = g^{z}")));
        }
    }
    Ok(outcome(true, format!("factors {js:?}, every det value")))
}

/// A corrupted action must be caught. When it coincides with the true one
/// on every W_j, nothing can be caught and the check is skipped.
fn control(cx: &Ctx, action: Action) -> Result<Outcome> {
    let js = gl_factors(cx.ws);
    if js.is_empty() {
        return Ok(skipped("no factor with n_j ≥ 2"));
    }
    let mut tested = false;
    for &j in &js {
        let same = cx
            .ws
            .weyl_factor(j)
            .iter()
            .map(|w| cx.ws.weyl_lift(w))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|l| action.unit(l) == Action::Twisted.unit(l));
        if same {
            continue;
        }
        tested = true;
        if sigma_fiber_sums(cx.torus, j, action)?.iter().any(|s| !s.is_zero()) {
            return Ok(outcome(true, format!("{action:?} action breaks vanishing on factor {j}")));
        }
    }
    if !tested {
        return Ok(skipped(format!("{action:?} action coincides with the true one for this weight system")));
    }
    Ok(outcome(false, format!("{action:?} action still vanishes")))
}

// ---------------------------------------------------------------- mirabolic

fn mirabolic(cx: &Ctx) -> Vec<CheckRecord> {
    let n = cx.ws.dim();
    vec![
        cx.check("uq-stability", || uq_stability(cx, n)),
        cx.check("normalization-round-trip", || round_trip(cx, n)),
        cx.check("cokernel-bijectivity", || bijectivity(cx, n)),
        cx.check("coset-charpoly-formula", || coset_formula(cx, n)),
        cx.check("orbit-census", || census(cx, n)),
        cx.check("parabolic-normal-form", || parabolic(cx, n)),
    ]
}

fn uq_stability(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    let us: Vec<Mat> = all_rows(k, n - 1).iter().map(|s| uq_element(k, s)).collect();
    let mut rng = cx.rng("uq-stability");
    for _ in 0..60 {
        let x = Mat::random_invertible(k, n, &mut rng);
        let m = stratum_index(k, &x);
        if let Some(u) = us.iter().find(|u| stratum_index(k, &u.mul(k, &x)) != m) {
            return Ok(outcome(false, format!("x = {}, u = {}", x.display(k), u.display(k))));
        }
    }
    Ok(outcome(true, format!("60 points × {} elements of U_Q", us.len())))
}

fn round_trip(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    let mut rng = cx.rng("normalization-round-trip");
    let mut e1 = vec![Elem::ZERO; n];
    e1[0] = Elem::ONE;
    for _ in 0..200 {
        let x = Mat::random_invertible(k, n, &mut rng);
        let nz = normalize(k, &x)?;
        let sd = bernstein_coords(k, &nz.x, nz.m)?;
        let prod = mul(k, &from_charpoly(&sd.a), &from_charpoly(&sd.x_e.charpoly(k)));
        let mut ok = nz.h.col(0) == e1
            && nz.h.mul(k, &nz.x).mul(k, &nz.h.inverse(k)?) == x
            && reassemble(k, &sd) == nz.x
            && to_charpoly(&prod) == x.charpoly(k);
        if nz.m == n {
            let (g, a) = companion_normalize(k, &x)?;
            ok &= g.inverse(k)?.mul(k, &x).mul(k, &g) == companion(k, &a);
        }
        if !ok {
            return Ok(outcome(false, format!("x = {}", x.display(k))));
        }
    }
    Ok(outcome(true, "200 points"))
}

fn bijectivity(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    let q = k.size();
    let mut cases = 0;
    let mut shared = 0;
    for m in 2..n {
        let e = n - m;
        let inputs = q.pow((m * e) as u32);
        let xes = if q.pow((e * e) as u32) * inputs <= cx.cap() {
            Mat::general_linear(k, e)
        } else {
            let mut rng = cx.rng("cokernel-bijectivity");
            (0..8).map(|_| Mat::random_invertible(k, e, &mut rng)).collect()
        };
        for a in unit_charpolys(k, m) {
            let c = companion(k, &a);
            for x_e in &xes {
                if (q.pow(m as u32) * inputs) > cx.cap() * 16 {
                    return Ok(skipped(format!("q^{} inputs exceed the enumeration cap", m * e)));
                }
                if eval_matrix(k, &from_charpoly(&a), x_e).det(k).is_zero() {
                    shared += 1;
                }
                let mut images = HashSet::new();
                for s in all_rows(k, m * e) {
                    let mut v1 = Mat::zeros(m, e);
                    let mut vm = Mat::zeros(m, e);
                    for j in 0..e {
                        v1.set(0, j, s[j]);
                    }
                    for i in 0..m - 1 {
                        for j in 0..e {
                            vm.set(i, j, s[e + i * e + j]);
                        }
                    }
                    let y = lemma_map(k, &c, x_e, &v1, &vm);
                    if solve_lemma(k, &c, x_e, &y)? != (v1, vm) {
                        return Ok(outcome(false, format!("round trip fails for a = {a:?}")));
                    }
                    images.insert(y.key());
                }
                if images.len() as u64 != inputs {
                    return Ok(outcome(false, format!("not injective for a = {a:?}")));
                }
                cases += 1;
            }
        }
    }
    if cases == 0 {
        return Ok(skipped("needs 2 ≤ m < n"));
    }
    Ok(outcome(true, format!("{cases} (a, x_E) cases, {shared} with shared eigenvalues")))
}

fn coset_formula(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    let rows = all_rows(k, n - 1);
    let mut rng = cx.rng("coset-charpoly-formula");
    let samples = if (rows.len() as u64) * 500 <= cx.cap() { 500 } else { 50 };
    for _ in 0..samples {
        let x = Mat::random_invertible(k, n, &mut rng);
        let nz = normalize(k, &x)?;
        if l_x_rank(k, &nz.x) != nz.m - 1 {
            return Ok(outcome(false, format!("rank of L_x at {}", x.display(k))));
        }
        for s in &rows {
            let (_, chk) = coset_charpoly(k, &nz.x, nz.m, s)?;
            if !(chk.formula_matches_direct && chk.factorization_holds && chk.last_coefficient_fixed) {
                return Ok(outcome(false, format!("x = {}, u = {s:?}", x.display(k))));
            }
        }
    }
    Ok(outcome(true, format!("{samples} points × {} elements of U_Q", rows.len())))
}

fn census(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    // every characteristic polynomial rescans all of M_n(F_q)
    let work = (k.size() as f64).powi((n * n + n) as i32);
    if n > 3 || work > 16.0 * cx.cap() as f64 {
        return Ok(skipped(format!("q^{} matrix scans exceed the enumeration cap", n * n + n)));
    }
    let mut orbits = 0;
    let polys = unit_charpolys(k, n);
    for a in &polys {
        let c = orbit_census(k, n, a, cx.cap())?;
        let want = recursion_prediction(k, n, a)?;
        if c.counts() != want {
            return Ok(outcome(false, format!("c = {a:?}: census {:?}, recursion {want:?}", c.counts())));
        }
        orbits += c.total();
    }
    Ok(outcome(true, format!("{} characteristic polynomials, {orbits} orbits", polys.len())))
}

fn parabolic(cx: &Ctx, n: usize) -> Result<Outcome> {
    let k = cx.k();
    let mut rng = cx.rng("parabolic-normal-form");
    for n1 in 1..n {
        let n2 = n - n1;
        for _ in 0..100 {
            let x = Mat::random_invertible(k, n, &mut rng);
            let cls = parabolic_rank_classify(k, &x, n1, n2)?;
            let again = parabolic_rank_classify(k, &cls.normal_form, n1, n2)?;
            let ok = cls.rank == x.block(n1, 0, n2, n1).rank(k)
                && cls.normal_form.block(n1, 0, n2, n1) == pivot_shape(n2, n1, cls.rank)
                && cls.normal_form.charpoly(k) == x.charpoly(k)
                && again.conjugator == Mat::identity(n);
            if !ok {
                return Ok(outcome(false, format!("(n1, n2) = ({n1}, {n2}), x = {}", x.display(k))));
            }
        }
    }
    Ok(outcome(true, format!("100 points per block split of {n}")))
}

// ---------------------------------------------------------------- induction

fn induction(cx: &Ctx) -> Vec<CheckRecord> {
    vec![
        cx.check("flag-sum-vs-eigenvalues", || flag_vs_eigen(cx)),
        cx.check("class-function", || class_function(cx)),
        cx.check("std-is-psi-of-trace", || std_kernel(cx)),
        cx.check("torus-restriction", || restriction(cx)),
        cx.check("top-stratum-cosets", || top_cosets(cx, false)),
    ]
}

fn flag_vs_eigen(cx: &Ctx) -> Result<Outcome> {
    let k = cx.k();
    let n = cx.ws.dim();
    let hyper = HyperLookup::new(cx.tower, cx.ws);
    let flags = all_flags(k, n, cx.cap())?;
    let mut rng = cx.rng("flag-sum-vs-eigenvalues");
    let id = Perm::identity(n);
    let mut tested = 0;
    for g in points_of(k, n, 200, &mut rng, cx.cap()) {
        let c = g.charpoly(k);
        if !has_distinct_roots(k, &c) {
            continue;
        }
        let eig = steinberg_fiber(cx.tower, &c, &id)?
            .iter()
            .fold(CycNum::zero(1), |acc, pt| &acc + &hyper.get(pt.values()));
        if induced_trace(k, &flags, &hyper, &g)? != eig {
            return Ok(outcome(false, format!("g = {}", g.display(k))));
        }
        tested += 1;
    }
    Ok(outcome(true, format!("{tested} split regular semisimple points, {} flags", flags.len())))
}

fn class_function(cx: &Ctx) -> Result<Outcome> {
    let k = cx.k();
    let gamma = cx.gamma()?;
    let mut rng = cx.rng("class-function");
    let mut tested = 0;
    for _ in 0..100 {
        let x = Mat::random_invertible(k, cx.ws.dim(), &mut rng);
        let g = Mat::random_invertible(k, cx.ws.dim(), &mut rng);
        if let Ok(v) = gamma.phi_regular(&x) {
            if gamma.phi_regular(&x.conjugate(k, &g)?)? != v {
                return Ok(outcome(false, format!("x = {}", x.display(k))));
            }
            tested += 1;
        }
    }
    Ok(outcome(true, format!("{tested} regular points")))
}

fn std_kernel(cx: &Ctx) -> Result<Outcome> {
    if cx.cfg.rep.label() != "std" {
        return Ok(skipped("only for ρ = std"));
    }
    let k = cx.k();
    let n = cx.ws.dim();
    let gamma = cx.gamma()?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut rng = cx.rng("std-is-psi-of-trace");
    let mut tested = 0;
    for x in points_of(k, n, 150, &mut rng, cx.cap()) {
        if !is_regular(k, &x) {
            continue;
        }
        let want = crate::arith::psi_eval(cx.tower, 1, x.trace(k))?.scale_int(sign);
        if gamma.phi_regular(&x)? != want {
            return Ok(outcome(false, format!("x = {}", x.display(k))));
        }
        tested += 1;
    }
    Ok(outcome(true, format!("φ = {}ψ(tr x) on {tested} regular points", if sign > 0 { "" } else { "−" })))
}

fn restriction(cx: &Ctx) -> Result<Outcome> {
    if cx.ws.dim() != 2 {
        return Ok(skipped("the unipotent sum over U_B is implemented for GL(2)"));
    }
    let k = cx.k();
    let gamma = cx.gamma()?;
    let hyper = HyperLookup::new(cx.tower, cx.ws);
    let mut unit: Option<CycNum> = None;
    let mut tested = 0;
    for a in k.units() {
        for b in k.units() {
            if a == b {
                continue;
            }
            let lhs = borel_unipotent_sum(&gamma, &[a, b])?;
            let t = hyper.get(&[a, b]);
            if t.is_zero() {
                if !lhs.is_zero() {
                    return Ok(outcome(false, format!("t_Ψ vanishes but the sum does not at ({a:?}, {b:?})")));
                }
                continue;
            }
            let r = &lhs * &t.inv().expect("nonzero");
            match &unit {
                None => unit = Some(r),
                Some(u) if *u == r => {}
                Some(_) => return Ok(outcome(false, format!("ratio changes at ({a:?}, {b:?})"))),
            }
            tested += 1;
        }
    }
    match unit {
        None => Ok(skipped("no distinct-eigenvalue torus points with t_Ψ ≠ 0")),
        Some(u) => {
            let q = CycNum::from_int(1, cx.q() as i64);
            Ok(outcome(u == q, format!("Σ_u φ(ut) = c·t_Ψ(t) on {tested} points, c = {u}")).with_value(u))
        }
    }
}

/// Both routes of Σ_{u ∈ U_Q} φ(ux) for companions of every admissible c,
/// plus seeded random points of the top stratum when `random` is set.
fn top_cosets(cx: &Ctx, random: bool) -> Result<Outcome> {
    let k = cx.k();
    let n = cx.ws.dim();
    let gamma = cx.gamma()?;
    let mut xs: Vec<Mat> = unit_charpolys(k, n).iter().map(|a| companion(k, a)).collect();
    let companions = xs.len();
    if random {
        let mut rng = cx.rng("top-stratum-random");
        while xs.len() < companions + 100 {
            let x = Mat::random_invertible(k, n, &mut rng);
            if stratum_index(k, &x) == n {
                xs.push(x);
            }
        }
    }
    for x in &xs {
        let s = coset_vanishing_top(&gamma, x)?;
        if !(s.vanishes() && s.routes_agree()) {
            return Ok(outcome(false, format!("x = {}", x.display(k))).with_value(s.direct));
        }
    }
    Ok(outcome(true, format!("{companions} companions, {} random points; both routes zero", xs.len() - companions)))
}

// ---------------------------------------------------------------- GL(2)

fn gl2_main(cx: &Ctx) -> Vec<CheckRecord> {
    let gamma = match cx.gamma() {
        Ok(g) => g,
        Err(e) => return vec![CheckRecord::error("gamma-trace", &e)],
    };
    let table = if cx.q() <= 11 { Gl2Table::build(cx.tower).ok() } else { None };
    let oracle = table.as_ref().map(|t| oracle_phi(t, &gamma));
    let routes = match (&table, &oracle) {
        (Some(t), Some(Ok(o))) => Some((t, o)),
        _ => None,
    };
    let sweep = vanishing_sweep_gl2(&gamma, routes);
    let mut out = vec![
        cx.check("coset-vanishing-geometric", || {
            let recs = sweep.as_ref().map_err(Clone::clone)?;
            let bad = recs.iter().filter(|r| !r.geometric.is_zero()).count();
            Ok(outcome(bad == 0, format!("{} cosets g ∉ B, {bad} nonzero", recs.len())))
        }),
        cx.check("coset-vanishing-oracle", || match &oracle {
            None => Ok(skipped("no character table for q > 11")),
            Some(Err(e)) => Err(e.clone()),
            Some(Ok(_)) => {
                let recs = sweep.as_ref().map_err(Clone::clone)?;
                let bad = recs.iter().filter(|r| !r.oracle.as_ref().is_some_and(CycNum::is_zero)).count();
                Ok(outcome(bad == 0, format!("{} cosets, {bad} nonzero", recs.len())))
            }
        }),
        cx.check("route-agreement", || match routes {
            None => Ok(skipped("oracle unavailable")),
            Some(_) => {
                let recs = sweep.as_ref().map_err(Clone::clone)?;
                let bad: usize = recs.iter().map(|r| r.disagreements).sum();
                Ok(outcome(bad == 0, format!("{} points u·g compared, {bad} disagreements", recs.len() * cx.q() as usize)))
            }
        }),
    ];
    for (name, action) in [("sign-flipped-mutation", Action::SignFlipped), ("untwisted-mutation", Action::Untwisted)] {
        out.push(cx.check(name, || mutation(cx, action)));
    }
    out
}

fn mutation(cx: &Ctx, action: Action) -> Result<Outcome> {
    let same = cx
        .ws
        .weyl_group()
        .iter()
        .map(|w| cx.ws.weyl_lift(w))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|l| action.unit(l) == Action::Twisted.unit(l));
    if same {
        return Ok(skipped(format!(
            "sign(ξ)·sign(w) = 1 on all of W for this ρ, so the {action:?} action is the true one"
        )));
    }
    let bad = GammaTrace::with_action(cx.torus, action)?;
    let recs = vanishing_sweep_gl2(&bad, None)?;
    let broken = recs.iter().filter(|r| !r.geometric.is_zero()).count();
    Ok(outcome(broken > 0, format!("{action:?} action: {broken} of {} cosets fail to vanish", recs.len())))
}

fn gl3_top(cx: &Ctx) -> Vec<CheckRecord> {
    vec![
        cx.check("top-stratum-cosets", || top_cosets(cx, true)),
        cx.check("sigma-fiber-vanishing", || sigma_fibers(cx)),
        cx.check("sign-flipped-control", || control(cx, Action::SignFlipped)),
    ]
}

fn oracle(cx: &Ctx) -> Vec<CheckRecord> {
    let table = match Gl2Table::build(cx.tower) {
        Ok(t) => t,
        Err(e) => return vec![CheckRecord::error("character-table", &e)],
    };
    let gamma = match cx.gamma() {
        Ok(g) => g,
        Err(e) => return vec![CheckRecord::error("gamma-trace", &e)],
    };
    let solved = oracle_phi(&table, &gamma);
    let k = cx.k();
    vec![
        cx.check("orthogonality", || {
            let o = table.check_orthogonality();
            Ok(outcome(o.ok(), format!("{} classes, {} irreducibles; {o:?}", o.classes, o.irreps)))
        }),
        cx.check("oracle-solve", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            let attempts: Vec<String> = o.attempts.iter().map(|(c, r)| format!("{c:?}: {r}")).collect();
            Ok(outcome(true, format!("consistent under the {:?} convention; {}", o.convention, attempts.join("; "))))
        }),
        cx.check("oracle-rank", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            let d = if o.rank_deficient() {
                format!("rank {} of {} unknowns; free unknowns set to zero", o.rank, o.unknowns)
            } else {
                format!("full rank {} with {} equations", o.rank, o.equations)
            };
            Ok(outcome(true, d))
        }),
        cx.check("oracle-residual", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            Ok(outcome(o.residual_zero, "oracle − φ on every regular class"))
        }),
        cx.check("oracle-matches-phi", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            let mut n = 0;
            for (i, c) in table.classes.iter().enumerate() {
                if c.is_regular() {
                    if gamma.phi_regular(&c.rep)? != o.class_values[i] {
                        return Ok(outcome(false, format!("class {i} ({:?})", c.kind)));
                    }
                    n += 1;
                }
            }
            let _ = k;
            Ok(outcome(true, format!("{n} regular classes")))
        }),
        cx.check("unit-identity", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            Ok(outcome(o.pinned_units_consistent, "u_id = q, u_swap = −q is consistent").with_value(o.u_id.clone()))
        }),
        cx.check("unit-swap", || {
            let o = solved.as_ref().map_err(Clone::clone)?;
            Ok(outcome(true, "solved value of u_swap").with_value(o.u_swap.clone()))
        }),
        cx.check("mellin-calibration", || mellin(cx)),
    ]
}

// ---------------------------------------------------------------- runner

fn parameters(cfg: &Config, seed: u64, tower_levels: u32) -> Parameters {
    Parameters {
        p: cfg.p,
        f: cfg.f,
        q: cfg.q(),
        shape: cfg.shape.clone(),
        rep: cfg.rep.label(),
        seed,
        tower_levels,
    }
}

/// Tower level M for a set of suites.
pub fn tower_level(cfg: &Config, suites: &[Suite]) -> Result<u32> {
    let ws = cfg.weight_system()?;
    let need = suites.iter().map(|s| s.tower_levels(&ws).0).max().unwrap_or(1);
    let want = suites.iter().map(|s| s.tower_levels(&ws).1).max().unwrap_or(1);
    match cfg.caps.tower {
        Some(m) if m < need => Err(Error::ConfigInvalid(format!("caps.tower = {m} but the suites need level {need}"))),
        Some(m) => Ok(m),
        None => Ok(want),
    }
}

pub fn run_suite(cfg: &Config, suite: Suite, seed: u64, timings: bool) -> Result<SuiteReport> {
    suite.applicable(cfg)?;
    let m = tower_level(cfg, &[suite])?;
    let tower = build_tower(cfg.p, cfg.f, m)?;
    let ws = cfg.weight_system()?;
    let torus = Torus::new(&tower, &ws);
    let cx = Ctx { cfg, tower: &tower, ws: &ws, torus: &torus, seed, timings };
    let start = Instant::now();
    let checks = match suite {
        Suite::Arith => arith(&cx),
        Suite::Torus => torus_suite(&cx),
        Suite::Mirabolic => mirabolic(&cx),
        Suite::Induction => induction(&cx),
        Suite::Gl2Main => gl2_main(&cx),
        Suite::Gl3Top => gl3_top(&cx),
        Suite::Oracle => oracle(&cx),
    };
    let mut rep = SuiteReport::new(suite.name(), parameters(cfg, seed, m), checks);
    if timings {
        rep.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(rep)
}

/// Runs the configured suites in order. Configuration errors abort; check
/// failures are recorded in the report.
pub fn run(cfg: &Config, only: &[Suite], seed: u64, timings: bool) -> Result<Report> {
    let suites = if only.is_empty() { cfg.suites()? } else { only.to_vec() };
    let mut out = Vec::with_capacity(suites.len());
    for s in suites {
        out.push(run_suite(cfg, s, seed, timings)?);
    }
    Ok(Report::new(out))
}

/// Number of checks with each status, for summaries.
pub fn tally(report: &Report) -> [(Status, usize); 4] {
    let mut t = [(Status::Pass, 0), (Status::Fail, 0), (Status::Skip, 0), (Status::Error, 0)];
    for s in &report.suites {
        for c in &s.checks {
            if let Some(e) = t.iter_mut().find(|(st, _)| *st == c.status) {
                e.1 += 1;
            }
        }
    }
    t
}
