//! Named verification suites. Each returns one aggregated report and is
//! deterministic given its seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dideal::{
    bracket_closure, nil2_check, verify_colon_properties, verify_lemma_easy, verify_min_rad, verify_nilpotency,
    verify_super_lemma,
};
use crate::dideal::{delta_close, primality_falsify, psharp, PsharpStatus, DEFAULT_MAXITER};
use crate::diff::{Derivation, DiffRing, ThetaAb, ThetaWord};
use crate::error::{Error, Result};
use crate::exec::{case_rng, case_seed, map_cases, Strategy};
use crate::fixtures;
use crate::ideal::Ideal;
use crate::poly::{Poly, PolyRing};
use crate::report::Report;
use crate::sample::{random_nonzero, random_poly};
use crate::scalar::Field;
use crate::svdp::TensorRing;
use crate::traj::main_theorem_check;

pub const SUITE_NAMES: &[&str] = &[
    "leibniz",
    "colon",
    "minrad",
    "nilpotency",
    "superlemma",
    "psharp-prime",
    "svdp-roundtrip",
    "propB",
    "main-theorem",
    "charp-counterexamples",
];

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances for the sampled suites; `None` uses the suite default.
    pub cases: Option<usize>,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, cases: None, strategy: Strategy::default() }
    }
}

impl SuiteConfig {
    pub fn seeded(seed: u64) -> Self {
        SuiteConfig { seed, ..SuiteConfig::default() }
    }

    fn cases_or(&self, n: usize) -> usize {
        self.cases.unwrap_or(n)
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    match name {
        "leibniz" => leibniz(cfg),
        "colon" => colon(cfg),
        "minrad" => minrad(cfg),
        "nilpotency" => nilpotency(cfg),
        "superlemma" => superlemma(cfg),
        "psharp-prime" => psharp_prime(cfg),
        "svdp-roundtrip" => svdp_roundtrip(cfg),
        "propB" => prop_b(cfg),
        "main-theorem" => main_theorem(cfg),
        "charp-counterexamples" => charp_counterexamples(cfg),
        _ => Err(Error::InvalidArgument(format!("unknown suite `{name}`; known: {}", SUITE_NAMES.join(", ")))),
    }
}

fn collect(mut rep: Report, parts: Vec<Result<Report>>) -> Result<Report> {
    for p in parts {
        rep.absorb(p?);
    }
    Ok(rep)
}

/// `D_i = Σ_j a_ij c_j(x_j) ∂/∂x_j`: pairwise commuting for any constants
/// `a_ij` and univariate `c_j`.
fn random_commuting_ring<R: Rng>(field: Field, rng: &mut R) -> Result<DiffRing> {
    let nvars = rng.gen_range(1..=3usize);
    let nder = rng.gen_range(1..=3usize);
    let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
    let ring = PolyRing::new(field, names)?;
    let uni: Vec<Poly> = (0..nvars)
        .map(|j| {
            let k = PolyRing::new(field, ["s"]).expect("one variable");
            let c = random_nonzero(&k, rng, 2, 2, 3);
            let xj = Poly::var(&ring, j);
            c.terms().fold(Poly::zero(&ring), |acc, (m, a)| &acc + &xj.pow(m.exp(0)).scale(a))
        })
        .collect();
    let derivs = (0..nder)
        .map(|i| {
            let images =
                uni.iter().map(|c| c.scale(&field.from_i64(rng.gen_range(-2..=2)))).collect::<Vec<_>>();
            Derivation::new(format!("d{i}"), images)
        })
        .collect();
    DiffRing::free(&ring, derivs)
}

fn leibniz_case(seed: u64, k: usize) -> Result<Report> {
    let mut rng = case_rng(seed, k as u64);
    let field = if k.is_multiple_of(2) { Field::Q } else { Field::fp(5)? };
    let r = random_commuting_ring(field, &mut rng)?;
    let mut rep = Report::new(format!("leibniz#{k}"), seed);
    if !rep.check(r.is_commuting(), || format!("sampled derivations do not commute on {r}")) {
        return Ok(rep);
    }
    let f = random_poly(r.ring(), &mut rng, 4, 4, 3);
    let g = random_poly(r.ring(), &mut rng, 4, 4, 3);
    let thetas = ThetaAb::all_up_to(r.nderivs(), 4);
    let theta = thetas[rng.gen_range(0..thetas.len())].clone();
    let expanded = r.leibniz_expand(&f, &g, &theta)?;
    let fg = &f * &g;
    let direct = r.apply_ab(&fg, &theta)?;
    rep.check(expanded == direct, || format!("{theta} on ({f})*({g}) in {r}: {expanded} vs {direct}"));
    let mut word = theta.to_word().0;
    word.shuffle(&mut rng);
    let shuffled = r.apply_theta(&fg, &ThetaWord(word.clone()))?;
    rep.check(expanded == shuffled, || format!("word {word:?} on ({f})*({g}) in {r}: {shuffled}"));
    Ok(rep)
}

fn leibniz(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.cases_or(500);
    let rep = Report::new("leibniz", cfg.seed).bound("cases", n as u64).bound("order", 4).bound("degree", 4);
    collect(rep, map_cases(cfg.strategy, n, |k| leibniz_case(cfg.seed, k)))
}

fn colon(cfg: &SuiteConfig) -> Result<Report> {
    let euler = fixtures::euler();
    let radial = fixtures::radial();
    let partials = fixtures::partials();
    let cases: Vec<(&DiffRing, &str, bool)> = vec![
        (&euler, "x*y", true),
        (&euler, "x^2, x*y", false),
        (&euler, "x - y", true),
        (&radial, "x", true),
        (&radial, "x^3", false),
        (&partials, "0", true),
    ];
    let samples = cfg.cases_or(6);
    let rep = Report::new("colon", cfg.seed).bound("samples", samples as u64);
    collect(
        rep,
        map_cases(cfg.strategy, cases.len(), |k| {
            let (r, src, radical) = cases[k];
            verify_colon_properties(r, &r.parse_ideal(src)?, radical, samples, case_seed(cfg.seed, k as u64))
        }),
    )
}

fn minrad(cfg: &SuiteConfig) -> Result<Report> {
    let line = fixtures::line();
    let radial = fixtures::radial();
    let euler = fixtures::euler();
    let pairs: Vec<(&DiffRing, &str, &str)> = vec![
        (&line, "x^2", "x"),
        (&radial, "x", "x"),
        (&radial, "0", "0"),
        (&radial, "x^2", "x - 1"),
        (&euler, "x", "y"),
        (&euler, "x*y", "x - y"),
    ];
    let easy: Vec<(&DiffRing, &str)> = vec![(&radial, "x"), (&radial, "x^2"), (&euler, "x*y"), (&euler, "x^2, y"), (&line, "1")];
    let samples = cfg.cases_or(6);
    let rep = Report::new("minrad", cfg.seed).bound("order", 3).bound("samples", samples as u64);
    let n1 = pairs.len();
    collect(
        rep,
        map_cases(cfg.strategy, n1 + easy.len(), |k| {
            let s = case_seed(cfg.seed, k as u64);
            if k < n1 {
                let (r, i, j) = pairs[k];
                verify_min_rad(r, &r.parse_ideal(i)?, &r.parse_ideal(j)?, 3, samples, s)
            } else {
                let (r, i) = easy[k - n1];
                verify_lemma_easy(r, &r.parse_ideal(i)?, samples, s)
            }
        }),
    )
}

fn nilpotency(cfg: &SuiteConfig) -> Result<Report> {
    let nil = fixtures::nilsquare(Field::Q);
    let mut cases: Vec<(DiffRing, &str, u32)> =
        vec![(nil.clone(), "x", 2), (nil.clone(), "y", 2), (nil.clone(), "x + 2*y", 2)];
    for n in 2..=4u32 {
        let ring = PolyRing::new(Field::Q, ["x"])?;
        let x = Poly::var(&ring, 0);
        let r = DiffRing::new(&ring, vec![Derivation::new("d", vec![x.clone()])], vec![x.pow(n)])?;
        cases.push((r, "x", n));
    }
    let rep = Report::new("nilpotency", cfg.seed).bound("order", 3);
    collect(
        rep,
        map_cases(cfg.strategy, cases.len(), |k| {
            let (r, x, n) = &cases[k];
            verify_nilpotency(r, &r.poly(x)?, *n)
        }),
    )
}

fn superlemma(cfg: &SuiteConfig) -> Result<Report> {
    let mut rep = Report::new("superlemma", cfg.seed).bound("order", 3);
    for field in [Field::Q, Field::fp(2)?] {
        let r = fixtures::nilsquare(field);
        let i = r.parse_ideal("x")?;
        let j = r.parse_ideal("y")?;
        rep.absorb(verify_super_lemma(&r, &i, &j, 3)?);
        let meet = bracket_closure(&i, &r, 3)?.intersect(&bracket_closure(&j, &r, 3)?)?;
        rep.check(nil2_check(&meet, &r)?, || format!("[I] ∩ [J] = {meet} is not inside Nil2 over {field}"));
    }
    Ok(rep)
}

fn psharp_degree(r: &DiffRing) -> u32 {
    if r.ring().nvars() == 1 {
        6
    } else {
        4
    }
}

fn psharp_prime(cfg: &SuiteConfig) -> Result<Report> {
    let schemes = fixtures::char0_schemes()?;
    let flat: Vec<(usize, usize)> =
        schemes.iter().enumerate().flat_map(|(s, sc)| (0..sc.fixtures.len()).map(move |f| (s, f))).collect();
    let trials = cfg.cases_or(200);
    let rep = Report::new("psharp-prime", cfg.seed).bound("trials", trials as u64).bound("degcap", 3);
    collect(
        rep,
        map_cases(cfg.strategy, flat.len(), |k| {
            let (s, f) = flat[k];
            let sc = &schemes[s];
            let fx = &sc.fixtures[f];
            let r = &sc.ring;
            let mut rep = Report::new(format!("{}/{}", sc.name, fx.name), cfg.seed);
            let res = psharp(&fx.ideal, r, psharp_degree(r), DEFAULT_MAXITER)?;
            rep.check(res.stable && res.contained, || format!("p# of {} is not a differential subideal", fx.ideal));
            let w = primality_falsify(&res.final_ideal, r, trials, 3, case_seed(cfg.seed, k as u64))?;
            rep.check(w.is_none(), || {
                let (a, b) = w.clone().unwrap();
                format!("p# = {} of {}: ({a})*({b}) lies in it", r.display_ideal(&res.final_ideal).unwrap_or_default(), fx.ideal)
            });
            Ok(rep)
        }),
    )
}

fn random_base_ideal<R: Rng>(t: &TensorRing, rng: &mut R) -> Result<Ideal> {
    let n = rng.gen_range(1..=3);
    let gens = (0..n).map(|_| random_poly(t.base(), rng, 3, 3, 3)).collect::<Vec<_>>();
    Ideal::new(t.base(), gens)
}

fn roundtrip_case(t: &TensorRing, seed: u64, k: usize) -> Result<Report> {
    let mut rng = case_rng(seed, k as u64);
    let mut rep = Report::new(format!("svdp#{k}"), seed);
    let i = random_base_ideal(t, &mut rng)?;
    let back = t.contract_ideal(&t.extend_ideal(&i)?)?;
    rep.check(back.same_as(&i)?, || format!("contract(extend({i})) = {back}"));

    let real = t.realization();
    let n = rng.gen_range(1..=2);
    let elems: Vec<Poly> = (0..n).map(|_| random_poly(real.ring(), &mut rng, 3, 3, 3)).collect();
    // t-degree 3 needs at most 3 prolongations to reach A
    let closure = delta_close(&real.ideal(elems.clone())?, real, 5)?;
    if !rep.check(closure.certified, || format!("closure of {elems:?} not certified")) {
        return Ok(rep);
    }
    let j = closure.result;
    let c = t.contract_ideal(&j)?;
    let again = t.extend_ideal(&c)?;
    rep.check(again.same_as(&j)?, || format!("extend(contract({j})) = {again}"));

    let mut x = Poly::zero(real.ring());
    for g in j.basis()?.iter() {
        x = &x + &(g * &random_poly(real.ring(), &mut rng, 1, 2, 2));
    }
    let xe = t.elem(&x)?;
    let cert = t.svdp_reduce(&xe, &j)?;
    rep.check(t.recompose(&cert)? == xe, || format!("certificate for {xe} does not recompose"));
    for (a, l) in &cert {
        rep.check(c.contains(a)?, || format!("certificate term {a} (x) {l} for {xe} leaves the contraction"));
    }
    Ok(rep)
}

fn svdp_roundtrip(cfg: &SuiteConfig) -> Result<Report> {
    let t = TensorRing::over(&["u", "v"])?;
    let n = cfg.cases_or(200);
    let rep = Report::new("svdp-roundtrip", cfg.seed).bound("cases", n as u64);
    collect(rep, map_cases(cfg.strategy, n, |k| roundtrip_case(&t, cfg.seed, k)))
}

pub const FIBER_POINTS: [i64; 4] = [0, 1, -1, 2];
pub const PROP_B_GRID: [&str; 4] = ["0", "u", "u^2 - v", "u, v"];
pub const MAIN_GRID: [&str; 5] = ["0", "u", "v", "u^2 - v", "u, v"];
pub const FIBER_DEGREE: u32 = 6;

fn grid(ideals: &[&'static str]) -> Vec<(&'static str, i64)> {
    ideals.iter().flat_map(|i| FIBER_POINTS.iter().map(move |c| (*i, *c))).collect()
}

fn prop_b(cfg: &SuiteConfig) -> Result<Report> {
    let t = TensorRing::over(&["u", "v"])?;
    let cells = grid(&PROP_B_GRID);
    let rep = Report::new("propB", cfg.seed).bound("degree", FIBER_DEGREE as u64);
    collect(
        rep,
        map_cases(cfg.strategy, cells.len(), |k| {
            let (src, c) = cells[k];
            let c = Field::Q.from_i64(c);
            let mut rep = Report::new(format!("({src}) at t = {c}"), cfg.seed);
            let i = t.parse_base_ideal(src)?;
            let j = t.extend_ideal(&i)?;
            let fiber = t.fiber_j_ideal(&j, &c)?;
            let contracted = t.contract_ideal(&j)?;
            rep.check(fiber.same_as(&contracted)?, || format!("j(J) = {fiber}, contraction = {contracted}"));
            let sharp = t.fiber_pullback_sharp(&i, &c, FIBER_DEGREE)?;
            let settled = matches!(sharp.status, PsharpStatus::Fixpoint)
                || (sharp.status == PsharpStatus::DegreeExhausted && sharp.stable);
            rep.check(settled && sharp.final_ideal.same_as(&j)?, || {
                format!("(j^-1 I)# = {} with status {}", sharp.final_ideal, sharp.status)
            });
            Ok(rep)
        }),
    )
}

fn main_theorem(cfg: &SuiteConfig) -> Result<Report> {
    let t = TensorRing::over(&["u", "v"])?;
    let cells = grid(&MAIN_GRID);
    let rep = Report::new("main-theorem", cfg.seed).bound("degree", FIBER_DEGREE as u64);
    collect(
        rep,
        map_cases(cfg.strategy, cells.len(), |k| {
            let (src, c) = cells[k];
            let q = t.parse_base_ideal(src)?;
            let leaf = t.extend_ideal(&q)?;
            let mut r = main_theorem_check(&t, &q, &leaf, &Field::Q.from_i64(c), FIBER_DEGREE)?;
            r.lemma = format!("({src}) at t = {c}");
            Ok(r)
        }),
    )
}

fn charp_counterexamples(cfg: &SuiteConfig) -> Result<Report> {
    let mut rep = Report::new("charp-counterexamples", cfg.seed);
    let line = fixtures::line_over(Field::fp(2)?);
    let sq = line.parse_ideal("x^2")?;
    rep.check(line.is_delta_ideal(&sq)?, || "(x^2) is not a differential ideal in F_2[x]".into());
    let x = line.var("x")?;
    let rad = line.parse_ideal("x")?;
    rep.check(sq.radical_contains(&x)? && rad.contains_ideal(&sq)?, || "sqrt(x^2) is not (x)".into());
    rep.check(!line.is_delta_ideal(&rad)?, || "(x) is a differential ideal in F_2[x]".into());

    let dual = fixtures::f2_dual();
    let res = psharp(&dual.parse_ideal("x")?, &dual, 4, DEFAULT_MAXITER)?;
    let shown = dual.display_ideal(&res.final_ideal)?;
    rep.check(shown == "(0)", || format!("(x)# = {shown} in F_2[x]/(x^2)"));
    let w = primality_falsify(&res.final_ideal, &dual, 10, 3, cfg.seed)?;
    let texts = w.as_ref().map(|(a, b)| (a.to_text(), b.to_text()));
    rep.check(texts == Some(("x".into(), "x".into())), || format!("falsifier on (0) found {texts:?}"));
    Ok(rep)
}
