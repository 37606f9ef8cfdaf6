//! Executable checks of the differential-ideal lemmas on concrete instances.

use rand::Rng;

use super::{delta_close, is_delta_stable, radical_delta};
use crate::diff::{DiffRing, ThetaWord};
use crate::error::{Error, Result};
use crate::exec::case_rng;
use crate::ideal::Ideal;
use crate::poly::{monomials_up_to, Poly};
use crate::report::Report;
use crate::sample::random_poly;

const RADICAL_ROUNDS: usize = 4;

fn require_char0(r: &DiffRing) -> Result<()> {
    if r.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    Ok(())
}

/// Low-degree monomials and seeded random polynomials, reduced and nonzero.
fn candidates(r: &DiffRing, samples: usize, seed: u64) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let one = r.field().one();
    for m in monomials_up_to(r.ring().nvars(), 2) {
        out.push(Poly::term(r.ring(), m, one.clone()));
    }
    let mut rng = case_rng(seed, 1);
    for _ in 0..samples {
        out.push(random_poly(r.ring(), &mut rng, 2, 3, 2));
    }
    let mut dedup: Vec<Poly> = Vec::new();
    for p in out {
        let p = r.reduce(&p);
        if !p.is_zero() && !dedup.contains(&p) {
            dedup.push(p);
        }
    }
    dedup
}

/// Pairs `(a, b)` with `ab ∈ i`, at most `limit` of them. Generators paired
/// with random cofactors are always included.
fn zero_divisor_pairs(
    r: &DiffRing,
    i: &Ideal,
    samples: usize,
    seed: u64,
    limit: usize,
) -> Result<Vec<(Poly, Poly)>> {
    let cands = candidates(r, samples, seed);
    let mut pairs = Vec::new();
    for (k, a) in cands.iter().enumerate() {
        for b in &cands[k..] {
            if pairs.len() >= limit {
                return Ok(pairs);
            }
            if i.contains(&(a * b))? {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let mut rng = case_rng(seed, 2);
    for g in i.gens() {
        let g = r.reduce(g);
        if g.is_zero() {
            continue;
        }
        let a = r.reduce(&random_poly(r.ring(), &mut rng, 2, 2, 2));
        if !a.is_zero() {
            pairs.push((a, g));
        }
    }
    Ok(pairs)
}

/// `xy ∈ I ⇒ x^{e(θ)+1} θ(y) ∈ I` for a differential ideal `I`.
pub fn verify_lemma_easy(r: &DiffRing, i: &Ideal, samples: usize, seed: u64) -> Result<Report> {
    let lifted = r.lift(i)?;
    if !is_delta_stable(&lifted, r)? {
        return Err(Error::Precondition("ideal is not a differential ideal".into()));
    }
    let maxord = 4;
    let mut rep = Report::new("lemma-easy", seed).bound("order", maxord as u64).bound("samples", samples as u64);
    let words = ThetaWord::all_up_to(r.nderivs(), maxord);
    for (x, y) in zero_divisor_pairs(r, &lifted, samples, seed, samples.max(8))? {
        for w in &words {
            let lhs = &x.pow(w.order() as u32 + 1) * &r.apply_theta(&y, w)?;
            let ok = lifted.contains(&lhs)?;
            rep.check(ok, || format!("x={}, y={}, theta={w}", x.to_text(), y.to_text()));
        }
    }
    Ok(rep)
}

/// For `x^n ≡ 0`: `(∂x)^{2ℓ-1} x^{n-ℓ} ≡ 0` for `ℓ = 1..n`, and
/// `θ(x)^{2^{e(θ)}(n-1)+1} ≡ 0` for words of order at most 3.
pub fn verify_nilpotency(r: &DiffRing, x: &Poly, n: u32) -> Result<Report> {
    require_char0(r)?;
    if n == 0 || !r.is_zero_mod(&x.pow(n)) {
        return Err(Error::Precondition(format!("{}^{n} is not zero", x.to_text())));
    }
    let maxord = 3usize;
    let mut rep = Report::new("nilpotency", 0).bound("n", n as u64).bound("order", maxord as u64);
    for k in 0..r.nderivs() {
        let dx = r.derive(x, k)?;
        for l in 1..=n {
            let v = &dx.pow(2 * l - 1) * &x.pow(n - l);
            rep.check(r.is_zero_mod(&v), || format!("derivation {k}, l={l}"));
        }
    }
    for w in ThetaWord::all_up_to(r.nderivs(), maxord) {
        let t = r.apply_theta(x, &w)?;
        let e = (1u32 << w.order()) * (n - 1) + 1;
        rep.check(r.is_zero_mod(&t.pow(e)), || format!("theta={w}, exponent {e}"));
    }
    Ok(rep)
}

/// With `I ∩ J = 0` in the quotient, `θ(x) θ'(y) ≡ 0` for generators `x` of
/// `I`, `y` of `J`, and words over the ring's derivations up to `maxord`.
pub fn verify_super_lemma(r: &DiffRing, i: &Ideal, j: &Ideal, maxord: usize) -> Result<Report> {
    let li = r.lift(i)?;
    let lj = r.lift(j)?;
    let meet = li.intersect(&lj)?;
    if !r.quotient().contains_ideal(&meet)? {
        return Err(Error::Precondition("the ideals do not intersect in zero".into()));
    }
    let mut rep = Report::new("super-lemma", 0).bound("order", maxord as u64);
    let words = ThetaWord::all_up_to(r.nderivs(), maxord);
    let xs: Vec<Poly> = i.gens().iter().map(|g| r.reduce(g)).filter(|g| !g.is_zero()).collect();
    let ys: Vec<Poly> = j.gens().iter().map(|g| r.reduce(g)).filter(|g| !g.is_zero()).collect();
    for x in &xs {
        let tx: Vec<Poly> = words.iter().map(|w| r.apply_theta(x, w)).collect::<Result<_>>()?;
        for y in &ys {
            let ty: Vec<Poly> = words.iter().map(|w| r.apply_theta(y, w)).collect::<Result<_>>()?;
            for (a, wa) in tx.iter().zip(&words) {
                for (b, wb) in ty.iter().zip(&words) {
                    rep.check(r.is_zero_mod(&(a * b)), || {
                        format!("x={}, y={}, theta={wa}, theta'={wb}", x.to_text(), y.to_text())
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Ideal generated by all `θ(g)` with words of order at most `n`.
pub fn bracket_closure(i: &Ideal, r: &DiffRing, n: usize) -> Result<Ideal> {
    Ok(delta_close(i, r, n)?.result)
}

/// Whether every element of `k` squares to zero in the quotient.
pub fn nil2_check(k: &Ideal, r: &DiffRing) -> Result<bool> {
    let gens: Vec<Poly> = r.display_gens(k)?;
    // in characteristic 2 squaring is additive, otherwise 2ab must vanish too
    for (a_idx, a) in gens.iter().enumerate() {
        if !r.is_zero_mod(&(a * a)) {
            return Ok(false);
        }
        if r.characteristic() != 2 {
            for b in &gens[..a_idx] {
                if !r.is_zero_mod(&(a * b)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `xy ∈ I ⇒ θ₁(x)θ₂(y) ∈ {I}` and `{I}{J} ⊆ {IJ}`, both sides computed by
/// truncated radical closures.
pub fn verify_min_rad(r: &DiffRing, i: &Ideal, j: &Ideal, n: usize, samples: usize, seed: u64) -> Result<Report> {
    require_char0(r)?;
    let maxord = 3usize;
    let mut rep = Report::new("min-rad", seed)
        .bound("order", maxord as u64)
        .bound("closure", n as u64)
        .bound("samples", samples as u64);
    let li = r.lift(i)?;
    let lj = r.lift(j)?;
    let ri = radical_delta(&li, r, n, RADICAL_ROUNDS)?.result;
    let words = ThetaWord::all_up_to(r.nderivs(), maxord);
    for (x, y) in zero_divisor_pairs(r, &li, samples, seed, samples.max(8))? {
        for w1 in &words {
            let a = r.apply_theta(&x, w1)?;
            for w2 in &words {
                let b = r.apply_theta(&y, w2)?;
                let ok = ri.contains(&(&a * &b))?;
                rep.check(ok, || format!("x={}, y={}, {w1}, {w2}", x.to_text(), y.to_text()));
            }
        }
    }
    let rj = radical_delta(&lj, r, n, RADICAL_ROUNDS)?.result;
    let rij = radical_delta(&r.lift(&li.product(&lj)?)?, r, n, RADICAL_ROUNDS)?.result;
    for a in ri.basis()?.iter() {
        for b in rj.basis()?.iter() {
            let ok = rij.contains(&(a * b))?;
            rep.check(ok, || format!("{{I}}{{J}}: {} * {}", a.to_text(), b.to_text()));
        }
    }
    Ok(rep)
}

/// Colon ideal properties (i)–(v) for `I` and sampled elements `f`. The
/// radical items run only when `radical` is set by the caller.
pub fn verify_colon_properties(r: &DiffRing, i: &Ideal, radical: bool, samples: usize, seed: u64) -> Result<Report> {
    let li = r.lift(i)?;
    let delta = is_delta_stable(&li, r)?;
    let mut rep = Report::new("colon", seed).bound("samples", samples as u64);
    let mut rng = case_rng(seed, 3);
    for s in 0..samples {
        let f = r.reduce(&random_poly(r.ring(), &mut rng, 2, 2, 3));
        if f.is_zero() {
            continue;
        }
        let colon = li.colon(&f)?;
        let sat = li.saturate(&f)?;
        let tag = || format!("I={li}, f={}", f.to_text());
        // (i)
        rep.check(colon.contains_ideal(&li)? && sat.contains_ideal(&colon)?, || format!("(i) {}", tag()));
        // (ii)
        let mut ok = true;
        for g in colon.gens() {
            ok &= li.contains(&(g * &f))?;
        }
        rep.check(ok, || format!("(ii) {}", tag()));
        let g2 = r.reduce(&random_poly(r.ring(), &mut rng, 2, 2, 3));
        let jj = Ideal::new(r.ring(), [f.clone(), g2])?;
        let cj = li.colon_ideal(&jj)?;
        let prod = cj.product(&jj)?;
        rep.check(li.contains_ideal(&prod)?, || format!("(ii) ideal {}", tag()));
        // (iii)
        if delta {
            rep.check(is_delta_stable(&sat, r)?, || format!("(iii) {}", tag()));
        }
        if radical {
            // (iv)
            rep.check(colon.same_as(&sat)?, || format!("(iv a) {}", tag()));
            let radical_ok = sampled_radical(r, &colon, seed.wrapping_add(s as u64))?;
            rep.check(radical_ok, || format!("(iv b) {}", tag()));
            // (v)
            if delta {
                rep.check(radical_ok && is_delta_stable(&colon, r)?, || format!("(v) {}", tag()));
            }
        }
    }
    Ok(rep)
}

/// No sampled `h` lies in `√k` without lying in `k`.
fn sampled_radical(r: &DiffRing, k: &Ideal, seed: u64) -> Result<bool> {
    let mut rng = case_rng(seed, 4);
    let mut hs: Vec<Poly> = (0..r.ring().nvars()).map(|v| Poly::var(r.ring(), v)).collect();
    for b in k.basis()?.iter() {
        if r.characteristic() == 0 && !b.is_constant() {
            hs.push(crate::ideal::squarefree_part(b)?);
        }
    }
    for _ in 0..6 {
        let deg = rng.gen_range(1..=2);
        hs.push(random_poly(r.ring(), &mut rng, deg, 2, 2));
    }
    for h in hs {
        if k.radical_contains(&h)? && !k.contains(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
