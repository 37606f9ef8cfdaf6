//! Differential ideals: prolongation, membership, radical closure, the
//! trajectory kernel `p#`, and primality falsification.

mod lemmas;

pub use lemmas::{
    bracket_closure, nil2_check, verify_colon_properties, verify_lemma_easy, verify_min_rad, verify_nilpotency,
    verify_super_lemma,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diff::DiffRing;
use crate::error::{Error, Result};
use crate::exec::case_rng;
use crate::groebner::{self, Reducer};
use crate::ideal::{squarefree_part, DeltaFlag, Ideal};
use crate::linalg::{self, SparseVec};
use crate::poly::{Monomial, MonomialOrder, Poly};

const DRL: MonomialOrder = MonomialOrder::DegRevLex;

pub const DEFAULT_ORDER_BOUND: usize = 4;
pub const DEFAULT_DEGREE_BOUND: u32 = 8;
pub const DEFAULT_MAXITER: usize = 16;

#[derive(Debug, Clone)]
pub struct DeltaClosure {
    pub base: Ideal,
    pub bound: usize,
    /// Always contains the quotient of the ambient ring.
    pub result: Ideal,
    /// Every derivation maps every basis element of `result` into `result`.
    pub certified: bool,
    /// Prolongation rounds that added something new.
    pub rounds: usize,
}

/// Ideal generated by `θ(g)` for generators `g` and words of order at most `n`.
pub fn delta_close(i: &Ideal, r: &DiffRing, n: usize) -> Result<DeltaClosure> {
    let limits = *i.limits();
    let mut gb: Vec<Poly> = r.lift(i)?.basis()?.to_vec();
    let mut certified = false;
    let mut rounds = 0;
    // J_{k+1} = J_k + (∂ b : b in a basis of J_k) has the same span as all words of order k+1
    for _ in 0..n {
        let red = Reducer::new(&gb, &DRL);
        let mut new = Vec::new();
        for g in &gb {
            for k in 0..r.nderivs() {
                let nf = red.reduce(&r.derive(g, k)?)?;
                if !nf.is_zero() {
                    new.push(nf);
                }
            }
        }
        if new.is_empty() {
            certified = true;
            break;
        }
        rounds += 1;
        gb = groebner::groebner_extend(&gb, &new, &DRL, &limits)?;
    }
    if !certified {
        certified = basis_is_stable(r, &gb)?;
    }
    let flag = if certified { DeltaFlag::Stable } else { DeltaFlag::ClosedAtBound(n) };
    let result = Ideal::from_reduced_basis(r.ring(), gb).with_limits_of(i).with_delta(flag);
    Ok(DeltaClosure { base: i.clone(), bound: n, result, certified, rounds })
}

fn basis_is_stable(r: &DiffRing, gb: &[Poly]) -> Result<bool> {
    let red = Reducer::new(gb, &DRL);
    for g in gb {
        for k in 0..r.nderivs() {
            if !red.reduce(&r.derive(g, k)?)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certifies that `i` (with the quotient) is stable under every derivation.
pub fn is_delta_stable(i: &Ideal, r: &DiffRing) -> Result<bool> {
    let lifted = r.lift(i)?;
    basis_is_stable(r, &lifted.basis()?)
}

pub fn is_delta_ideal(i: &Ideal, r: &DiffRing) -> Result<bool> {
    r.is_delta_ideal(i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaMembership {
    Yes,
    /// Not in the closure at `bound`; `certified` means the closure is a
    /// genuine differential ideal, so the answer is a definitive no.
    NotFoundAtBound { bound: usize, certified: bool },
}

pub fn delta_member(f: &Poly, i: &Ideal, r: &DiffRing, n: usize) -> Result<DeltaMembership> {
    let c = delta_close(i, r, n)?;
    if c.result.contains(f)? {
        Ok(DeltaMembership::Yes)
    } else {
        Ok(DeltaMembership::NotFoundAtBound { bound: n, certified: c.certified })
    }
}

#[derive(Debug, Clone)]
pub struct RadicalDelta {
    pub result: Ideal,
    /// Neither step changes the ideal any more.
    pub fixpoint: bool,
    pub rounds: usize,
}

/// Alternates radical growth and prolongation, starting from `√`.
pub fn radical_delta(i: &Ideal, r: &DiffRing, n: usize, rounds: usize) -> Result<RadicalDelta> {
    if r.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    let mut cur = r.lift(i)?;
    for round in 0..rounds {
        let added = radical_candidates(&cur, r)?;
        let grown = if added.is_empty() { cur.clone() } else { cur.add_gens(added.iter().cloned())? };
        let closed = delta_close(&grown, r, n)?;
        if added.is_empty() && closed.certified && closed.result.same_as(&cur)? {
            return Ok(RadicalDelta { result: closed.result, fixpoint: true, rounds: round });
        }
        cur = closed.result;
        if cur.is_unit()? {
            return Ok(RadicalDelta { result: cur, fixpoint: true, rounds: round + 1 });
        }
    }
    Ok(RadicalDelta { result: cur, fixpoint: false, rounds })
}

/// Elements of `√cur \ cur` found among the variables, the square-free parts
/// of basis elements, and the square-free parts of their derivatives.
fn radical_candidates(cur: &Ideal, r: &DiffRing) -> Result<Vec<Poly>> {
    let basis = cur.basis()?;
    let mut pool: Vec<Poly> = (0..r.ring().nvars()).map(|k| Poly::var(r.ring(), k)).collect();
    for b in basis.iter() {
        if !b.is_constant() {
            pool.push(squarefree_part(b)?);
        }
        for k in 0..r.nderivs() {
            let d = r.derive(b, k)?;
            if !d.is_zero() && !d.is_constant() {
                pool.push(squarefree_part(&d)?);
            }
        }
    }
    let red = Reducer::new(&basis, &DRL);
    let mut out: Vec<Poly> = Vec::new();
    for c in pool {
        let c = red.reduce(&c)?;
        if c.is_zero() || out.contains(&c) {
            continue;
        }
        if cur.radical_contains(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsharpStatus {
    Fixpoint,
    DegreeExhausted,
    IterationCapped,
}

impl std::fmt::Display for PsharpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PsharpStatus::Fixpoint => "fixpoint",
            PsharpStatus::DegreeExhausted => "degree-exhausted",
            PsharpStatus::IterationCapped => "iteration-capped",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PsharpResult {
    pub input: Ideal,
    pub bound: u32,
    /// Distinct ideals `J_0 ⊋ J_1 ⊋ …`, each containing the quotient.
    pub trace: Vec<Ideal>,
    pub final_ideal: Ideal,
    pub status: PsharpStatus,
    /// Final ideal is stable under every derivation.
    pub stable: bool,
    /// Final ideal lies inside the input.
    pub contained: bool,
}

impl PsharpResult {
    pub fn steps(&self) -> usize {
        self.trace.len() - 1
    }
}

/// Descending chain `J_{k+1} = {f ∈ J_k : ∂_i f ∈ J_k}` inside the window of
/// degree `d`, regenerated as ideals.
pub fn psharp(p: &Ideal, r: &DiffRing, d: u32, maxiter: usize) -> Result<PsharpResult> {
    let j0 = r.lift(p)?;
    if j0.is_unit()? {
        return Err(Error::Precondition("ideal must be proper".into()));
    }
    let limits = *p.limits();
    let monos = crate::diff::window_monomials(r, d);
    let mut trace = vec![j0.clone()];
    let mut cur = j0.clone();
    let mut status = PsharpStatus::IterationCapped;
    for _ in 0..maxiter {
        let kernel = window_kernel(&cur, r, &monos)?;
        if kernel.is_empty() {
            let q = r.lift(&Ideal::zero(r.ring()))?;
            if cur.same_as(&q)? {
                status = PsharpStatus::Fixpoint;
                break;
            }
            status = PsharpStatus::DegreeExhausted;
            cur = q;
            trace.push(cur.clone());
            break;
        }
        let next = regenerate(r, kernel, &limits)?;
        if next.same_as(&cur)? {
            status = PsharpStatus::Fixpoint;
            break;
        }
        trace.push(next.clone());
        cur = next;
    }
    let stable = is_delta_stable(&cur, r)?;
    let contained = j0.contains_ideal(&cur)?;
    let final_ideal = if stable { cur.with_delta(DeltaFlag::Stable) } else { cur };
    Ok(PsharpResult { input: p.clone(), bound: d, trace, final_ideal, status, stable, contained })
}

/// Elements `f` of the window with `f, ∂_1 f, …, ∂_m f` all in `cur`.
fn window_kernel(cur: &Ideal, r: &DiffRing, monos: &[Monomial]) -> Result<Vec<Poly>> {
    let red = Reducer::new(&cur.basis()?, &DRL);
    let one = r.field().one();
    let mut images: Vec<SparseVec<(usize, Monomial)>> = Vec::with_capacity(monos.len());
    for m in monos {
        let f = Poly::term(r.ring(), m.clone(), one.clone());
        let mut v = BTreeMap::new();
        crate::diff::push_coords(&red.reduce(&f)?, 0, &mut v);
        for k in 0..r.nderivs() {
            crate::diff::push_coords(&red.reduce(&r.derive(&f, k)?)?, k + 1, &mut v);
        }
        images.push(v);
    }
    let ker = linalg::kernel(r.field(), &images);
    Ok(ker.iter().map(|k| crate::diff::combine_monomials(r, monos, k)).collect())
}

/// Ideal generated by `polys` and the quotient, built incrementally in
/// increasing leading monomial so that redundant generators are skipped.
fn regenerate(r: &DiffRing, mut polys: Vec<Poly>, limits: &crate::groebner::Limits) -> Result<Ideal> {
    polys.sort_by(|a, b| DRL.cmp(a.leading_monomial(&DRL).unwrap(), b.leading_monomial(&DRL).unwrap()));
    let mut gb: Vec<Poly> = r.quotient_basis().to_vec();
    let mut red = Reducer::new(&gb, &DRL);
    for f in polys {
        let nf = red.reduce(&f)?;
        if nf.is_zero() {
            continue;
        }
        gb = groebner::groebner_extend(&gb, &[nf], &DRL, limits)?;
        red = Reducer::new(&gb, &DRL);
    }
    Ok(Ideal::from_reduced_basis(r.ring(), gb).with_limits(*limits))
}

/// Searches for `f, g ∉ J` with `fg ∈ J`: first over all pairs of standard
/// monomials of degree at most `degcap`, then over `trials` random pairs.
pub fn primality_falsify(
    j: &Ideal,
    r: &DiffRing,
    trials: usize,
    degcap: u32,
    seed: u64,
) -> Result<Option<(Poly, Poly)>> {
    let lifted = r.lift(j)?;
    if lifted.is_unit()? {
        return Err(Error::Precondition("ideal must be proper".into()));
    }
    let basis = lifted.basis()?;
    let red = Reducer::new(&basis, &DRL);
    let monos: Vec<Monomial> =
        crate::poly::monomials_up_to(r.ring().nvars(), degcap).into_iter().filter(|m| red.is_standard(m)).collect();
    let field = r.field();
    let polys: Vec<Poly> = monos.iter().map(|m| Poly::term(r.ring(), m.clone(), field.one())).collect();
    for a in 0..polys.len() {
        for b in 0..=a {
            if red.reduce(&(&polys[a] * &polys[b]))?.is_zero() {
                return Ok(Some((polys[a].clone(), polys[b].clone())));
            }
        }
    }
    let mut rng = case_rng(seed, 0);
    for _ in 0..trials {
        let f = red.reduce(&crate::sample::random_combo(r.ring(), &monos, &mut rng, 3, 3))?;
        let g = red.reduce(&crate::sample::random_combo(r.ring(), &monos, &mut rng, 3, 3))?;
        if f.is_zero() || g.is_zero() {
            continue;
        }
        if red.reduce(&(&f * &g))?.is_zero() {
            return Ok(Some((f, g)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::Derivation;
    use crate::poly::PolyRing;
    use crate::scalar::Field;
    use crate::text::parse_poly;

    pub(crate) fn line(field: Field, image: &str, quotient: &[&str]) -> DiffRing {
        let r = PolyRing::new(field, ["x"]).unwrap();
        let q = quotient.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        DiffRing::new(&r, vec![Derivation::new("d", vec![parse_poly(image, &r).unwrap()])], q).unwrap()
    }

    #[test]
    fn closures() {
        let radial = line(Field::Q, "x", &[]);
        let c = delta_close(&radial.parse_ideal("x").unwrap(), &radial, 3).unwrap();
        assert!(c.certified);
        assert!(c.result.same_as(&radial.parse_ideal("x").unwrap()).unwrap());
        let l = line(Field::Q, "1", &[]);
        let c = delta_close(&l.parse_ideal("x").unwrap(), &l, 1).unwrap();
        assert!(c.result.is_unit().unwrap());
        let z = line(Field::Q, "0", &[]);
        let i = z.parse_ideal("x^2 - 1").unwrap();
        assert!(delta_close(&i, &z, 5).unwrap().result.same_as(&i).unwrap());
        // the closure of (x^3) at order 2 is (x), which is not stable
        let c = delta_close(&l.parse_ideal("x^3").unwrap(), &l, 2).unwrap();
        assert!(c.result.same_as(&l.parse_ideal("x").unwrap()).unwrap());
        assert!(!c.certified);
    }

    #[test]
    fn memberships() {
        let l = line(Field::Q, "1", &[]);
        assert_eq!(delta_member(&l.int(1), &l.parse_ideal("x").unwrap(), &l, 1).unwrap(), DeltaMembership::Yes);
        let radial = line(Field::Q, "x", &[]);
        assert_eq!(
            delta_member(&radial.int(1), &radial.parse_ideal("x").unwrap(), &radial, 5).unwrap(),
            DeltaMembership::NotFoundAtBound { bound: 5, certified: true }
        );
        assert_eq!(
            delta_member(&radial.poly("x^2").unwrap(), &radial.parse_ideal("x").unwrap(), &radial, 0).unwrap(),
            DeltaMembership::Yes
        );
    }

    #[test]
    fn radical_closures() {
        let l = line(Field::Q, "1", &[]);
        let rd = radical_delta(&l.parse_ideal("x^2").unwrap(), &l, 4, 4).unwrap();
        assert!(rd.result.is_unit().unwrap());
        let radial = line(Field::Q, "x", &[]);
        let rd = radical_delta(&radial.parse_ideal("x^2").unwrap(), &radial, 4, 4).unwrap();
        assert!(rd.fixpoint);
        assert!(rd.result.same_as(&radial.parse_ideal("x").unwrap()).unwrap());
        let rd = radical_delta(&radial.parse_ideal("x").unwrap(), &radial, 4, 4).unwrap();
        assert!(rd.fixpoint && rd.rounds == 0);
        let f2 = line(Field::fp(2).unwrap(), "1", &[]);
        assert!(matches!(radical_delta(&f2.parse_ideal("x^2").unwrap(), &f2, 2, 2), Err(Error::PositiveCharacteristic)));
    }

    #[test]
    fn psharp_examples() {
        let l = line(Field::Q, "1", &[]);
        let res = psharp(&l.parse_ideal("x").unwrap(), &l, 6, DEFAULT_MAXITER).unwrap();
        assert_eq!(res.status, PsharpStatus::DegreeExhausted);
        assert!(res.final_ideal.is_zero() || res.final_ideal.basis().unwrap().is_empty());
        for (k, j) in res.trace.iter().take(6).enumerate() {
            let expect = l.parse_ideal(&format!("x^{}", k + 1)).unwrap();
            assert!(j.same_as(&expect).unwrap(), "step {k}: {j}");
        }
        let radial = line(Field::Q, "x", &[]);
        let res = psharp(&radial.parse_ideal("x").unwrap(), &radial, DEFAULT_DEGREE_BOUND, DEFAULT_MAXITER).unwrap();
        assert_eq!(res.status, PsharpStatus::Fixpoint);
        assert_eq!(res.steps(), 0);
        assert!(res.stable && res.contained);
        let dual = line(Field::fp(2).unwrap(), "1", &["x^2"]);
        let res = psharp(&dual.parse_ideal("x").unwrap(), &dual, DEFAULT_DEGREE_BOUND, DEFAULT_MAXITER).unwrap();
        assert_eq!(dual.display_ideal(&res.final_ideal).unwrap(), "(0)");
        assert!(psharp(&l.parse_ideal("1").unwrap(), &l, 4, 4).is_err());
    }

    #[test]
    fn falsification() {
        let r = PolyRing::new(Field::Q, ["x", "y"]).unwrap();
        let zero = DiffRing::free(&r, vec![]).unwrap();
        let w = primality_falsify(&zero.parse_ideal("x*y").unwrap(), &zero, 50, 3, 1).unwrap();
        let (f, g) = w.unwrap();
        assert_eq!((f.to_text(), g.to_text()), ("x".to_string(), "y".to_string()));
        assert!(primality_falsify(&zero.parse_ideal("x").unwrap(), &zero, 200, 3, 1).unwrap().is_none());
        let dual = line(Field::fp(2).unwrap(), "1", &["x^2"]);
        let (f, g) = primality_falsify(&Ideal::zero(dual.ring()), &dual, 10, 3, 1).unwrap().unwrap();
        assert_eq!((f.to_text(), g.to_text()), ("x".to_string(), "x".to_string()));
    }
}
