//! Ideals of polynomial rings with a lazily filled, thread-safe cache of
//! reduced Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{self, Limits};
use crate::poly::{MonomialOrder, Poly, PolyRing};

/// What is known about stability under the derivations of an ambient
/// differential ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaFlag {
    Unknown,
    /// Generated by the prolongation to this order bound, stability not certified.
    ClosedAtBound(usize),
    /// Certified stable under every derivation.
    Stable,
}

pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    cache: RwLock<HashMap<MonomialOrder, Arc<Vec<Poly>>>>,
    delta: DeltaFlag,
    limits: Limits,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
            delta: self.delta,
            limits: self.limits,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", crate::text::print_ideal(&self.gens))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis() {
            Ok(b) => f.write_str(&crate::text::print_ideal(&sort_descending(b.to_vec()))),
            Err(_) => f.write_str(&crate::text::print_ideal(&self.gens)),
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut kept = Vec::new();
        for g in gens {
            PolyRing::check_same(ring, g.ring())?;
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            cache: RwLock::new(HashMap::new()),
            delta: DeltaFlag::Unknown,
            limits: Limits::default(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, []).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, [Poly::one(ring)]).unwrap()
    }

    pub fn with_limits(mut self, limits: Limits) -> Ideal {
        if self.limits != limits {
            self.limits = limits;
            self.cache.write().unwrap().clear();
        }
        self
    }

    pub fn with_limits_of(self, other: &Ideal) -> Ideal {
        self.with_limits(other.limits)
    }

    pub fn with_delta(mut self, flag: DeltaFlag) -> Ideal {
        self.delta = flag;
        self
    }

    pub fn delta_flag(&self) -> DeltaFlag {
        self.delta
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<Vec<Poly>>> {
        if let Some(b) = self.cache.read().unwrap().get(order) {
            return Ok(b.clone());
        }
        let b = Arc::new(groebner::groebner(&self.gens, order, &self.limits)?);
        self.cache.write().unwrap().entry(order.clone()).or_insert_with(|| b.clone());
        Ok(b)
    }

    /// Reduced Gröbner basis for the default order (degrevlex).
    pub fn basis(&self) -> Result<Arc<Vec<Poly>>> {
        self.groebner(&MonomialOrder::DegRevLex)
    }

    fn seed_cache(&self, order: MonomialOrder, basis: Vec<Poly>) {
        self.cache.write().unwrap().insert(order, Arc::new(basis));
    }

    /// Ideal with the given reduced degrevlex basis as generators.
    pub(crate) fn from_reduced_basis(ring: &Arc<PolyRing>, basis: Vec<Poly>) -> Ideal {
        let ideal = Ideal::new(ring, basis.clone()).expect("basis lives in ring");
        ideal.seed_cache(MonomialOrder::DegRevLex, basis);
        ideal
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        PolyRing::check_same(&self.ring, f.ring())?;
        groebner::normal_form(f, &self.basis()?, &MonomialOrder::DegRevLex)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        Ok(*self.basis()? == *other.basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.basis()?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn add_gens(&self, more: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(more))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The same generators seen in a ring that has all of their variables.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens)?.with_limits(self.limits))
    }

    /// `I ∩ k[vars not in elim]`, generated inside the same ring.
    pub fn eliminate(&self, elim: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if let Some(&bad) = elim.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!("variable index {bad} out of range")));
        }
        if elim.is_empty() {
            return Ok(self.clone());
        }
        let mask: Vec<bool> = (0..n).map(|i| elim.contains(&i)).collect();
        let gb = self.groebner(&MonomialOrder::Elimination(mask))?;
        let kept: Vec<Poly> = gb.iter().filter(|g| elim.iter().all(|&i| !g.involves(i))).cloned().collect();
        // the surviving elements are the reduced degrevlex basis of the contraction
        let out = Ideal::from_reduced_basis(&self.ring, sort_degrevlex(kept));
        Ok(out.with_limits(self.limits))
    }

    /// Intersection via `w·I + (1 - w)·J` and elimination of `w`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let w_name = self.ring.fresh_name("w");
        let big = self.ring.with_var(&w_name)?;
        let w = Poly::var(&big, self.ring.nvars());
        let one_minus_w = &Poly::one(&big) - &w;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&w * &g.embed(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_w * &g.embed(&big)?);
        }
        let elim = Ideal::new(&big, gens)?.with_limits(self.limits).eliminate(&[self.ring.nvars()])?;
        self.contract_from(&elim)
    }

    /// Bring an ideal of `self.ring + extra trailing vars`, whose generators
    /// avoid the extra vars, back into `self.ring`.
    fn contract_from(&self, big: &Ideal) -> Result<Ideal> {
        let basis = big.basis()?;
        let gens = basis.iter().map(|g| g.embed(&self.ring)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_reduced_basis(&self.ring, gens).with_limits(self.limits))
    }

    /// `(I : f) = {x : x f ∈ I}`, via `I ∩ (f)` divided by `f`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroArgument("colon divisor"));
        }
        let principal = Ideal::new(&self.ring, [f.clone()])?;
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::new();
        for g in inter.basis()?.iter() {
            let q = g
                .div_exact(f)
                .ok_or_else(|| Error::Precondition("intersection generator not divisible by f".into()))?;
            gens.push(q);
        }
        Ok(Ideal::new(&self.ring, gens)?.with_limits(self.limits))
    }

    /// `(I : J)`, the intersection of `(I : g)` over generators `g` of `J`.
    pub fn colon_ideal(&self, j: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, &j.ring)?;
        let mut acc = Ideal::unit(&self.ring).with_limits(self.limits);
        for g in &j.gens {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    /// `(I : f^∞)`, via `I + (y f - 1)` and elimination of `y`.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroArgument("saturation element"));
        }
        let y_name = self.ring.fresh_name("y");
        let big = self.ring.with_var(&y_name)?;
        let y = Poly::var(&big, self.ring.nvars());
        let mut gens = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        gens.push(&(&y * &f.embed(&big)?) - &Poly::one(&big));
        let elim = Ideal::new(&big, gens)?.with_limits(self.limits).eliminate(&[self.ring.nvars()])?;
        self.contract_from(&elim)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - y f)`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        PolyRing::check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        let y_name = self.ring.fresh_name("y");
        let big = self.ring.with_var(&y_name)?;
        let y = Poly::var(&big, self.ring.nvars());
        let mut gens = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        gens.push(&Poly::one(&big) - &(&y * &f.embed(&big)?));
        Ideal::new(&big, gens)?.with_limits(self.limits).is_unit()
    }
}

/// Largest leading monomial first, the display order for ideals.
pub fn sort_descending(v: Vec<Poly>) -> Vec<Poly> {
    let mut v = sort_degrevlex(v);
    v.reverse();
    v
}

fn sort_degrevlex(mut v: Vec<Poly>) -> Vec<Poly> {
    let o = MonomialOrder::DegRevLex;
    v.sort_by(|a, b| o.cmp(a.leading_monomial(&o).unwrap(), b.leading_monomial(&o).unwrap()));
    v
}

/// Monic greatest common divisor, from the generator of `(a) ∩ (b)`.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    PolyRing::check_same(a.ring(), b.ring())?;
    let o = MonomialOrder::DegRevLex;
    if a.is_zero() {
        return Ok(b.monic(&o));
    }
    if b.is_zero() {
        return Ok(a.monic(&o));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Poly::one(a.ring()));
    }
    let ring = a.ring();
    let lcm = Ideal::new(ring, [a.clone()])?.intersect(&Ideal::new(ring, [b.clone()])?)?;
    let basis = lcm.basis()?;
    let l = basis.first().ok_or_else(|| Error::Precondition("empty lcm".into()))?;
    let g = (a * b)
        .div_exact(l)
        .ok_or_else(|| Error::Precondition("lcm does not divide the product".into()))?;
    Ok(g.monic(&o))
}

/// Square-free part `g / gcd(g, ∂g/∂x_1, …, ∂g/∂x_n)` in characteristic zero.
pub fn squarefree_part(g: &Poly) -> Result<Poly> {
    if g.ring().field().characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    if g.is_zero() || g.is_constant() {
        return Ok(g.clone());
    }
    let mut d = g.clone();
    for i in 0..g.ring().nvars() {
        if g.involves(i) {
            d = gcd(&d, &g.partial(i))?;
        }
    }
    g.div_exact(&d).ok_or_else(|| Error::Precondition("gcd does not divide".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::text::parse_poly;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::Q, vars.iter().copied()).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap())).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x"]).contains(&p(&r, "x^2")).unwrap());
        assert!(!ideal(&r, &["x"]).contains(&p(&r, "y")).unwrap());
        // 1 = ((x+1) - (x-1)) / 2
        assert!(ideal(&r, &["x - 1", "x + 1"]).contains(&p(&r, "1")).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(i.same_as(&ideal(&r, &["x*y"])).unwrap());
        let a = ideal(&r, &["x^2 - y", "x*y"]);
        assert!(a.intersect(&a).unwrap().same_as(&a).unwrap());
        let u = ideal(&r, &["1"]);
        assert!(ideal(&r, &["x"]).intersect(&u).unwrap().same_as(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn colons() {
        let r = ring(&["x", "y"]);
        let c = ideal(&r, &["x*y"]).colon(&p(&r, "x")).unwrap();
        assert!(c.same_as(&ideal(&r, &["y"])).unwrap());
        let i = ideal(&r, &["x^2 + y", "y^3"]);
        assert!(i.colon(&p(&r, "1")).unwrap().same_as(&i).unwrap());
        let c = ideal(&r, &["x^2"]).colon(&p(&r, "x")).unwrap();
        assert!(c.same_as(&ideal(&r, &["x"])).unwrap());
        assert!(matches!(i.colon(&Poly::zero(&r)), Err(Error::ZeroArgument(_))));
    }

    #[test]
    fn colon_by_definition_on_low_monomials() {
        // ((xy) : x) contains exactly the monomials m with m*x ∈ (xy)
        let r = ring(&["x", "y"]);
        let base = ideal(&r, &["x*y"]);
        let c = base.colon(&p(&r, "x")).unwrap();
        for m in crate::poly::monomials_up_to(2, 2) {
            let m = Poly::term(&r, m, Field::Q.one());
            let by_def = base.contains(&(&m * &p(&r, "x"))).unwrap();
            assert_eq!(c.contains(&m).unwrap(), by_def, "{m}");
        }
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let s = ideal(&r, &["x^2*y"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.same_as(&ideal(&r, &["y"])).unwrap());
        let s = ideal(&r, &["x"]).saturate(&p(&r, "y")).unwrap();
        assert!(s.same_as(&ideal(&r, &["x"])).unwrap());
        let rx = ring(&["x"]);
        assert!(Ideal::zero(&rx).saturate(&p(&rx, "x")).unwrap().is_zero());
    }

    #[test]
    fn radical_membership() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2"]);
        assert!(i.radical_contains(&p(&r, "x")).unwrap());
        assert!(!i.radical_contains(&p(&r, "y")).unwrap());
        // brute check: no power y^k, k <= 4, lies in (x^2)
        for k in 1..=4 {
            assert!(!i.contains(&p(&r, "y").pow(k)).unwrap());
        }
        let j = ideal(&r, &["(x+y)^3"]);
        assert!(j.radical_contains(&p(&r, "x+y")).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring(&["t", "u", "v"]);
        let e = ideal(&r, &["t - u", "t^2 - v"]).eliminate(&[0]).unwrap();
        assert!(e.same_as(&ideal(&r, &["u^2 - v"])).unwrap());
        // u^2 - v vanishes under t = u, v = t^2
        let r2 = ring(&["x", "y"]);
        assert!(ideal(&r2, &["x"]).eliminate(&[1]).unwrap().same_as(&ideal(&r2, &["x"])).unwrap());
        assert!(ideal(&r2, &["x"]).eliminate(&[0]).unwrap().is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let r = ring(&["x", "y"]);
        let g = gcd(&p(&r, "x^2*y - x*y"), &p(&r, "x*y^2")).unwrap();
        assert_eq!(g, p(&r, "x*y"));
        assert_eq!(squarefree_part(&p(&r, "x^2*y^2")).unwrap(), p(&r, "x*y"));
        let s = squarefree_part(&p(&r, "(x - y)^3*(x + 1)")).unwrap();
        assert!(s.monic(&MonomialOrder::DegRevLex) == p(&r, "(x - y)*(x + 1)").monic(&MonomialOrder::DegRevLex));
    }

    #[test]
    fn cache_shared_across_threads() {
        let r = ring(&["x", "y"]);
        let i = Arc::new(ideal(&r, &["x^2 - y", "y^2 - x"]));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let i = i.clone();
                std::thread::spawn(move || i.basis().unwrap().len())
            })
            .collect();
        let lens: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(lens.windows(2).all(|w| w[0] == w[1]));
    }
}
