use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Monomial, MonomialOrder, PolyRing};

/// Sparse polynomial with exact coefficients. No zero coefficient is ever
/// stored, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Poly {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Poly {
        Poly::constant(ring, ring.field().from_i64(n))
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Poly {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Poly> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{name}`")))?;
        Ok(Poly::var(ring, i))
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| self.ring.field().zero()))
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let field = self.ring.field();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(i, e - 1), &(c * &field.from_i64(e as i64)));
        }
        out
    }

    /// Substitute variable `i` by `value` (a polynomial in the same ring).
    pub fn subst(&self, i: usize, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one(&self.ring)];
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Poly::term(&self.ring, m.with_exp(i, 0), c.clone());
            out = &out + &(&rest * &powers[e]);
        }
        out
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Scalar)> {
        let mut v: Vec<(Monomial, Scalar)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    /// Scaled so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Re-express in `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(self.with_ring(target));
        }
        if self.ring.field() != target.field() {
            return Err(Error::CharacteristicMismatch(
                self.ring.field().to_string(),
                target.field().to_string(),
            ));
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            let j = target.var_index(v);
            if j.is_none() && self.involves(i) {
                return Err(Error::InvalidArgument(format!("variable `{v}` is not in the target ring")));
            }
            map.push(j);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    exps[*j] = m.exp(i);
                }
            }
            out.add_term(Monomial::new(exps), c);
        }
        Ok(out)
    }

    fn with_ring(&self, ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Exact quotient `self / d` when `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let order = MonomialOrder::DegRevLex;
        let (dm, dc) = d.leading(&order)?;
        let (dm, dc_inv) = (dm.clone(), dc.inv());
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.leading(&order) {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c * &dc_inv;
            rem = &rem - &d.mul_term(&qm, &qc);
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    pub fn to_text(&self) -> String {
        crate::text::print_poly(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_text())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert!(PolyRing::check_same(&self.ring, &rhs.ring).is_ok());
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert!(PolyRing::check_same(&self.ring, &rhs.ring).is_ok());
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), &(c * d));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(Field::Q, ["x", "y"]).unwrap()
    }

    #[test]
    fn no_zero_coefficients_after_cancellation() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let p = &(&x + &y) - &x;
        assert_eq!(p, y);
        assert_eq!(p.nterms(), 1);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(x.div_exact(&y).is_none());
    }

    #[test]
    fn embed_by_name() {
        let r = ring();
        let big = PolyRing::new(Field::Q, ["y", "t", "x"]).unwrap();
        let p = &Poly::var(&r, 0) * &Poly::var(&r, 1);
        let q = p.embed(&big).unwrap();
        assert_eq!(q.terms().next().unwrap().0.exps(), &[1, 0, 1]);
        let small = PolyRing::new(Field::Q, ["x"]).unwrap();
        assert!(p.embed(&small).is_err());
    }

    #[test]
    fn substitution() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = &x.pow(2) * &y;
        let g = f.subst(0, &Poly::from_i64(&r, 3));
        assert_eq!(g, y.scale(&Field::Q.from_i64(9)));
    }
}
