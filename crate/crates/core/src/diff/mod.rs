//! Finitely presented differential rings `k[x_1..x_n]/Q` with a finite
//! family of derivations given by their values on the variables.

mod constants;
mod theta;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

pub(crate) use constants::{combine_monomials, push_coords, window_monomials};
pub(crate) use theta::binomial;
pub use constants::{check_constant_fraction, constants_truncated, localize, Constants, FractionValue};
pub use theta::{theta_binomial, theta_compare, ThetaAb, ThetaOrder, ThetaWord};

use crate::error::{Error, Result};
use crate::groebner;
use crate::ideal::{DeltaFlag, Ideal};
use crate::poly::{MonomialOrder, Poly, PolyRing};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    /// `images[j]` is the value on the `j`-th variable.
    pub images: Vec<Poly>,
}

impl Derivation {
    pub fn new(name: impl Into<String>, images: Vec<Poly>) -> Self {
        Derivation { name: name.into(), images }
    }

    pub fn zero(name: impl Into<String>, ring: &Arc<PolyRing>) -> Self {
        Derivation::new(name, vec![Poly::zero(ring); ring.nvars()])
    }

    /// `∂/∂x_i`.
    pub fn partial(name: impl Into<String>, ring: &Arc<PolyRing>, i: usize) -> Self {
        let images = (0..ring.nvars()).map(|j| if i == j { Poly::one(ring) } else { Poly::zero(ring) }).collect();
        Derivation::new(name, images)
    }

    /// Value on the polynomial `f`, without reduction.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(f.ring());
        for (j, img) in self.images.iter().enumerate() {
            if img.is_zero() || !f.involves(j) {
                continue;
            }
            acc = &acc + &(&f.partial(j) * img);
        }
        acc
    }

    pub fn degree_raise(&self) -> i64 {
        self.images.iter().filter_map(|g| g.degree()).map(|d| d as i64 - 1).max().unwrap_or(-1)
    }
}

#[derive(Clone)]
pub struct DiffRing {
    ring: Arc<PolyRing>,
    derivations: Vec<Derivation>,
    quotient: Ideal,
    qbasis: Arc<Vec<Poly>>,
    commuting: bool,
}

impl fmt::Debug for DiffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffRing({})", self)
    }
}

impl fmt::Display for DiffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring)?;
        if !self.quotient.is_zero() {
            write!(f, "/{}", crate::text::print_ideal(&self.qbasis))?;
        }
        for d in &self.derivations {
            let imgs: Vec<String> =
                self.ring.vars().iter().zip(&d.images).map(|(v, g)| format!("{v}->{}", g.to_text())).collect();
            write!(f, " {}:{{{}}}", d.name, imgs.join(", "))?;
        }
        Ok(())
    }
}

impl DiffRing {
    /// Builds the ring and checks that every derivation preserves the
    /// quotient ideal.
    pub fn new(ring: &Arc<PolyRing>, derivations: Vec<Derivation>, quotient: Vec<Poly>) -> Result<DiffRing> {
        let mut names = std::collections::HashSet::new();
        for d in &derivations {
            if !names.insert(d.name.clone()) {
                return Err(Error::InvalidRing(format!("duplicate derivation `{}`", d.name)));
            }
            if d.images.len() != ring.nvars() {
                return Err(Error::InvalidRing(format!(
                    "derivation `{}` has {} images for {} variables",
                    d.name,
                    d.images.len(),
                    ring.nvars()
                )));
            }
            for img in &d.images {
                PolyRing::check_same(ring, img.ring())?;
            }
        }
        let quotient = Ideal::new(ring, quotient)?;
        let qbasis = quotient.basis()?;
        if qbasis.len() == 1 && qbasis[0].is_constant() {
            return Err(Error::InvalidRing("quotient ideal is the unit ideal".into()));
        }
        for d in &derivations {
            for g in quotient.gens() {
                let img = d.apply(g);
                if !groebner::normal_form(&img, &qbasis, &MonomialOrder::DegRevLex)?.is_zero() {
                    return Err(Error::IllDefinedDerivation { derivation: d.name.clone(), generator: g.to_text() });
                }
            }
        }
        // reduce the images once so that printing and degree checks see normal forms
        let mut derivations = derivations;
        for d in &mut derivations {
            for img in &mut d.images {
                *img = groebner::normal_form(img, &qbasis, &MonomialOrder::DegRevLex)?;
            }
        }
        let mut r = DiffRing { ring: ring.clone(), derivations, quotient, qbasis, commuting: false };
        r.commuting = r.compute_commuting();
        Ok(r)
    }

    /// The polynomial ring with no quotient.
    pub fn free(ring: &Arc<PolyRing>, derivations: Vec<Derivation>) -> Result<DiffRing> {
        DiffRing::new(ring, derivations, Vec::new())
    }

    /// Same ring and quotient with a different derivation family.
    pub fn with_derivations(&self, derivations: Vec<Derivation>) -> Result<DiffRing> {
        DiffRing::new(&self.ring, derivations, self.quotient.gens().to_vec())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.field().characteristic()
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    pub fn nderivs(&self) -> usize {
        self.derivations.len()
    }

    pub fn quotient(&self) -> &Ideal {
        &self.quotient
    }

    pub fn quotient_basis(&self) -> &[Poly] {
        &self.qbasis
    }

    pub fn has_quotient(&self) -> bool {
        !self.quotient.is_zero()
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    /// True when no derivation raises total degree.
    pub fn is_graded_stable(&self) -> bool {
        self.derivations.iter().all(|d| d.degree_raise() <= 0)
    }

    pub fn poly(&self, src: &str) -> Result<Poly> {
        Ok(self.reduce(&crate::text::parse_poly(src, &self.ring)?))
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        Poly::var_named(&self.ring, name)
    }

    pub fn int(&self, n: i64) -> Poly {
        Poly::from_i64(&self.ring, n)
    }

    /// Canonical representative modulo the quotient.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.qbasis.is_empty() {
            return f.clone();
        }
        groebner::normal_form(f, &self.qbasis, &MonomialOrder::DegRevLex).expect("same ring")
    }

    pub fn is_zero_mod(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// The ideal generated by `gens` together with the quotient.
    pub fn ideal(&self, gens: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let gens: Vec<Poly> = gens.into_iter().map(|g| self.reduce(&g)).collect();
        Ideal::new(&self.ring, gens.into_iter().chain(self.quotient.gens().iter().cloned()))
    }

    pub fn parse_ideal(&self, src: &str) -> Result<Ideal> {
        self.ideal(crate::text::parse_poly_list(src, &self.ring)?)
    }

    /// Lift an arbitrary ideal of the polynomial ring so that it contains the quotient.
    pub fn lift(&self, i: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.ring, i.ring())?;
        if !self.has_quotient() {
            return Ok(i.clone());
        }
        let flag = i.delta_flag();
        Ok(i.add_gens(self.quotient.gens().iter().cloned())?.with_limits(*i.limits()).with_delta(flag))
    }

    /// Generators of the image of `i` in the quotient, in canonical form.
    pub fn display_gens(&self, i: &Ideal) -> Result<Vec<Poly>> {
        let basis = self.lift(i)?.basis()?;
        let mut out: Vec<Poly> = Vec::new();
        for g in basis.iter() {
            let r = self.reduce(g);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(crate::ideal::sort_descending(out))
    }

    pub fn display_ideal(&self, i: &Ideal) -> Result<String> {
        Ok(crate::text::print_ideal(&self.display_gens(i)?))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.derivations.len() {
            return Err(Error::InvalidArgument(format!("derivation index {i} out of range")));
        }
        Ok(())
    }

    pub fn derivation_index(&self, name: &str) -> Option<usize> {
        self.derivations.iter().position(|d| d.name == name)
    }

    /// `∂_i(f)`, reduced modulo the quotient.
    pub fn derive(&self, f: &Poly, i: usize) -> Result<Poly> {
        PolyRing::check_same(&self.ring, f.ring())?;
        self.check_index(i)?;
        Ok(self.reduce(&self.derivations[i].apply(f)))
    }

    /// Applies the word right to left.
    pub fn apply_theta(&self, f: &Poly, theta: &ThetaWord) -> Result<Poly> {
        PolyRing::check_same(&self.ring, f.ring())?;
        let mut cur = self.reduce(f);
        for &i in theta.0.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.derive(&cur, i)?;
        }
        Ok(cur)
    }

    pub fn apply_ab(&self, f: &Poly, theta: &ThetaAb) -> Result<Poly> {
        if !self.commuting {
            return Err(Error::NonCommuting);
        }
        self.check_arity(theta)?;
        self.apply_theta(f, &theta.to_word())
    }

    fn check_arity(&self, theta: &ThetaAb) -> Result<()> {
        if theta.arity() != self.nderivs() {
            return Err(Error::InvalidArgument(format!(
                "operator has arity {}, ring has {} derivations",
                theta.arity(),
                self.nderivs()
            )));
        }
        Ok(())
    }

    /// `[∂_i, ∂_j](f)` modulo the quotient.
    pub fn commutator(&self, i: usize, j: usize, f: &Poly) -> Result<Poly> {
        let a = self.derive(&self.derive(f, j)?, i)?;
        let b = self.derive(&self.derive(f, i)?, j)?;
        Ok(&a - &b)
    }

    fn compute_commuting(&self) -> bool {
        let d = self.nderivs();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in 0..self.ring.nvars() {
                    let x = Poly::var(&self.ring, k);
                    if !self.commutator(i, j, &x).expect("valid indices").is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `θ(fg)` via `Σ binom(θ, θ₁) θ₁(f) (θ/θ₁)(g)`.
    pub fn leibniz_expand(&self, f: &Poly, g: &Poly, theta: &ThetaAb) -> Result<Poly> {
        if !self.commuting {
            return Err(Error::NonCommuting);
        }
        self.check_arity(theta)?;
        PolyRing::check_same(&self.ring, f.ring())?;
        PolyRing::check_same(&self.ring, g.ring())?;
        let field = self.field();
        let mut acc = Poly::zero(&self.ring);
        for t1 in theta.divisors() {
            let t2 = t1.cofactor_in(theta);
            let c = field.from_bigint(&BigInt::from(theta_binomial(theta, &t1)));
            if c.is_zero() {
                continue;
            }
            let a = self.apply_theta(f, &t1.to_word())?;
            if a.is_zero() {
                continue;
            }
            let b = self.apply_theta(g, &t2.to_word())?;
            acc = &acc + &(&a * &b).scale(&c);
        }
        Ok(self.reduce(&acc))
    }

    /// True when every derivation maps each generator of `i` into `i + Q`.
    pub fn is_delta_ideal(&self, i: &Ideal) -> Result<bool> {
        let lifted = self.lift(i)?;
        if lifted.delta_flag() == DeltaFlag::Stable {
            return Ok(true);
        }
        for g in i.gens() {
            for k in 0..self.nderivs() {
                if !lifted.contains(&self.derive(g, k)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn qring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::Q, vars.iter().copied()).unwrap()
    }

    pub(crate) fn spec(ring: &Arc<PolyRing>, name: &str, images: &[&str]) -> Derivation {
        Derivation::new(name, images.iter().map(|s| parse_poly(s, ring).unwrap()).collect())
    }

    #[test]
    fn commuting_checks() {
        let r = qring(&["x"]);
        assert!(DiffRing::free(&r, vec![spec(&r, "d", &["1"])]).unwrap().is_commuting());
        let r2 = qring(&["x", "y"]);
        let nc = DiffRing::free(&r2, vec![spec(&r2, "d1", &["y", "0"]), spec(&r2, "d2", &["x", "0"])]).unwrap();
        assert!(!nc.is_commuting());
        assert_eq!(nc.commutator(0, 1, &nc.var("x").unwrap()).unwrap(), nc.poly("y").unwrap());
        let pp = DiffRing::free(&r2, vec![Derivation::partial("dx", &r2, 0), Derivation::partial("dy", &r2, 1)]).unwrap();
        assert!(pp.is_commuting());
    }

    #[test]
    fn derive_and_words() {
        let r = qring(&["x"]);
        let line = DiffRing::free(&r, vec![spec(&r, "d", &["1"])]).unwrap();
        assert_eq!(line.derive(&line.poly("x^3").unwrap(), 0).unwrap(), line.poly("3*x^2").unwrap());
        assert_eq!(line.apply_theta(&line.poly("x^2").unwrap(), &ThetaWord(vec![0, 0])).unwrap(), line.int(2));
        let radial = DiffRing::free(&r, vec![spec(&r, "d", &["x"])]).unwrap();
        assert_eq!(radial.derive(&radial.poly("x^3").unwrap(), 0).unwrap(), radial.poly("3*x^3").unwrap());

        let r2 = qring(&["x", "y"]);
        let nc = DiffRing::free(&r2, vec![spec(&r2, "d1", &["y", "0"]), spec(&r2, "d2", &["x", "0"])]).unwrap();
        let x = nc.var("x").unwrap();
        assert_eq!(nc.derive(&nc.poly("x*y").unwrap(), 0).unwrap(), nc.poly("y^2").unwrap());
        assert_eq!(nc.apply_theta(&x, &ThetaWord(vec![0, 1])).unwrap(), nc.poly("y").unwrap());
        assert!(nc.apply_theta(&x, &ThetaWord(vec![1, 0])).unwrap().is_zero());
        assert_eq!(nc.apply_theta(&x, &ThetaWord::identity()).unwrap(), x);
        assert!(matches!(nc.leibniz_expand(&x, &x, &ThetaAb(vec![1, 0])), Err(Error::NonCommuting)));
    }

    #[test]
    fn leibniz_examples() {
        let r = qring(&["x"]);
        let line = DiffRing::free(&r, vec![spec(&r, "d", &["1"])]).unwrap();
        let x = line.var("x").unwrap();
        assert_eq!(line.leibniz_expand(&x, &x, &ThetaAb(vec![2])).unwrap(), line.int(2));
        let radial = DiffRing::free(&r, vec![spec(&r, "d", &["x"])]).unwrap();
        let lhs = radial.leibniz_expand(&x, &x, &ThetaAb(vec![2])).unwrap();
        assert_eq!(lhs, radial.apply_theta(&radial.poly("x^2").unwrap(), &ThetaWord(vec![0, 0])).unwrap());
        assert_eq!(lhs, radial.poly("4*x^2").unwrap());
        let r2 = qring(&["x", "y"]);
        let pp = DiffRing::free(&r2, vec![Derivation::partial("dx", &r2, 0), Derivation::partial("dy", &r2, 1)]).unwrap();
        let v = pp.leibniz_expand(&pp.var("x").unwrap(), &pp.var("y").unwrap(), &ThetaAb(vec![1, 1])).unwrap();
        assert_eq!(v, pp.int(1));
    }

    #[test]
    fn quotient_well_definedness() {
        let r = qring(&["x", "y"]);
        let q: Vec<Poly> = ["x^2", "x*y", "y^2"].iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        let ok = DiffRing::new(&r, vec![spec(&r, "d", &["y", "0"])], q.clone()).unwrap();
        for g in &q {
            assert!(ok.derive(g, 0).unwrap().is_zero());
        }
        let rx = qring(&["x"]);
        let bad = DiffRing::new(&rx, vec![spec(&rx, "d", &["1"])], vec![parse_poly("x^2", &rx).unwrap()]);
        assert!(matches!(bad, Err(Error::IllDefinedDerivation { .. })));
        let f2 = PolyRing::new(Field::fp(2).unwrap(), ["x"]).unwrap();
        let dual = DiffRing::new(&f2, vec![spec(&f2, "d", &["1"])], vec![parse_poly("x^2", &f2).unwrap()]).unwrap();
        assert_eq!(dual.derive(&dual.var("x").unwrap(), 0).unwrap(), dual.int(1));
    }

    #[test]
    fn delta_ideal_checks() {
        let r = qring(&["x"]);
        let radial = DiffRing::free(&r, vec![spec(&r, "d", &["x"])]).unwrap();
        assert!(radial.is_delta_ideal(&radial.parse_ideal("x").unwrap()).unwrap());
        let line = DiffRing::free(&r, vec![spec(&r, "d", &["1"])]).unwrap();
        assert!(!line.is_delta_ideal(&line.parse_ideal("x").unwrap()).unwrap());
        let f2 = PolyRing::new(Field::fp(2).unwrap(), ["x"]).unwrap();
        let f2line = DiffRing::free(&f2, vec![spec(&f2, "d", &["1"])]).unwrap();
        assert!(f2line.is_delta_ideal(&f2line.parse_ideal("x^2").unwrap()).unwrap());
    }
}
