//! Constants of a differential ring in a degree window, constant fractions
//! on the radial line, and localization.

use std::collections::BTreeMap;

use super::{Derivation, DiffRing};
use crate::error::{Error, Result};
use crate::groebner;
use crate::linalg::{self, SparseVec};
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Constants {
    pub bound: u32,
    pub basis: Vec<Poly>,
    /// No derivation raises degree, so the window is closed under every derivation.
    pub graded_stable: bool,
}

impl Constants {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when the space is spanned by `1`.
    pub fn is_scalars(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }
}

/// Standard monomials of the quotient of degree at most `d`.
pub(crate) fn window_monomials(r: &DiffRing, d: u32) -> Vec<Monomial> {
    monomials_up_to(r.ring().nvars(), d)
        .into_iter()
        .filter(|m| groebner::is_standard(m, r.quotient_basis(), &MonomialOrder::DegRevLex))
        .collect()
}

pub(crate) fn push_coords(f: &Poly, tag: usize, out: &mut SparseVec<(usize, Monomial)>) {
    for (m, c) in f.terms() {
        out.insert((tag, m.clone()), c.clone());
    }
}

pub(crate) fn combine_monomials(r: &DiffRing, monos: &[Monomial], coeffs: &SparseVec<usize>) -> Poly {
    Poly::from_terms(r.ring(), coeffs.iter().map(|(&j, c)| (monos[j].clone(), c.clone())))
}

/// Basis of `{f : deg f ≤ d, ∂_i f ≡ 0 for all i}`.
pub fn constants_truncated(r: &DiffRing, d: u32) -> Result<Constants> {
    let monos = window_monomials(r, d);
    let images: Vec<SparseVec<(usize, Monomial)>> = monos
        .iter()
        .map(|m| {
            let f = Poly::term(r.ring(), m.clone(), r.field().one());
            let mut v = BTreeMap::new();
            for i in 0..r.nderivs() {
                push_coords(&r.derive(&f, i).expect("index in range"), i, &mut v);
            }
            v
        })
        .collect();
    let ker = linalg::kernel(r.field(), &images);
    let o = MonomialOrder::DegRevLex;
    let mut basis: Vec<Poly> = ker.iter().map(|k| combine_monomials(r, &monos, k).monic(&o)).collect();
    basis.sort_by(|a, b| o.cmp(a.leading_monomial(&o).unwrap(), b.leading_monomial(&o).unwrap()));
    Ok(Constants { bound: d, basis, graded_stable: r.is_graded_stable() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FractionValue {
    Constant(Scalar),
    NotConstant,
}

fn is_radial_line(r: &DiffRing) -> bool {
    r.ring().nvars() == 1
        && r.nderivs() == 1
        && !r.has_quotient()
        && r.characteristic() == 0
        && r.derivations()[0].images[0] == Poly::var(r.ring(), 0)
}

/// Decides whether `f/g` is a constant of the fraction field of `Q[x]`, `x' = x`.
pub fn check_constant_fraction(f: &Poly, g: &Poly, r: &DiffRing) -> Result<FractionValue> {
    if !is_radial_line(r) {
        return Err(Error::Precondition("ring must be Q[x] with x' = x".into()));
    }
    if g.is_zero() {
        return Err(Error::ZeroArgument("denominator"));
    }
    let d = |p: &Poly| r.derive(p, 0);
    let wronskian = &(&d(f)? * g) - &(f * &d(g)?);
    if !wronskian.is_zero() {
        return Ok(FractionValue::NotConstant);
    }
    let (mut f, mut g) = (f.clone(), g.clone());
    let o = MonomialOrder::DegRevLex;
    loop {
        if f.is_zero() {
            return Ok(FractionValue::Constant(r.field().zero()));
        }
        if f.nterms() == 1 && g.nterms() == 1 {
            let (mf, cf) = f.leading(&o).unwrap();
            let (mg, cg) = g.leading(&o).unwrap();
            if mf == mg {
                return Ok(FractionValue::Constant(cf * &cg.inv()));
            }
        }
        let n = r.field().from_i64(f.degree().unwrap() as i64);
        let nf = &d(&f)? - &f.scale(&n);
        let ng = &d(&g)? - &g.scale(&n);
        if ng.is_zero() {
            return Err(Error::Precondition("denominator vanished during reduction".into()));
        }
        f = nf;
        g = ng;
    }
}

/// `R[y]/(Q + (y f - 1))` with `∂(y) = -y² ∂(f)`.
pub fn localize(r: &DiffRing, f: &Poly) -> Result<DiffRing> {
    let f = r.reduce(f);
    if f.is_zero() {
        return Err(Error::ZeroArgument("localization element"));
    }
    if r.quotient().radical_contains(&f)? {
        return Err(Error::Precondition(format!("{} is nilpotent", f.to_text())));
    }
    let name = r.ring().fresh_name("y");
    let big = r.ring().with_var(&name)?;
    let y = Poly::var(&big, r.ring().nvars());
    let fy = f.embed(&big)?;
    let mut derivs = Vec::new();
    for (i, d) in r.derivations().iter().enumerate() {
        let mut images = d.images.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        let df = r.derive(&f, i)?.embed(&big)?;
        images.push(-&(&y.pow(2) * &df));
        derivs.push(Derivation::new(d.name.clone(), images));
    }
    let mut quotient = r.quotient().gens().iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
    quotient.push(&(&y * &fy) - &Poly::one(&big));
    DiffRing::new(&big, derivs, quotient)
}
