//! Linear differential operators `Σ a_i ∂^i` over `K = C[t]` with `t' = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::diff::binomial;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly, PolyRing};

/// `Σ coeffs[i] ∂^i` with coefficients in `K`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinDiffOp {
    k: Arc<PolyRing>,
    coeffs: BTreeMap<u32, Poly>,
}

impl fmt::Debug for LinDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinDiffOp({self})")
    }
}

/// Prints in normal order, coefficients to the left, with `d` for `∂`.
impl fmt::Display for LinDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = op_ring(&self.k);
        let mut p = Poly::zero(&ring);
        for (&i, a) in &self.coeffs {
            for (m, c) in a.terms() {
                p = &p + &Poly::term(&ring, Monomial::new(vec![m.exp(0), i]), c.clone());
            }
        }
        f.write_str(&p.to_text())
    }
}

fn op_ring(k: &Arc<PolyRing>) -> Arc<PolyRing> {
    PolyRing::new(k.field(), [k.vars()[0].clone(), "d".to_string()]).expect("t and d are distinct identifiers")
}

impl LinDiffOp {
    pub fn zero(k: &Arc<PolyRing>) -> Self {
        LinDiffOp { k: k.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(k: &Arc<PolyRing>, coeffs: impl IntoIterator<Item = (u32, Poly)>) -> Self {
        let mut op = LinDiffOp::zero(k);
        for (i, a) in coeffs {
            op.add_term(i, &a);
        }
        op
    }

    /// `a ∂^i`.
    pub fn term(k: &Arc<PolyRing>, i: u32, a: Poly) -> Self {
        LinDiffOp::from_coeffs(k, [(i, a)])
    }

    /// `∂^i`.
    pub fn d(k: &Arc<PolyRing>, i: u32) -> Self {
        LinDiffOp::term(k, i, Poly::one(k))
    }

    /// Multiplication by `a`.
    pub fn mul_by(k: &Arc<PolyRing>, a: Poly) -> Self {
        LinDiffOp::term(k, 0, a)
    }

    /// Parses the normal-ordered form, e.g. `t^2*d^2 + t*d - 1`.
    pub fn parse(src: &str, k: &Arc<PolyRing>) -> Result<Self> {
        let ring = op_ring(k);
        let p = crate::text::parse_poly(src, &ring)?;
        let mut op = LinDiffOp::zero(k);
        for (m, c) in p.terms() {
            let a = Poly::term(k, Monomial::new(vec![m.exp(0)]), c.clone());
            op.add_term(m.exp(1), &a);
        }
        Ok(op)
    }

    fn add_term(&mut self, i: u32, a: &Poly) {
        if a.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&i) {
            Some(b) => b + a,
            None => a.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, sum);
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Poly> {
        &self.coeffs
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> LinDiffOp {
        LinDiffOp::from_coeffs(&self.k, self.coeffs.iter().map(|(&i, a)| (i, a.scale(c))))
    }

    pub fn add(&self, other: &LinDiffOp) -> LinDiffOp {
        let mut out = self.clone();
        for (&i, a) in &other.coeffs {
            out.add_term(i, a);
        }
        out
    }
}

fn nth_derivative(p: &Poly, k: u32) -> Poly {
    let mut q = p.clone();
    for _ in 0..k {
        if q.is_zero() {
            break;
        }
        q = q.partial(0);
    }
    q
}

/// Product in `K[∂]`, using `∂^i b = Σ_k binom(i, k) b^{(k)} ∂^{i-k}`.
pub fn ore_mul(l1: &LinDiffOp, l2: &LinDiffOp) -> Result<LinDiffOp> {
    PolyRing::check_same(&l1.k, &l2.k)?;
    let field = l1.k.field();
    let mut out = LinDiffOp::zero(&l1.k);
    for (&i, a) in &l1.coeffs {
        for (&j, b) in &l2.coeffs {
            for k in 0..=i {
                let db = nth_derivative(b, k);
                if db.is_zero() {
                    break;
                }
                let c = field.from_bigint(&BigInt::from(binomial(i, k)));
                out.add_term(i - k + j, &(a * &db).scale(&c));
            }
        }
    }
    Ok(out)
}

/// `L • λ = Σ a_i λ^{(i)}`.
pub fn op_apply(l: &LinDiffOp, lambda: &Poly) -> Result<Poly> {
    PolyRing::check_same(&l.k, lambda.ring())?;
    let mut acc = Poly::zero(&l.k);
    for (&i, a) in &l.coeffs {
        acc = &acc + &(a * &nth_derivative(lambda, i));
    }
    Ok(acc)
}

/// `(1 / (n! lc(λ))) ∂^n` with `n = deg λ`, which sends `λ` to `1`.
pub fn unit_operator(lambda: &Poly) -> Result<LinDiffOp> {
    if lambda.is_zero() {
        return Err(Error::ZeroArgument("operator target"));
    }
    let k = lambda.ring();
    let n = lambda.degree().unwrap();
    let lc = lambda.coeff(&Monomial::var(1, 0, n));
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let c = &k.field().from_bigint(&fact) * &lc;
    Ok(LinDiffOp::term(k, n, Poly::constant(k, c.inv())))
}

/// Basis of `{L : ord L ≤ maxord, deg of coefficients ≤ coeffdeg, L • λ = 0}`.
pub fn ann_operator(lambda: &Poly, maxord: u32, coeffdeg: u32) -> Result<Vec<LinDiffOp>> {
    let k = lambda.ring();
    let one = k.field().one();
    let mut slots = Vec::new();
    let mut images: Vec<linalg::SparseVec<Monomial>> = Vec::new();
    for i in 0..=maxord {
        let di = nth_derivative(lambda, i);
        for e in 0..=coeffdeg {
            let img = &Poly::term(k, Monomial::var(1, 0, e), one.clone()) * &di;
            slots.push((i, e));
            images.push(img.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
        }
    }
    let ker = linalg::kernel(k.field(), &images);
    Ok(ker
        .into_iter()
        .map(|v| {
            LinDiffOp::from_coeffs(
                k,
                v.into_iter().map(|(s, c)| {
                    let (i, e) = slots[s];
                    (i, Poly::term(k, Monomial::var(1, 0, e), c))
                }),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn k() -> Arc<PolyRing> {
        PolyRing::new(Field::Q, ["t"]).unwrap()
    }

    fn op(s: &str) -> LinDiffOp {
        LinDiffOp::parse(s, &k()).unwrap()
    }

    fn p(s: &str) -> Poly {
        crate::text::parse_poly(s, &k()).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(ore_mul(&op("d"), &op("t")).unwrap(), op("t*d + 1"));
        assert_eq!(ore_mul(&op("d"), &op("d")).unwrap(), op("d^2"));
        assert_eq!(ore_mul(&op("t*d"), &op("t*d")).unwrap(), op("t^2*d^2 + t*d"));
        assert_eq!(op("t^2*d^2 + t*d").to_string(), "t^2*d^2 + t*d");
    }

    #[test]
    fn actions() {
        assert_eq!(op_apply(&op("d^2"), &p("t^2")).unwrap(), p("2"));
        assert_eq!(op_apply(&op("t*d"), &p("t^3")).unwrap(), p("3*t^3"));
        assert!(op_apply(&op("d"), &p("1")).unwrap().is_zero());
    }

    #[test]
    fn unit_operators() {
        assert_eq!(unit_operator(&p("t^2")).unwrap(), op("1/2*d^2"));
        assert_eq!(unit_operator(&p("5")).unwrap(), op("1/5"));
        assert!(unit_operator(&p("0")).is_err());
        let l = p("3*t^3 - t + 7");
        assert_eq!(op_apply(&unit_operator(&l).unwrap(), &l).unwrap(), p("1"));
    }

    fn in_span(target: &LinDiffOp, basis: &[LinDiffOp]) -> bool {
        let key = |o: &LinDiffOp| -> linalg::SparseVec<(u32, u32)> {
            o.coeffs().iter().flat_map(|(&i, a)| a.terms().map(move |(m, c)| ((i, m.exp(0)), c.clone()))).collect()
        };
        let imgs: Vec<_> = basis.iter().map(key).collect();
        linalg::solve(Field::Q, &imgs, &key(target)).is_some()
    }

    #[test]
    fn annihilators() {
        let ann = ann_operator(&p("t"), 2, 1).unwrap();
        for l in &ann {
            assert!(op_apply(l, &p("t")).unwrap().is_zero());
        }
        assert!(in_span(&op("d^2"), &ann));
        assert!(in_span(&op("t*d - 1"), &ann));
        assert!(in_span(&op("d"), &ann_operator(&p("1"), 1, 0).unwrap()));
        // all of the 2 * 2 slots
        assert_eq!(ann_operator(&p("0"), 1, 1).unwrap().len(), 4);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-3i64..=3, 1..4).prop_map(|cs| {
            let k = k();
            let mut acc = Poly::zero(&k);
            for (e, c) in cs.into_iter().enumerate() {
                acc = &acc + &Poly::term(&k, Monomial::var(1, 0, e as u32), Field::Q.from_i64(c));
            }
            acc
        })
    }

    fn arb_op() -> impl Strategy<Value = LinDiffOp> {
        prop::collection::vec(arb_poly(), 1..4).prop_map(|cs| LinDiffOp::from_coeffs(&k(), cs.into_iter().enumerate().map(|(i, a)| (i as u32, a))))
    }

    proptest! {
        #[test]
        fn action_is_equivariant(l in arb_op(), m in arb_op(), lam in arb_poly()) {
            let lm = ore_mul(&l, &m).unwrap();
            prop_assert_eq!(op_apply(&lm, &lam).unwrap(), op_apply(&l, &op_apply(&m, &lam).unwrap()).unwrap());
        }

        #[test]
        fn product_is_associative(a in arb_op(), b in arb_op(), c in arb_op()) {
            let left = ore_mul(&ore_mul(&a, &b).unwrap(), &c).unwrap();
            let right = ore_mul(&a, &ore_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
