//! Differential operator monoids: words over the derivations and their
//! commutative multi-index images.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A word `∂_{i_1} ∂_{i_2} ⋯ ∂_{i_n}`; applied rightmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ThetaWord(pub Vec<usize>);

impl ThetaWord {
    pub fn identity() -> Self {
        ThetaWord(Vec::new())
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn then(&self, other: &ThetaWord) -> ThetaWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ThetaWord(v)
    }

    /// The multi-index of the word in `d` derivations.
    pub fn to_ab(&self, d: usize) -> Result<ThetaAb> {
        let mut e = vec![0u32; d];
        for &i in &self.0 {
            if i >= d {
                return Err(Error::InvalidArgument(format!("derivation index {i} out of range")));
            }
            e[i] += 1;
        }
        Ok(ThetaAb(e))
    }

    /// Every word of order at most `n` over `d` letters, shortest first.
    pub fn all_up_to(d: usize, n: usize) -> Vec<ThetaWord> {
        let mut out = vec![ThetaWord::identity()];
        let mut layer = vec![ThetaWord::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * d);
            for w in &layer {
                for i in 0..d {
                    let mut v = w.0.clone();
                    v.push(i);
                    next.push(ThetaWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for ThetaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("d{}", i + 1)).collect();
        f.write_str(&parts.join("*"))
    }
}

/// `∏ ∂_i^{e_i}` in the free commutative monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaAb(pub Vec<u32>);

impl ThetaAb {
    pub fn one(d: usize) -> Self {
        ThetaAb(vec![0; d])
    }

    pub fn single(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        ThetaAb(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &ThetaAb) -> ThetaAb {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        ThetaAb(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &ThetaAb) -> bool {
        self.arity() == other.arity() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn cofactor_in(&self, other: &ThetaAb) -> ThetaAb {
        ThetaAb(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// A canonical word for this multi-index (indices in increasing order).
    pub fn to_word(&self) -> ThetaWord {
        let mut w = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        ThetaWord(w)
    }

    /// All divisors of `self`.
    pub fn divisors(&self) -> Vec<ThetaAb> {
        let mut out = vec![Vec::with_capacity(self.arity())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for prefix in &out {
                for k in 0..=e {
                    let mut p = prefix.clone();
                    p.push(k);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(ThetaAb).collect()
    }

    /// All multi-indices of order at most `n` in `d` derivations.
    pub fn all_up_to(d: usize, n: u32) -> Vec<ThetaAb> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; d];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ThetaAb>) {
            if i == cur.len() {
                out.push(ThetaAb(cur.clone()));
                return;
            }
            for k in 0..=left {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for ThetaAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("d{}", i + 1) } else { format!("d{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaOrder {
    /// Lexicographic on the exponent vector, first derivation dominant.
    Lex,
    /// Total order first, then lexicographic on the exponent vector.
    Keigher,
}

pub fn theta_compare(a: &ThetaAb, b: &ThetaAb, ord: ThetaOrder) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::InvalidArgument(format!("arity {} vs {}", a.arity(), b.arity())));
    }
    Ok(match ord {
        ThetaOrder::Lex => a.0.cmp(&b.0),
        ThetaOrder::Keigher => a.order().cmp(&b.order()).then_with(|| a.0.cmp(&b.0)),
    })
}

pub(crate) fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `∏ binom(e_i(θ), e_i(θ'))`, zero unless `θ'` divides `θ`.
pub fn theta_binomial(theta: &ThetaAb, sub: &ThetaAb) -> BigUint {
    if !sub.divides(theta) {
        return BigUint::zero();
    }
    theta.0.iter().zip(&sub.0).map(|(&n, &k)| binomial(n, k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab(v: &[u32]) -> ThetaAb {
        ThetaAb(v.to_vec())
    }

    #[test]
    fn binomials() {
        assert_eq!(theta_binomial(&ab(&[2, 1]), &ab(&[1, 0])), BigUint::from(2u32));
        assert_eq!(theta_binomial(&ab(&[3, 2]), &ab(&[3, 2])), BigUint::one());
        assert_eq!(theta_binomial(&ab(&[1, 0]), &ab(&[0, 1])), BigUint::zero());
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
    }

    #[test]
    fn orders() {
        let d2 = ab(&[0, 1]);
        let d1sq = ab(&[2, 0]);
        assert_eq!(theta_compare(&d2, &d1sq, ThetaOrder::Keigher).unwrap(), Ordering::Less);
        assert_eq!(theta_compare(&ab(&[1, 0]), &ab(&[0, 1]), ThetaOrder::Lex).unwrap(), Ordering::Greater);
        assert!(theta_compare(&ab(&[1]), &ab(&[1, 0]), ThetaOrder::Lex).is_err());
    }

    #[test]
    fn word_enumeration() {
        let w = ThetaWord::all_up_to(2, 3);
        assert_eq!(w.len(), 1 + 2 + 4 + 8);
        assert_eq!(ThetaAb::all_up_to(3, 2).len(), 10);
        assert_eq!(ab(&[2, 1]).divisors().len(), 6);
        assert_eq!(ThetaWord(vec![1, 0, 1]).to_ab(2).unwrap(), ab(&[1, 2]));
    }

    fn arb_ab() -> impl Strategy<Value = ThetaAb> {
        prop::collection::vec(0u32..4, 3).prop_map(ThetaAb)
    }

    proptest! {
        #[test]
        fn pascal(t in arb_ab(), s in arb_ab(), i in 0usize..3) {
            let d = ThetaAb::single(3, i);
            let lhs = theta_binomial(&d.mul(&t), &d.mul(&s));
            let rhs = theta_binomial(&t, &s) + theta_binomial(&t, &d.mul(&s));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn orders_are_total_and_compatible(a in arb_ab(), b in arb_ab(), c in arb_ab()) {
            for ord in [ThetaOrder::Lex, ThetaOrder::Keigher] {
                let ab_ = theta_compare(&a, &b, ord).unwrap();
                let ba = theta_compare(&b, &a, ord).unwrap();
                prop_assert_eq!(ab_, ba.reverse());
                if ab_ == Ordering::Equal { prop_assert_eq!(&a, &b); }
                let bc = theta_compare(&b, &c, ord).unwrap();
                if ab_ != Ordering::Greater && bc != Ordering::Greater {
                    prop_assert_ne!(theta_compare(&a, &c, ord).unwrap(), Ordering::Greater);
                }
                prop_assert_eq!(theta_compare(&a.mul(&c), &b.mul(&c), ord).unwrap(), ab_);
                prop_assert_ne!(theta_compare(&ThetaAb::one(3), &a, ord).unwrap(), Ordering::Greater);
                let grown = a.mul(&ThetaAb::single(3, 0));
                prop_assert_eq!(theta_compare(&a, &grown, ord).unwrap(), Ordering::Less);
            }
        }
    }
}
