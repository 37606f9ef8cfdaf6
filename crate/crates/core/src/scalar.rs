//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Field {
    Q,
    Fp { p: u64 },
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Field::Fp { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp { p } => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp { p } => Scalar::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Fp { p } => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp { v: r.to_u64().expect("reduced residue fits"), p }
            }
        }
    }

    pub fn from_biguint(&self, n: &BigUint) -> Scalar {
        self.from_bigint(&BigInt::from(n.clone()))
    }

    /// `num / den`; fails when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::ZeroArgument("denominator"));
        }
        Ok(&self.from_bigint(num) * &d.inv())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp { p } => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms by
/// `BigRational`; residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Sign used by the printer; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Q(r.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) = (self, other) {
            assert_eq!(p, q, "mixed prime fields");
            return;
        }
        assert_eq!(
            std::mem::discriminant(self),
            std::mem::discriminant(other),
            "mixed coefficient fields"
        );
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { v: mul_mod(*a, *b, *p), p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Q;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn residues_are_reduced() {
        let f5 = Field::fp(5).unwrap();
        assert_eq!(f5.from_i64(-1), Scalar::Fp { v: 4, p: 5 });
        let half = f5.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, Scalar::Fp { v: 3, p: 5 });
        assert!(f5.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::fp(4).is_err());
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(2).is_ok());
    }

    #[test]
    fn fermat_inverse() {
        let f7 = Field::fp(7).unwrap();
        for n in 1..7 {
            let x = f7.from_i64(n);
            assert!((&x * &x.inv()).is_one());
        }
    }
}
