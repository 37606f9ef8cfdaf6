//! Seeded random polynomials for property checks and falsification.

use std::sync::Arc;

use rand::Rng;

use crate::poly::{monomials_up_to, Monomial, Poly, PolyRing};

/// A nonzero integer in `[-c, c]`.
fn coeff<R: Rng>(rng: &mut R, c: i64) -> i64 {
    loop {
        let v = rng.gen_range(-c..=c);
        if v != 0 {
            return v;
        }
    }
}

/// A sum of up to `max_terms` terms taken from `monos` with integer
/// coefficients in `[-c, c]`. May be zero in positive characteristic.
pub fn random_combo<R: Rng>(ring: &Arc<PolyRing>, monos: &[Monomial], rng: &mut R, max_terms: usize, c: i64) -> Poly {
    let field = ring.field();
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut p = Poly::zero(ring);
    for _ in 0..n {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p = &p + &Poly::term(ring, m, field.from_i64(coeff(rng, c)));
    }
    p
}

/// A random polynomial of degree at most `max_deg`.
pub fn random_poly<R: Rng>(ring: &Arc<PolyRing>, rng: &mut R, max_deg: u32, max_terms: usize, c: i64) -> Poly {
    let monos = monomials_up_to(ring.nvars(), max_deg);
    random_combo(ring, &monos, rng, max_terms, c)
}

/// Like `random_poly` but never zero.
pub fn random_nonzero<R: Rng>(ring: &Arc<PolyRing>, rng: &mut R, max_deg: u32, max_terms: usize, c: i64) -> Poly {
    loop {
        let p = random_poly(ring, rng, max_deg, max_terms, c);
        if !p.is_zero() {
            return p;
        }
    }
}
