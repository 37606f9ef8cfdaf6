//! Built-in rings and prime fixtures.

use crate::diff::{Derivation, DiffRing};
use crate::error::Result;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Field;
use crate::svdp::TensorRing;
use crate::text::parse_poly;
use crate::traj::AffineDScheme;

fn build(field: Field, vars: &[&str], derivs: &[(&str, &[&str])], quotient: &[&str]) -> Result<DiffRing> {
    let ring = PolyRing::new(field, vars.iter().copied())?;
    let p = |s: &str| parse_poly(s, &ring);
    let ds = derivs
        .iter()
        .map(|(name, images)| Ok(Derivation::new(*name, images.iter().map(|s| p(s)).collect::<Result<Vec<Poly>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    let q = quotient.iter().map(|s| p(s)).collect::<Result<Vec<_>>>()?;
    DiffRing::new(&ring, ds, q)
}

/// `k[x]` with `x' = 1`.
pub fn line_over(field: Field) -> DiffRing {
    build(field, &["x"], &[("d", &["1"])], &[]).expect("valid ring")
}

pub fn line() -> DiffRing {
    line_over(Field::Q)
}

/// `Q[x]` with `x' = x`.
pub fn radial() -> DiffRing {
    build(Field::Q, &["x"], &[("d", &["x"])], &[]).expect("valid ring")
}

/// `Q[x]` with the zero derivation.
pub fn zero_line() -> DiffRing {
    build(Field::Q, &["x"], &[("d", &["0"])], &[]).expect("valid ring")
}

/// `Q[x, y]` with both partial derivatives.
pub fn partials() -> DiffRing {
    build(Field::Q, &["x", "y"], &[("dx", &["1", "0"]), ("dy", &["0", "1"])], &[]).expect("valid ring")
}

/// `Q[x, y]` with `x ∂x + y ∂y`.
pub fn euler() -> DiffRing {
    build(Field::Q, &["x", "y"], &[("e", &["x", "y"])], &[]).expect("valid ring")
}

/// `Q[x, y]` with `∂x` and `x ∂y`, which do not commute.
pub fn noncommuting() -> DiffRing {
    build(Field::Q, &["x", "y"], &[("dx", &["1", "0"]), ("xdy", &["0", "x"])], &[]).expect("valid ring")
}

/// `k[x, y]/(x², xy, y²)` with `∂x = y`, `∂y = 0`.
pub fn nilsquare(field: Field) -> DiffRing {
    build(field, &["x", "y"], &[("d", &["y", "0"])], &["x^2", "x*y", "y^2"]).expect("valid ring")
}

/// `F_2[x]/(x²)` with `x' = 1`.
pub fn f2_dual() -> DiffRing {
    build(Field::fp(2).expect("prime"), &["x"], &[("d", &["1"])], &["x^2"]).expect("valid ring")
}

pub fn line_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("line", line()).with_primes(&[
        ("generic", "0"),
        ("origin", "x"),
        ("one", "x - 1"),
        ("minus-two", "x + 2"),
        ("i", "x^2 + 1"),
    ])
}

pub fn radial_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("radial", radial()).with_primes(&[
        ("generic", "0"),
        ("origin", "x"),
        ("one", "x - 1"),
        ("sqrt2", "x^2 - 2"),
    ])
}

pub fn zero_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("zero", zero_line()).with_primes(&[("origin", "x")])
}

pub fn partials_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("partials", partials()).with_primes(&[
        ("generic", "0"),
        ("axis", "x"),
        ("origin", "x, y"),
        ("diagonal", "x - y"),
        ("parabola", "x^2 - y"),
    ])
}

pub fn euler_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("euler", euler()).with_primes(&[
        ("generic", "0"),
        ("x-axis", "y"),
        ("y-axis", "x"),
        ("origin", "x, y"),
        ("diagonal", "x - y"),
        ("parabola", "x^2 - y"),
    ])
}

pub fn tensor_scheme() -> Result<AffineDScheme> {
    let t = TensorRing::over(&["u", "v"])?;
    AffineDScheme::new("tensor", t.realization().clone()).with_primes(&[
        ("generic", "0"),
        ("u", "u"),
        ("origin", "u, v"),
        ("parabola", "u^2 - v"),
        ("point", "u, t"),
    ])
}

pub fn f2_dual_scheme() -> Result<AffineDScheme> {
    AffineDScheme::new("f2-dual", f2_dual()).with_primes(&[("origin", "x")])
}

/// Every characteristic-zero scheme with prime fixtures.
pub fn char0_schemes() -> Result<Vec<AffineDScheme>> {
    Ok(vec![line_scheme()?, radial_scheme()?, partials_scheme()?, euler_scheme()?, tensor_scheme()?])
}

/// Ring names accepted by [`named_ring`].
pub const RING_NAMES: &[&str] =
    &["line", "radial", "zero", "partials", "euler", "noncommuting", "nilsquare", "nilsquare-f2", "f2-line", "f2-dual", "tensor"];

pub fn named_ring(name: &str) -> Option<DiffRing> {
    let f2 = || Field::fp(2).expect("prime");
    Some(match name {
        "line" => line(),
        "radial" => radial(),
        "zero" => zero_line(),
        "partials" => partials(),
        "euler" => euler(),
        "noncommuting" => noncommuting(),
        "nilsquare" => nilsquare(Field::Q),
        "nilsquare-f2" => nilsquare(f2()),
        "f2-line" => line_over(f2()),
        "f2-dual" => f2_dual(),
        "tensor" => TensorRing::over(&["u", "v"]).ok()?.realization().clone(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_named_rings_build() {
        for n in RING_NAMES {
            assert!(named_ring(n).is_some(), "{n}");
        }
        assert!(named_ring("nope").is_none());
        assert!(!noncommuting().is_commuting());
    }

    #[test]
    fn enough_fixtures() {
        let n: usize = char0_schemes().unwrap().iter().map(|s| s.fixtures.len()).sum();
        assert!(n >= 20);
    }
}
