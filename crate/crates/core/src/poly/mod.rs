//! Sparse multivariate polynomials over `Q` and `F_p`.

mod monomial;
mod order;
#[allow(clippy::module_inception)]
mod poly;
mod ring;

pub use monomial::{monomials_up_to, Monomial};
pub use order::MonomialOrder;
pub use poly::Poly;
pub use ring::PolyRing;
