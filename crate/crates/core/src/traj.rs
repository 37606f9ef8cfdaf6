//! Affine differential schemes: leaves, trajectories, fibers and the
//! bijection between a fiber and the leaves over it.

use serde::Deserialize;

use crate::dideal::{delta_close, is_delta_stable, psharp, PsharpResult, PsharpStatus, DEFAULT_MAXITER};
use crate::diff::{constants_truncated, localize, DiffRing};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::svdp::TensorRing;
use crate::text::parse_poly_list;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub ideal: Ideal,
    /// Result of `is_delta_ideal` at load time.
    pub delta_ideal: bool,
}

/// `ΔSpec R` together with ideals the caller asserts are prime.
#[derive(Debug, Clone)]
pub struct AffineDScheme {
    pub name: String,
    pub ring: DiffRing,
    pub fixtures: Vec<Fixture>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureSpec {
    name: String,
    generators: Vec<String>,
    asserted: String,
}

impl AffineDScheme {
    pub fn new(name: impl Into<String>, ring: DiffRing) -> Self {
        AffineDScheme { name: name.into(), ring, fixtures: Vec::new() }
    }

    pub fn with_prime(mut self, name: &str, ideal: Ideal) -> Result<Self> {
        if self.ring.lift(&ideal)?.is_unit()? {
            return Err(Error::Precondition(format!("fixture `{name}` is not proper")));
        }
        let delta_ideal = self.ring.is_delta_ideal(&ideal)?;
        self.fixtures.push(Fixture { name: name.to_string(), ideal, delta_ideal });
        Ok(self)
    }

    /// Adds `(name, generators)` pairs parsed in the ring.
    pub fn with_primes(mut self, primes: &[(&str, &str)]) -> Result<Self> {
        for (name, src) in primes {
            let i = Ideal::new(self.ring.ring(), parse_poly_list(src, self.ring.ring())?)?;
            self = self.with_prime(name, i)?;
        }
        Ok(self)
    }

    /// Loads `[{"name", "generators": [...], "asserted": "prime"}, ...]`.
    pub fn with_fixture_json(mut self, json: &str) -> Result<Self> {
        let specs: Vec<FixtureSpec> =
            serde_json::from_str(json).map_err(|e| Error::InvalidArgument(format!("fixture file: {e}")))?;
        for s in specs {
            if s.asserted != "prime" {
                return Err(Error::InvalidArgument(format!("fixture `{}`: unsupported assertion `{}`", s.name, s.asserted)));
            }
            let gens = s.generators.iter().map(|g| self.ring.poly(g)).collect::<Result<Vec<_>>>()?;
            let i = Ideal::new(self.ring.ring(), gens)?;
            self = self.with_prime(&s.name, i)?;
        }
        Ok(self)
    }

    pub fn fixture(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }
}

/// Leaves of `ΔSpec R` are the prime differential ideals.
pub fn is_leaf(p: &Ideal, s: &AffineDScheme) -> Result<bool> {
    if s.ring.lift(p)?.is_unit()? {
        return Err(Error::Precondition("ideal must be proper".into()));
    }
    s.ring.is_delta_ideal(p)
}

/// `p#` at degree bound `d`; a fixpoint defines the trajectory of `p`.
pub fn trajectory(p: &Ideal, s: &AffineDScheme, d: u32) -> Result<PsharpResult> {
    if s.ring.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic);
    }
    psharp(p, &s.ring, d, DEFAULT_MAXITER)
}

#[derive(Debug, Clone)]
pub struct LeafReport {
    pub ideal: Ideal,
    pub is_leaf: bool,
    pub trajectory: PsharpResult,
    pub fiber_point: Option<Scalar>,
}

pub fn leaf_report(p: &Ideal, s: &AffineDScheme, d: u32) -> Result<LeafReport> {
    Ok(LeafReport { ideal: p.clone(), is_leaf: is_leaf(p, s)?, trajectory: trajectory(p, s, d)?, fiber_point: None })
}

/// The point `j(𝔭)` where the leaf `𝔭` meets the fiber over `t = c`.
pub fn fiber_intersection(t: &TensorRing, p: &Ideal, c: &Scalar) -> Result<Ideal> {
    if !is_delta_stable(p, t.realization())? {
        return Err(Error::Precondition("leaf ideal is not a differential ideal".into()));
    }
    t.fiber_j_ideal(p, c)
}

/// Final ideal of `p#` when the chain ended in a way that identifies it.
fn settled(r: &PsharpResult) -> Option<&Ideal> {
    match r.status {
        PsharpStatus::Fixpoint => Some(&r.final_ideal),
        PsharpStatus::DegreeExhausted if r.stable => Some(&r.final_ideal),
        _ => None,
    }
}

/// Checks that `q ↦ (j⁻¹ q)#` and `𝔭 ↦ j(𝔭)` are mutually inverse on
/// the given point `q` of the fiber over `c` and leaf `𝔭`.
pub fn main_theorem_check(t: &TensorRing, q: &Ideal, leaf: &Ideal, c: &Scalar, d: u32) -> Result<Report> {
    if !is_delta_stable(leaf, t.realization())? {
        return Err(Error::Precondition("leaf ideal is not a differential ideal".into()));
    }
    let mut rep = Report::new("main-theorem", 0).bound("degree", d as u64);

    let traj = t.fiber_pullback_sharp(q, c, d)?;
    match settled(&traj) {
        Some(fin) => {
            let back = t.fiber_j_ideal(fin, c)?;
            rep.check(back.same_as(q)?, || format!("j((j^-1 {q})#) = {back} at t = {c}"));
            let ext = t.extend_ideal(q)?;
            rep.check(fin.same_as(&ext)?, || format!("(j^-1 {q})# = {fin}, expected {ext}"));
        }
        None => rep.fail(format!("(j^-1 {q})# did not settle: {}", traj.status)),
    }

    let point = fiber_intersection(t, leaf, c)?;
    rep.check(point.same_as(q)?, || format!("leaf {leaf} meets the fiber in {point}, not {q}"));
    let ext = t.extend_ideal(&point)?;
    rep.check(ext.same_as(leaf)?, || format!("extension of j({leaf}) = {point} is {ext}"));
    let traj = t.fiber_pullback_sharp(&point, c, d)?;
    match settled(&traj) {
        Some(fin) => {
            rep.check(fin.same_as(leaf)?, || format!("(j^-1 j({leaf}))# = {fin}"));
        }
        None => rep.fail(format!("(j^-1 {point})# did not settle: {}", traj.status)),
    }
    Ok(rep)
}

#[derive(Debug, Clone)]
pub enum SimplicityVerdict {
    /// Every sampled closure reached the unit ideal or was not certified.
    SimpleConsistent,
    ProperDeltaIdeal(Ideal),
}

/// Looks for a proper differential ideal among the closures of the samples.
pub fn simplicity_scan(s: &AffineDScheme, samples: &[Poly], n: usize) -> Result<SimplicityVerdict> {
    for f in samples {
        if s.ring.is_zero_mod(f) {
            continue;
        }
        let c = delta_close(&s.ring.ideal([f.clone()])?, &s.ring, n)?;
        if c.certified && !c.result.is_unit()? {
            return Ok(SimplicityVerdict::ProperDeltaIdeal(c.result));
        }
    }
    Ok(SimplicityVerdict::SimpleConsistent)
}

/// Constants form the scalars and keep their dimension under localization.
pub fn constants_field_check(s: &AffineDScheme, d: u32, samples: &[Poly]) -> Result<Report> {
    let mut rep = Report::new("constants-field", 0).bound("degree", d as u64);
    let base = constants_truncated(&s.ring, d)?;
    rep.check(base.is_scalars(), || format!("constants of {} have dimension {}", s.name, base.dim()));
    for f in samples {
        let loc = localize(&s.ring, f)?;
        let c = constants_truncated(&loc, d)?;
        rep.check(c.dim() == base.dim(), || {
            format!("localizing {} at {} changes the constants from {} to {}", s.name, f, base.dim(), c.dim())
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    fn q(n: i64) -> Scalar {
        Field::Q.from_i64(n)
    }

    #[test]
    fn leaves() {
        let radial = fixtures::radial_scheme().unwrap();
        let line = fixtures::line_scheme().unwrap();
        assert!(is_leaf(&radial.ring.parse_ideal("x").unwrap(), &radial).unwrap());
        assert!(!is_leaf(&line.ring.parse_ideal("x").unwrap(), &line).unwrap());
        assert!(is_leaf(&Ideal::zero(line.ring.ring()), &line).unwrap());
        assert!(is_leaf(&line.ring.parse_ideal("1").unwrap(), &line).is_err());
    }

    #[test]
    fn trajectories() {
        let radial = fixtures::radial_scheme().unwrap();
        let r = trajectory(&radial.ring.parse_ideal("x").unwrap(), &radial, 6).unwrap();
        assert_eq!(r.status, PsharpStatus::Fixpoint);
        assert_eq!(radial.ring.display_ideal(&r.final_ideal).unwrap(), "(x)");
        let r = trajectory(&radial.ring.parse_ideal("x - 1").unwrap(), &radial, 6).unwrap();
        assert_eq!(radial.ring.display_ideal(&r.final_ideal).unwrap(), "(0)");
        let line = fixtures::line_scheme().unwrap();
        for c in ["x", "x - 3", "x + 1/2"] {
            let r = trajectory(&line.ring.parse_ideal(c).unwrap(), &line, 6).unwrap();
            assert_eq!(line.ring.display_ideal(&r.final_ideal).unwrap(), "(0)");
        }
        let f2 = fixtures::f2_dual_scheme().unwrap();
        assert!(matches!(trajectory(&Ideal::zero(f2.ring.ring()), &f2, 2), Err(Error::PositiveCharacteristic)));
    }

    #[test]
    fn fiber_points() {
        let t = TensorRing::over(&["u", "v"]).unwrap();
        let leaf = t.extend_ideal(&t.parse_base_ideal("u").unwrap()).unwrap();
        assert!(fiber_intersection(&t, &leaf, &q(0)).unwrap().same_as(&t.parse_base_ideal("u").unwrap()).unwrap());
        assert!(fiber_intersection(&t, &Ideal::zero(t.realization().ring()), &q(0)).unwrap().is_zero());
        let i = t.parse_base_ideal("u^2 - v").unwrap();
        let leaf = t.extend_ideal(&i).unwrap();
        assert!(fiber_intersection(&t, &leaf, &q(2)).unwrap().same_as(&i).unwrap());
        let not_leaf = t.parse_real_ideal("t").unwrap();
        assert!(fiber_intersection(&t, &not_leaf, &q(0)).is_err());
    }

    #[test]
    fn bijection() {
        let t = TensorRing::over(&["u", "v"]).unwrap();
        for (src, c) in [("u", 0), ("0", 0), ("u^2 - v", 1)] {
            let i = t.parse_base_ideal(src).unwrap();
            let leaf = t.extend_ideal(&i).unwrap();
            let rep = main_theorem_check(&t, &i, &leaf, &q(c), 6).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn simplicity() {
        let line = fixtures::line_scheme().unwrap();
        let samples: Vec<Poly> = ["x", "x^2 + 1", "x^3 - x"].iter().map(|s| line.ring.poly(s).unwrap()).collect();
        assert!(matches!(simplicity_scan(&line, &samples, 4).unwrap(), SimplicityVerdict::SimpleConsistent));
        let radial = fixtures::radial_scheme().unwrap();
        let x = radial.ring.poly("x").unwrap();
        match simplicity_scan(&radial, std::slice::from_ref(&x), 4).unwrap() {
            SimplicityVerdict::ProperDeltaIdeal(w) => assert_eq!(radial.ring.display_ideal(&w).unwrap(), "(x)"),
            other => panic!("{other:?}"),
        }
        let zero = fixtures::zero_scheme().unwrap();
        assert!(matches!(simplicity_scan(&zero, &[x], 4).unwrap(), SimplicityVerdict::ProperDeltaIdeal(_)));
    }

    #[test]
    fn constants_and_localization() {
        let line = fixtures::line_scheme().unwrap();
        assert!(constants_field_check(&line, 6, &[line.ring.poly("x").unwrap()]).unwrap().pass);
        let radial = fixtures::radial_scheme().unwrap();
        assert!(constants_field_check(&radial, 6, &[radial.ring.poly("x").unwrap()]).unwrap().pass);
        let zero = fixtures::zero_scheme().unwrap();
        let rep = constants_field_check(&zero, 6, &[zero.ring.poly("x").unwrap()]).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn fixture_files() {
        let s = AffineDScheme::new("line", fixtures::line())
            .with_fixture_json(r#"[{"name": "origin", "generators": ["x"], "asserted": "prime"}]"#)
            .unwrap();
        assert!(!s.fixture("origin").unwrap().delta_ideal);
        let bad = AffineDScheme::new("line", fixtures::line())
            .with_fixture_json(r#"[{"name": "o", "generators": ["x"], "asserted": "radical"}]"#);
        assert!(bad.is_err());
        assert!(AffineDScheme::new("line", fixtures::line()).with_primes(&[("unit", "1")]).is_err());
    }
}
