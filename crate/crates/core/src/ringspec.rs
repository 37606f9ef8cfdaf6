//! JSON description of a differential ring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diff::{Derivation, DiffRing};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub name: String,
    /// Variables left out are sent to zero.
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub derivations: Vec<DerivationSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient: Vec<String>,
}

impl RingSpec {
    pub fn from_json(src: &str) -> Result<RingSpec> {
        serde_json::from_str(src).map_err(|e| Error::InvalidRing(format!("ring spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring spec serializes")
    }

    pub fn build(&self) -> Result<DiffRing> {
        let field = match self.field {
            FieldSpec::Q => Field::Q,
            FieldSpec::Fp { p } => Field::fp(p)?,
        };
        let ring = PolyRing::new(field, self.vars.iter().cloned())?;
        let mut derivs = Vec::with_capacity(self.derivations.len());
        for d in &self.derivations {
            let mut images = vec![Poly::zero(&ring); ring.nvars()];
            for (v, src) in &d.images {
                let i = ring
                    .var_index(v)
                    .ok_or_else(|| Error::InvalidRing(format!("derivation `{}`: unknown variable `{v}`", d.name)))?;
                images[i] = crate::text::parse_poly(src, &ring)?;
            }
            derivs.push(Derivation::new(d.name.clone(), images));
        }
        let quotient = self.quotient.iter().map(|s| crate::text::parse_poly(s, &ring)).collect::<Result<Vec<_>>>()?;
        DiffRing::new(&ring, derivs, quotient)
    }

    pub fn of(r: &DiffRing) -> RingSpec {
        let ring = r.ring();
        let field = match r.field() {
            Field::Q => FieldSpec::Q,
            f => FieldSpec::Fp { p: f.characteristic() },
        };
        let derivations = r
            .derivations()
            .iter()
            .map(|d| DerivationSpec {
                name: d.name.clone(),
                images: ring
                    .vars()
                    .iter()
                    .zip(&d.images)
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(v, p)| (v.clone(), p.to_text()))
                    .collect(),
            })
            .collect();
        RingSpec {
            field,
            vars: ring.vars().to_vec(),
            derivations,
            quotient: r.quotient().gens().iter().map(|g| g.to_text()).collect(),
        }
    }
}

pub fn parse_ring(src: &str) -> Result<DiffRing> {
    RingSpec::from_json(src)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_from_json() {
        let r = parse_ring(r#"{"field": {"type": "Q"}, "vars": ["x"], "derivations": [{"name": "d", "images": {"x": "x"}}]}"#)
            .unwrap();
        assert_eq!(r.derive(&r.poly("x^3").unwrap(), 0).unwrap(), r.poly("3*x^3").unwrap());
    }

    #[test]
    fn round_trip() {
        for name in crate::fixtures::RING_NAMES {
            let r = crate::fixtures::named_ring(name).unwrap();
            let spec = RingSpec::of(&r);
            let again = RingSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(spec, again);
            let built = again.build().unwrap();
            assert_eq!(RingSpec::of(&built), spec, "{name}");
        }
    }

    #[test]
    fn rejections() {
        let bad = [
            r#"{"field": {"type": "Fp", "p": 4}, "vars": ["x"], "derivations": []}"#,
            r#"{"field": {"type": "Q"}, "vars": ["x"], "derivations": [{"name": "d", "images": {"y": "1"}}]}"#,
            r#"{"field": {"type": "Q"}, "vars": ["x"], "derivations": [{"name": "d", "images": {"x": "1"}}], "quotient": ["x^2"]}"#,
            r#"{"field": {"type": "R"}, "vars": ["x"], "derivations": []}"#,
            r#"{"field": {"type": "Q"}, "vars": ["x"]}"#,
        ];
        for src in bad {
            assert!(parse_ring(src).is_err(), "{src}");
        }
        let ok = r#"{"field": {"type": "Fp", "p": 2}, "vars": ["x"], "derivations": [{"name": "d", "images": {"x": "1"}}], "quotient": ["x^2"]}"#;
        assert!(parse_ring(ok).unwrap().has_quotient());
    }
}
