use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A polynomial ring `field[vars]`. Shared behind an `Arc` by every
/// polynomial that lives in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: Field, vars: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A name not already used by this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}{i}")).find(|n| self.var_index(n).is_none()).unwrap()
    }

    /// This ring with one more variable appended (index `nvars()`).
    pub fn with_var(&self, name: &str) -> Result<Arc<PolyRing>> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        PolyRing::new(self.field, vars)
    }

    /// This ring with the given variables dropped.
    pub fn without_vars(&self, drop: &[usize]) -> Result<Arc<PolyRing>> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        PolyRing::new(self.field, vars)
    }

    pub(crate) fn check_same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
        if Arc::ptr_eq(a, b) || a == b {
            return Ok(());
        }
        if a.field != b.field {
            return Err(Error::CharacteristicMismatch(a.field.to_string(), b.field.to_string()));
        }
        Err(Error::RingMismatch)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(", "))
    }
}
