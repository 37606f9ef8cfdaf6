use std::cmp::Ordering;

use super::Monomial;

/// Monomial orders used by the Gröbner engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Block order: variables flagged `true` form the first block and
    /// dominate; each block is compared by degrevlex.
    Elimination(Vec<bool>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::DegRevLex => grevlex(a.exps(), b.exps(), |_| true),
            MonomialOrder::Elimination(block) => {
                let first = |i: usize| block.get(i).copied().unwrap_or(false);
                grevlex(a.exps(), b.exps(), first)
                    .then_with(|| grevlex(a.exps(), b.exps(), |i| !first(i)))
            }
        }
    }

    /// True when `u <= v` forces `deg u <= deg v`.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

fn grevlex(a: &[u32], b: &[u32], keep: impl Fn(usize) -> bool) -> Ordering {
    let da: u32 = a.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| e).sum();
    let db: u32 = b.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| e).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if !keep(i) {
                continue;
            }
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}
