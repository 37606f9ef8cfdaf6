//! Buchberger's algorithm with the product and chain criteria, full
//! reduction, and reduced-basis normalization.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::scalar::Scalar;

/// Guardrails that turn runaway computations into [`Error::Resource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 64, max_terms: 50_000, max_pairs: 200_000 }
    }
}

/// Terms sorted descending under a fixed order.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Monomial, Scalar)>,
}

impl Sorted {
    fn from_poly(p: &Poly, order: &MonomialOrder) -> Sorted {
        Sorted { terms: p.sorted_terms(order) }
    }

    fn to_poly(&self, ring: &Arc<PolyRing>) -> Poly {
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv();
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

/// `a[from..] - c * m * b`, merged in order.
fn sub_shifted(
    a: &[(Monomial, Scalar)],
    c: &Scalar,
    m: &Monomial,
    b: &[(Monomial, Scalar)],
    order: &MonomialOrder,
) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| (b[k].0.mul(m), &b[k].1 * c);
    let mut next_b = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() || next_b.is_some() {
        match (a.get(i), next_b.as_ref()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let y = next_b.take().unwrap();
                    out.push((y.0, -&y.1));
                    j += 1;
                    next_b = (j < b.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let s = &x.1 - &y.1;
                    if !s.is_zero() {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    next_b = (j < b.len()).then(|| shifted(j));
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let y = next_b.take().unwrap();
                out.push((y.0, -&y.1));
                j += 1;
                next_b = (j < b.len()).then(|| shifted(j));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `p` by monic `basis`.
fn reduce(p: Sorted, basis: &[Sorted], order: &MonomialOrder, limits: &Limits) -> Result<Sorted> {
    let mut rest = p.terms;
    let mut start = 0usize;
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while start < rest.len() {
        let (m, c) = rest[start].clone();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                // rest[start] cancels against the head of g shifted by q
                rest = sub_shifted(&rest[start + 1..], &c, &q, &g.terms[1..], order);
                start = 0;
                if rest.len() > limits.max_terms {
                    return Err(Error::Resource(format!("intermediate polynomial exceeds {} terms", limits.max_terms)));
                }
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    Ok(Sorted { terms: rem })
}

fn spoly(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let one = f.terms[0].1.field().one();
    let fs: Vec<(Monomial, Scalar)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    Sorted { terms: sub_shifted(&fs, &one, &mg, &g.terms[1..], order) }
}

fn check_inputs(gens: &[Poly]) -> Result<Option<Arc<PolyRing>>> {
    let Some(first) = gens.first() else { return Ok(None) };
    for g in &gens[1..] {
        PolyRing::check_same(first.ring(), g.ring())?;
    }
    Ok(Some(first.ring().clone()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Empty for the zero ideal, `[1]` for the unit ideal. The basis is sorted
/// by leading monomial, ascending.
pub fn groebner(gens: &[Poly], order: &MonomialOrder, limits: &Limits) -> Result<Vec<Poly>> {
    let Some(ring) = check_inputs(gens)? else { return Ok(Vec::new()) };
    let start: Vec<Sorted> = gens.iter().map(|g| Sorted::from_poly(g, order)).collect();
    let basis = buchberger(start, 0, order, limits)?;
    Ok(basis.iter().map(|s| s.to_poly(&ring)).collect())
}

/// Reduced basis of `(gb) + (new)` where `gb` is already a Gröbner basis
/// for `order`. Pairs inside `gb` are skipped.
pub fn groebner_extend(gb: &[Poly], new: &[Poly], order: &MonomialOrder, limits: &Limits) -> Result<Vec<Poly>> {
    let all: Vec<Poly> = gb.iter().chain(new).cloned().collect();
    let Some(ring) = check_inputs(&all)? else { return Ok(Vec::new()) };
    let start: Vec<Sorted> = all.iter().map(|g| Sorted::from_poly(g, order)).collect();
    let basis = buchberger(start, gb.len(), order, limits)?;
    Ok(basis.iter().map(|s| s.to_poly(&ring)).collect())
}

fn buchberger(start: Vec<Sorted>, known_gb: usize, order: &MonomialOrder, limits: &Limits) -> Result<Vec<Sorted>> {
    let mut basis: Vec<Sorted> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for (idx, mut g) in start.into_iter().enumerate() {
        if idx >= known_gb && !basis.is_empty() {
            g = reduce(g, &basis, order, limits)?;
        }
        if g.is_zero() {
            continue;
        }
        g.make_monic();
        if g.lm().is_one() {
            return Ok(vec![g]);
        }
        let k = basis.len();
        if idx >= known_gb {
            for i in 0..k {
                pending.insert((i, k));
            }
        }
        basis.push(g);
    }

    let mut processed = 0usize;
    let mut queue: Vec<(usize, usize, Monomial)> =
        pending.iter().map(|&(i, j)| (i, j, basis[i].lm().lcm(basis[j].lm()))).collect();
    while !queue.is_empty() {
        // normal selection strategy: smallest lcm first
        let pos = (0..queue.len())
            .min_by(|&a, &b| order.cmp(&queue[a].2, &queue[b].2).then_with(|| (queue[a].0, queue[a].1).cmp(&(queue[b].0, queue[b].1))))
            .unwrap();
        let (i, j, l) = queue.swap_remove(pos);
        pending.remove(&(i, j));
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::Resource(format!("more than {} S-pairs", limits.max_pairs)));
        }

        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().coprime(fj.lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = spoly(fi, fj, order);
        let mut h = reduce(s, &basis, order, limits)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            return Ok(vec![h]);
        }
        if h.degree() > limits.max_degree {
            return Err(Error::Resource(format!("basis element degree exceeds {}", limits.max_degree)));
        }
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pending.insert((i, k));
            queue.push((i, k, b.lm().lcm(h.lm())));
        }
        basis.push(h);
    }

    interreduce(basis, order, limits)
}

fn interreduce(basis: Vec<Sorted>, order: &MonomialOrder, limits: &Limits) -> Result<Vec<Sorted>> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Sorted> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Sorted> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let head = minimal[i].terms[0].clone();
        let tail = Sorted { terms: minimal[i].terms[1..].to_vec() };
        let mut t = reduce(tail, &others, order, limits)?;
        t.terms.insert(0, head);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// Normal form of `f` with respect to a Gröbner basis for `order`.
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Result<Poly> {
    for g in basis {
        PolyRing::check_same(f.ring(), g.ring())?;
    }
    let b: Vec<Sorted> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    let r = reduce(Sorted::from_poly(f, order), &b, order, &Limits::default())?;
    Ok(r.to_poly(f.ring()))
}

/// A Gröbner basis prepared for repeated normal forms.
pub struct Reducer {
    ring: Option<Arc<PolyRing>>,
    basis: Vec<Sorted>,
    lms: Vec<Monomial>,
    order: MonomialOrder,
}

impl Reducer {
    pub fn new(basis: &[Poly], order: &MonomialOrder) -> Reducer {
        let b: Vec<Sorted> = basis
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let mut s = Sorted::from_poly(g, order);
                s.make_monic();
                s
            })
            .collect();
        let lms = b.iter().map(|s| s.lm().clone()).collect();
        Reducer { ring: basis.first().map(|g| g.ring().clone()), basis: b, lms, order: order.clone() }
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        if let Some(r) = &self.ring {
            PolyRing::check_same(r, f.ring())?;
        }
        if self.basis.is_empty() || f.is_zero() {
            return Ok(f.clone());
        }
        let r = reduce(Sorted::from_poly(f, &self.order), &self.basis, &self.order, &Limits::default())?;
        Ok(r.to_poly(f.ring()))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.lms.iter().all(|lm| !lm.divides(m))
    }
}

/// Whether `m` is a standard monomial (not divisible by any leading monomial).
pub fn is_standard(m: &Monomial, basis: &[Poly], order: &MonomialOrder) -> bool {
    basis.iter().filter_map(|g| g.leading_monomial(order)).all(|lm| !lm.divides(m))
}
