//! The tensor ring `A ⊗_C C[t]` (`t' = 1`, zero derivations on `A`),
//! realized as the polynomial ring `A[t]`.

mod ore;

pub use ore::{ann_operator, op_apply, ore_mul, unit_operator, LinDiffOp};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dideal::{is_delta_stable, psharp, PsharpResult, DEFAULT_MAXITER};
use crate::diff::{Derivation, DiffRing};
use crate::error::{Error, Result};
use crate::ideal::{DeltaFlag, Ideal};
use crate::linalg::{self, Echelon};
use crate::poly::{Monomial, Poly, PolyRing};
use crate::scalar::{Field, Scalar};

pub const TENSOR_VAR: &str = "t";

#[derive(Debug, Clone)]
pub struct TensorRing {
    base: Arc<PolyRing>,
    k: Arc<PolyRing>,
    real: DiffRing,
}

impl TensorRing {
    pub fn new(base: &Arc<PolyRing>) -> Result<TensorRing> {
        if base.field() != Field::Q {
            return Err(Error::PositiveCharacteristic);
        }
        if base.var_index(TENSOR_VAR).is_some() {
            return Err(Error::InvalidRing(format!("`{TENSOR_VAR}` is reserved for the simple factor")));
        }
        let realring = base.with_var(TENSOR_VAR)?;
        let n = base.nvars();
        let images = (0..=n).map(|j| if j == n { Poly::one(&realring) } else { Poly::zero(&realring) }).collect();
        let real = DiffRing::free(&realring, vec![Derivation::new("d", images)])?;
        let k = PolyRing::new(base.field(), [TENSOR_VAR])?;
        Ok(TensorRing { base: base.clone(), k, real })
    }

    /// `A = Q[vars]`.
    pub fn over(vars: &[&str]) -> Result<TensorRing> {
        TensorRing::new(&PolyRing::new(Field::Q, vars.iter().copied())?)
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    /// The simple factor `K = C[t]`.
    pub fn k(&self) -> &Arc<PolyRing> {
        &self.k
    }

    /// `A[t]` with `∂ = d/dt`.
    pub fn realization(&self) -> &DiffRing {
        &self.real
    }

    fn t_index(&self) -> usize {
        self.base.nvars()
    }

    pub fn parse_elem(&self, src: &str) -> Result<TensorElem> {
        self.elem(&crate::text::parse_poly(src, self.real.ring())?)
    }

    pub fn parse_base_ideal(&self, src: &str) -> Result<Ideal> {
        Ideal::new(&self.base, crate::text::parse_poly_list(src, &self.base)?)
    }

    pub fn parse_real_ideal(&self, src: &str) -> Result<Ideal> {
        self.real.parse_ideal(src)
    }

    /// Splits a polynomial of `A[t]` by powers of `t`.
    pub fn elem(&self, p: &Poly) -> Result<TensorElem> {
        PolyRing::check_same(self.real.ring(), p.ring())?;
        let ti = self.t_index();
        let mut parts: BTreeMap<u32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let k = m.exp(ti);
            let am = Monomial::new(m.exps()[..ti].to_vec());
            parts.entry(k).or_default().push((am, c.clone()));
        }
        let coeffs = parts.into_iter().map(|(k, ts)| (k, Poly::from_terms(&self.base, ts))).collect();
        Ok(TensorElem { coeffs })
    }

    pub fn to_poly(&self, x: &TensorElem) -> Result<Poly> {
        let ring = self.real.ring();
        let t = Poly::var(ring, self.t_index());
        let mut acc = Poly::zero(ring);
        for (&k, a) in &x.coeffs {
            acc = &acc + &(&a.embed(ring)? * &t.pow(k));
        }
        Ok(acc)
    }

    /// `a ⊗ λ`.
    pub fn pure(&self, a: &Poly, lambda: &Poly) -> Result<TensorElem> {
        let ring = self.real.ring();
        let l = lambda_in(ring, lambda, self.t_index())?;
        self.elem(&(&a.embed(ring)? * &l))
    }

    /// `L̃ • x = Σ a_k ⊗ (L • t^k)`.
    pub fn apply_tilde(&self, l: &LinDiffOp, x: &TensorElem) -> Result<TensorElem> {
        let mut out = TensorElem::zero();
        for (&k, a) in &x.coeffs {
            let mu = op_apply(l, &Poly::var(&self.k, 0).pow(k))?;
            for (m, c) in mu.terms() {
                out.add(m.exp(0), &a.scale(c));
            }
        }
        Ok(out)
    }

    /// The ideal generated by `I` in the tensor ring; already a differential ideal.
    pub fn extend_ideal(&self, i: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(&self.base, i.ring())?;
        Ok(i.embed(self.real.ring())?.with_delta(DeltaFlag::Stable))
    }

    /// `J ∩ A`.
    pub fn contract_ideal(&self, j: &Ideal) -> Result<Ideal> {
        PolyRing::check_same(self.real.ring(), j.ring())?;
        let e = j.eliminate(&[self.t_index()])?;
        let gens = e.basis()?.iter().map(|g| g.embed(&self.base)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.base, gens)?.with_limits_of(j))
    }

    /// `j(x)` for the evaluation `t ↦ c`.
    pub fn fiber_j(&self, x: &TensorElem, c: &Scalar) -> Result<Poly> {
        let mut acc = Poly::zero(&self.base);
        let cb = Poly::constant(&self.base, c.clone());
        for (&k, a) in &x.coeffs {
            acc = &acc + &(a * &cb.pow(k));
        }
        Ok(acc)
    }

    /// `j(J)`, generated by the images of the generators.
    pub fn fiber_j_ideal(&self, j: &Ideal, c: &Scalar) -> Result<Ideal> {
        PolyRing::check_same(self.real.ring(), j.ring())?;
        let val = Poly::constant(self.real.ring(), c.clone());
        let gens = j
            .gens()
            .iter()
            .map(|g| g.subst(self.t_index(), &val).embed(&self.base))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.base, gens)
    }

    /// `j^{-1}(I) = (I) + (t - c)`.
    pub fn fiber_pullback(&self, i: &Ideal, c: &Scalar) -> Result<Ideal> {
        let ring = self.real.ring();
        let tc = &Poly::var(ring, self.t_index()) - &Poly::constant(ring, c.clone());
        Ok(self.extend_ideal(i)?.add_gens([tc])?.with_delta(DeltaFlag::Unknown))
    }

    /// `p#` of `j^{-1}(I)` at degree bound `d`.
    pub fn fiber_pullback_sharp(&self, i: &Ideal, c: &Scalar, d: u32) -> Result<PsharpResult> {
        let pulled = self.fiber_pullback(i, c)?;
        if pulled.is_unit()? {
            // psharp of the unit ideal is the unit ideal
            let unit = Ideal::unit(self.real.ring()).with_delta(DeltaFlag::Stable);
            return Ok(PsharpResult {
                input: pulled,
                bound: d,
                trace: vec![unit.clone()],
                final_ideal: unit,
                status: crate::dideal::PsharpStatus::Fixpoint,
                stable: true,
                contained: true,
            });
        }
        psharp(&pulled, &self.real, d, DEFAULT_MAXITER)
    }

    /// A shortest decomposition `x = Σ b_i ⊗ λ_i` with `b_i` linearly independent.
    pub fn minimal_decomposition(&self, x: &TensorElem) -> Vec<(Poly, Poly)> {
        let field = self.base.field();
        let mut ech: Echelon<Monomial> = Echelon::new(field);
        let ks: Vec<(u32, &Poly)> = x.coeffs.iter().map(|(&k, a)| (k, a)).collect();
        let mut basis_pos: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out: Vec<(Poly, Poly)> = Vec::new();
        let tpow = |k: u32| Poly::var(&self.k, 0).pow(k);
        for (idx, (k, a)) in ks.iter().enumerate() {
            let v: linalg::SparseVec<Monomial> = a.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            match ech.insert(&v) {
                None => {
                    basis_pos.insert(idx, out.len());
                    out.push(((*a).clone(), tpow(*k)));
                }
                Some(dep) => {
                    // a_k = Σ dep_j a_j, so t^k folds into the λ of each a_j
                    for (j, c) in dep {
                        let pos = basis_pos[&j];
                        out[pos].1 = &out[pos].1 + &tpow(*k).scale(&c);
                    }
                }
            }
        }
        out
    }

    /// Constructive certificate `x = Σ a_i ⊗ λ_i` with every `a_i ∈ J ∩ A`.
    pub fn svdp_reduce(&self, x: &TensorElem, j: &Ideal) -> Result<Vec<(Poly, Poly)>> {
        let xp = self.to_poly(x)?;
        let jl = self.real.lift(j)?;
        if !jl.contains(&xp)? {
            return Err(Error::Precondition("element is not in the ideal".into()));
        }
        if !is_delta_stable(&jl, &self.real)? {
            return Err(Error::Precondition("ideal is not a differential ideal".into()));
        }
        let mut out = Vec::new();
        self.reduce_rec(x, &jl, &mut out)?;
        Ok(out)
    }

    fn reduce_rec(&self, x: &TensorElem, j: &Ideal, out: &mut Vec<(Poly, Poly)>) -> Result<()> {
        let dec = self.minimal_decomposition(x);
        match dec.len() {
            0 => Ok(()),
            1 => {
                let (a, lambda) = &dec[0];
                let u = unit_operator(lambda)?;
                let z = self.apply_tilde(&u, x)?;
                let a1 = z.coeffs.get(&0).cloned().unwrap_or_else(|| Poly::zero(&self.base));
                debug_assert_eq!(&a1, a);
                if !j.contains(&a1.embed(self.real.ring())?)? {
                    return Err(Error::Precondition("ideal is not a differential ideal".into()));
                }
                out.push((a1, lambda.clone()));
                Ok(())
            }
            n => {
                let lambdas: Vec<&Poly> = dec.iter().map(|(_, l)| l).collect();
                for i1 in (0..n).rev() {
                    for i2 in 0..n {
                        if i1 == i2 {
                            continue;
                        }
                        let l2 = lambdas[i2];
                        let ann = ann_operator(l2, 1, l2.degree().unwrap_or(0))?;
                        for l in ann {
                            let hit = op_apply(&l, lambdas[i1])?;
                            if hit.is_zero() {
                                continue;
                            }
                            // L' = λ_{i1} U L sends λ_{i1} to itself and kills λ_{i2}
                            let u = unit_operator(&hit)?;
                            let lp = ore_mul(&LinDiffOp::mul_by(&self.k, lambdas[i1].clone()), &ore_mul(&u, &l)?)?;
                            let y = self.apply_tilde(&lp, x)?;
                            let rest = x.sub(&y);
                            self.reduce_rec(&y, j, out)?;
                            return self.reduce_rec(&rest, j, out);
                        }
                    }
                }
                // all annihilators agree: L • λ_i are constants for L • λ_1 = 1
                let u = unit_operator(lambdas[0])?;
                let z = self.apply_tilde(&u, x)?;
                if z.coeffs.keys().any(|&k| k != 0) {
                    return Err(Error::Precondition("annihilator separation failed".into()));
                }
                let a = z.coeffs.get(&0).cloned().unwrap_or_else(|| Poly::zero(&self.base));
                if !j.contains(&a.embed(self.real.ring())?)? {
                    return Err(Error::Precondition("ideal is not a differential ideal".into()));
                }
                let rest = x.sub(&self.pure(&a, lambdas[0])?);
                out.push((a, lambdas[0].clone()));
                self.reduce_rec(&rest, j, out)
            }
        }
    }

    /// `Σ a_i ⊗ λ_i`.
    pub fn recompose(&self, parts: &[(Poly, Poly)]) -> Result<TensorElem> {
        let mut acc = TensorElem::zero();
        for (a, l) in parts {
            acc = acc.plus(&self.pure(a, l)?);
        }
        Ok(acc)
    }
}

fn lambda_in(ring: &Arc<PolyRing>, lambda: &Poly, ti: usize) -> Result<Poly> {
    if lambda.ring().nvars() != 1 {
        return Err(Error::InvalidArgument("coefficient must lie in C[t]".into()));
    }
    let t = Poly::var(ring, ti);
    let mut acc = Poly::zero(ring);
    for (m, c) in lambda.terms() {
        acc = &acc + &t.pow(m.exp(0)).scale(c);
    }
    Ok(acc)
}

/// `Σ_k a_k ⊗ t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElem {
    coeffs: BTreeMap<u32, Poly>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem { coeffs: BTreeMap::new() }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Poly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&mut self, k: u32, a: &Poly) {
        if a.is_zero() {
            return;
        }
        let s = match self.coeffs.get(&k) {
            Some(b) => b + a,
            None => a.clone(),
        };
        if s.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, s);
        }
    }

    pub fn plus(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (&k, a) in &other.coeffs {
            out.add(k, a);
        }
        out
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (&k, a) in &other.coeffs {
            out.add(k, &-a);
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&k, a)| {
                let lam = match k {
                    0 => "1".to_string(),
                    1 => TENSOR_VAR.to_string(),
                    _ => format!("{TENSOR_VAR}^{k}"),
                };
                let a = if a.nterms() > 1 { format!("({})", a.to_text()) } else { a.to_text() };
                format!("{a} (x) {lam}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Least number of pure tensors summing to `x`: the rank of its `t`-coefficients.
pub fn tensor_length(x: &TensorElem) -> usize {
    let Some(first) = x.coeffs.values().next() else { return 0 };
    let vecs: Vec<linalg::SparseVec<Monomial>> =
        x.coeffs.values().map(|a| a.terms().map(|(m, c)| (m.clone(), c.clone())).collect()).collect();
    linalg::rank(first.ring().field(), &vecs)
}
