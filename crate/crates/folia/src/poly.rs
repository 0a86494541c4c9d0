//! Sparse exact multivariate polynomials over the scalar field.
//!
//! Terms are stored in a `BTreeMap` keyed by monomials in graded reverse
//! lexicographic order, so iteration is deterministic everywhere. No zero
//! coefficient is ever stored; the zero polynomial is the empty map.

use crate::context::{ensure_same_context, VariableContext};
use crate::error::{FoliaError, Result};
use crate::scalar::{grevlex_cmp, lex_cmp, render_monomial, Scalar};
use num::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector with cached total degree. `Ord` is grevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Self::new(
                self.exps
                    .iter()
                    .zip(&other.exps)
                    .map(|(a, b)| a - b)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => grevlex_cmp(&self.exps, &other.exps),
            other => other,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Term order used by Groebner computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Lex => lex_cmp(a.exps(), b.exps()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::Grevlex
    }
}

/// Sparse polynomial tied to a shared variable context.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, Scalar::one())
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Scalar) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.nvars()), c);
        }
        p
    }

    pub fn var(ctx: &Arc<VariableContext>, index: usize) -> Result<Self> {
        if index >= ctx.nvars() {
            return Err(FoliaError::VariableIndex {
                index,
                nvars: ctx.nvars(),
            });
        }
        let mut p = Self::zero(ctx);
        p.terms
            .insert(Monomial::var(ctx.nvars(), index), Scalar::one());
        Ok(p)
    }

    pub fn from_terms(
        ctx: &Arc<VariableContext>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_constant())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn check_same_context(&self, other: &Self) -> Result<()> {
        ensure_same_context(&self.ctx, &other.ctx)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same context");
        }
        acc
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        match order {
            MonomialOrder::Grevlex => self.terms.iter().next_back(),
            MonomialOrder::Lex => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.cmp(a, b)),
        }
    }

    /// Formal partial derivative with respect to variable `var_index`.
    pub fn partial_derivative(&self, var_index: usize) -> Result<Self> {
        if var_index >= self.ctx.nvars() {
            return Err(FoliaError::VariableIndex {
                index: var_index,
                nvars: self.ctx.nvars(),
            });
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[var_index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var_index] -= 1;
            out.add_term(
                Monomial::new(exps),
                c.mul(&Scalar::from_integer(e as i64)),
            );
        }
        Ok(out)
    }

    /// Exact evaluation at a point given by scalars.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ctx.nvars() {
            return Err(FoliaError::ArityMismatch {
                expected: self.ctx.nvars(),
                got: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitute rationals for parameters, yielding a polynomial over ℚ.
    pub fn specialize_params(&self, assignment: &BTreeMap<String, BigRational>) -> Result<Self> {
        let nparams = self.ctx.nparams();
        let mut values: Vec<Option<BigRational>> = vec![None; nparams];
        for (name, v) in assignment {
            if let Some(i) = self.ctx.param_index(name) {
                values[i] = Some(v.clone());
            }
        }
        // Every parameter that occurs must be covered.
        let mut occurring: Vec<usize> = Vec::new();
        for c in self.terms.values() {
            for i in c.occurring_params() {
                if !occurring.contains(&i) {
                    occurring.push(i);
                }
            }
        }
        for &i in &occurring {
            if values[i].is_none() {
                return Err(FoliaError::MissingParameter {
                    name: self.ctx.param_name(i).to_string(),
                });
            }
        }
        let filled: Vec<BigRational> = values
            .into_iter()
            .map(|v| v.unwrap_or_else(|| BigRational::from_integer(0.into())))
            .collect();
        let names: Vec<String> = self.ctx.params().to_vec();
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.specialize(&filled, &names)?);
        }
        Ok(out)
    }

    /// Canonical text rendering: terms in descending grevlex order,
    /// coefficients as `a/b`, explicit `*`, powers as `x^k`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let var_names = self.ctx.vars();
        let param_names = self.ctx.params();
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let pull_sign = c.is_negative_rational();
            let coeff = if pull_sign { c.neg() } else { c.clone() };
            if i == 0 {
                if pull_sign {
                    out.push('-');
                }
            } else if pull_sign {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(m.exps(), var_names);
            if mono.is_empty() {
                out.push_str(&coeff.render(param_names));
            } else if coeff.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff.render(param_names));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! impl_bin_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("context mismatch")
            }
        }
    };
}

impl_bin_op!(Add, add, try_add);
impl_bin_op!(Sub, sub, try_sub);
impl_bin_op!(Mul, mul, try_mul);

/// All monomials of total degree at most `d` in ascending grevlex order.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, remaining: u32) {
        if i == exps.len() {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[i] = e;
            rec(out, exps, i + 1, remaining - e);
        }
        exps[i] = 0;
    }
    rec(&mut out, &mut exps, 0, d);
    out.sort();
    out
}

/// Dimension of the space of polynomials of total degree at most `d`.
pub fn dim_f(nvars: usize, d: u32) -> usize {
    // binom(n + d, n)
    let mut acc: u128 = 1;
    for i in 1..=nvars as u128 {
        acc = acc * (d as u128 + i) / i;
    }
    acc as usize
}
