//! Exact coefficient field: rationals, or rational functions in declared
//! parameters.
//!
//! A `Scalar` is either a plain `BigRational` or a reduced fraction of two
//! polynomials in the parameters (`ParamPoly`). Fractions are kept canonical:
//! the denominator is non-zero and monic (leading coefficient 1 in graded
//! reverse lexicographic order), the numerator and denominator are coprime,
//! and parameter-free fractions collapse back to the rational variant. With
//! that convention structural equality is semantic equality.

use crate::error::{FoliaError, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Graded reverse lexicographic comparison of exponent vectors.
pub(crate) fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    // Larger exponent in the last differing slot means smaller.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

/// Lexicographic comparison of exponent vectors.
pub(crate) fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Exponent vector of a parameter monomial, ordered by grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PExp(pub Vec<u32>);

impl Ord for PExp {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for PExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the declared parameters with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoly {
    arity: usize,
    terms: BTreeMap<PExp, BigRational>,
}

impl ParamPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(PExp(vec![0; arity]), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRational::one())
    }

    pub fn param(arity: usize, index: usize) -> Self {
        assert!(index < arity, "parameter index out of range");
        let mut exps = vec![0; arity];
        exps[index] = 1;
        let mut p = Self::zero(arity);
        p.terms.insert(PExp(exps), BigRational::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().0.iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    fn add_term(&mut self, exp: PExp, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                out.add_term(PExp(exps), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    /// Leading term under grevlex.
    pub(crate) fn leading(&self) -> Option<(&PExp, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient under grevlex; zero polynomial gives zero.
    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact multivariate division; `None` when not divisible.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        debug_assert_eq!(self.arity, divisor.arity);
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let (dlm, dlc) = divisor.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while !rem.is_zero() {
            let (rlm, rlc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let mut q = vec![0u32; self.arity];
            for i in 0..self.arity {
                if rlm.0[i] < dlm.0[i] {
                    return None;
                }
                q[i] = rlm.0[i] - dlm.0[i];
            }
            let qc = rlc / &dlc;
            let qexp = PExp(q);
            // rem -= (qc * qexp) * divisor
            for (e, c) in &divisor.terms {
                let exps: Vec<u32> = e.0.iter().zip(&qexp.0).map(|(a, b)| a + b).collect();
                rem.add_term(PExp(exps), -(c * &qc));
            }
            quot.add_term(qexp, qc);
        }
        Some(quot)
    }

    /// Indices of parameters that actually occur.
    pub fn occurring(&self) -> Vec<usize> {
        let mut occ = vec![false; self.arity];
        for e in self.terms.keys() {
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    occ[i] = true;
                }
            }
        }
        occ.iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e.0[v]).max().unwrap_or(0)
    }

    /// Coefficients of powers of parameter `v`, each with the `v`-slot zeroed.
    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, ParamPoly> {
        let mut out: BTreeMap<u32, ParamPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.0[v];
            let mut rest = e.0.clone();
            rest[v] = 0;
            out.entry(k)
                .or_insert_with(|| ParamPoly::zero(self.arity))
                .add_term(PExp(rest), c.clone());
        }
        out
    }

    fn from_coeffs_in(arity: usize, v: usize, coeffs: &BTreeMap<u32, ParamPoly>) -> Self {
        let mut out = Self::zero(arity);
        for (k, c) in coeffs {
            for (e, q) in &c.terms {
                let mut exps = e.0.clone();
                exps[v] += k;
                out.add_term(PExp(exps), q.clone());
            }
        }
        out
    }

    /// Content with respect to parameter `v`: gcd of the `v`-coefficients.
    fn content_in(&self, v: usize) -> ParamPoly {
        let coeffs = self.coeffs_in(v);
        let mut g = ParamPoly::zero(self.arity);
        for c in coeffs.values() {
            g = ParamPoly::gcd(&g, c);
        }
        g
    }

    /// Pseudo-remainder of `self` by `other` viewed as univariate in `v`.
    fn pseudo_rem(&self, other: &Self, v: usize) -> Self {
        let db = other.degree_in(v);
        let bcoeffs = other.coeffs_in(v);
        let blead = bcoeffs.get(&db).unwrap().clone();
        let mut r = self.clone();
        let mut steps = self.degree_in(v) as i64 - db as i64 + 1;
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let rcoeffs = r.coeffs_in(v);
            let rlead = rcoeffs.get(&dr).unwrap().clone();
            // r = blead*r - rlead * t^(dr-db) * other
            let shifted = {
                let mut c = BTreeMap::new();
                for (k, q) in &bcoeffs {
                    c.insert(k + (dr - db), q.clone());
                }
                ParamPoly::from_coeffs_in(self.arity, v, &c)
            };
            r = r.mul(&blead).sub(&shifted.mul(&rlead));
            steps -= 1;
        }
        // Uniform power of the leading coefficient keeps the classical
        // pseudo-remainder identity.
        while steps > 0 {
            r = r.mul(&blead);
            steps -= 1;
        }
        r
    }

    fn primitive_in(&self, v: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.exact_div(&c).expect("content divides")
    }

    /// Monic normalization: leading grevlex coefficient scaled to 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&(BigRational::one() / lc))
    }

    /// Polynomial gcd over ℚ[t₁..t_k], normalized monic. Primitive PRS.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one(a.arity);
        }
        let occ_a = a.occurring();
        let occ_b = b.occurring();
        let v = *occ_a.iter().chain(occ_b.iter()).min().unwrap();
        if !occ_a.contains(&v) || !occ_b.contains(&v) {
            // The main variable is missing from one side; the gcd divides the
            // content of the side that does contain it.
            let (with_v, without_v) = if occ_a.contains(&v) { (a, b) } else { (b, a) };
            return Self::gcd(&with_v.content_in(v), without_v);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = Self::gcd(&ca, &cb);
        let mut pa = a.exact_div(&ca).expect("content divides");
        let mut pb = b.exact_div(&cb).expect("content divides");
        if pa.degree_in(v) < pb.degree_in(v) {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_zero() {
            let r = pa.pseudo_rem(&pb, v).primitive_in(v);
            pa = pb;
            pb = r;
        }
        c.mul(&pa).monic()
    }

    /// Evaluate at rational parameter values.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        debug_assert_eq!(values.len(), self.arity);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    term *= &values[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Render with parameter names; terms in descending grevlex order.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(&e.0, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn render_monomial(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 1 {
            parts.push(names[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join("*")
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of the active coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Fraction { num: ParamPoly, den: ParamPoly },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    pub fn parameter(arity: usize, index: usize) -> Self {
        Scalar::Fraction {
            num: ParamPoly::param(arity, index),
            den: ParamPoly::one(arity),
        }
    }

    pub fn from_param_ratio(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(FoliaError::DivisionByZero);
        }
        Ok(Self::make(num, den))
    }

    /// Canonicalize a fraction: reduce, make the denominator monic, demote
    /// parameter-free values to the rational variant.
    fn make(num: ParamPoly, den: ParamPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::Rational(BigRational::zero());
        }
        if let (Some(n), Some(d)) = (num.as_constant(), den.as_constant()) {
            return Scalar::Rational(n / d);
        }
        let g = ParamPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if let (Some(n), Some(d)) = (num.as_constant(), den.as_constant()) {
            return Scalar::Rational(n / d);
        }
        Scalar::Fraction { num, den }
    }

    fn promote(&self, arity: usize) -> (ParamPoly, ParamPoly) {
        match self {
            Scalar::Rational(q) => (
                ParamPoly::constant(arity, q.clone()),
                ParamPoly::one(arity),
            ),
            Scalar::Fraction { num, den } => (num.clone(), den.clone()),
        }
    }

    fn arity(&self) -> Option<usize> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Fraction { num, .. } => Some(num.arity()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn binop(
        &self,
        other: &Self,
        f: impl Fn(&ParamPoly, &ParamPoly, &ParamPoly, &ParamPoly) -> (ParamPoly, ParamPoly),
    ) -> Self {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => unreachable!("handled by caller"),
            _ => {
                let arity = self.arity().or(other.arity()).unwrap();
                let (an, ad) = self.promote(arity);
                let (bn, bd) = other.promote(arity);
                let (n, d) = f(&an, &ad, &bn, &bd);
                Scalar::make(n, d)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => self.binop(other, |an, ad, bn, bd| {
                (an.mul(bd).add(&bn.mul(ad)), ad.mul(bd))
            }),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q.clone()),
            Scalar::Fraction { num, den } => Scalar::Fraction {
                num: num.neg(),
                den: den.clone(),
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => self.binop(other, |an, ad, bn, bd| (an.mul(bn), ad.mul(bd))),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(FoliaError::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a / b)),
            _ => Ok(self.binop(other, |an, ad, bn, bd| (an.mul(bd), ad.mul(bn)))),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Scalar::one().div(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Specialize parameters to rationals; errors on vanishing denominators.
    pub fn specialize(&self, values: &[BigRational], names: &[String]) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => Ok(Scalar::Rational(q.clone())),
            Scalar::Fraction { num, den } => {
                let d = den.eval(values);
                if d.is_zero() {
                    let assignment = names
                        .iter()
                        .zip(values)
                        .map(|(n, v)| format!("{n}={}", format_rational(v)))
                        .collect::<Vec<_>>()
                        .join(", ");
                    return Err(FoliaError::Pole { assignment });
                }
                Ok(Scalar::Rational(num.eval(values) / d))
            }
        }
    }

    /// Parameters occurring in this scalar.
    pub fn occurring_params(&self) -> Vec<usize> {
        match self {
            Scalar::Rational(_) => vec![],
            Scalar::Fraction { num, den } => {
                let mut occ = num.occurring();
                for i in den.occurring() {
                    if !occ.contains(&i) {
                        occ.push(i);
                    }
                }
                occ.sort_unstable();
                occ
            }
        }
    }

    /// True when rendering should pull the sign out in a sum (rationals only).
    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// Render with parameter names; round-trips through the expression parser.
    pub fn render(&self, param_names: &[String]) -> String {
        match self {
            Scalar::Rational(q) => format_rational(q),
            Scalar::Fraction { num, den } => {
                let num_str = num.render(param_names);
                let num_wrapped = if num.terms.len() > 1 || num_str.starts_with('-') {
                    format!("({num_str})")
                } else {
                    num_str
                };
                if den.is_one() {
                    num_wrapped
                } else {
                    let den_str = den.render(param_names);
                    let den_wrapped = if den.terms.len() > 1 || den_str.contains('*') {
                        format!("({den_str})")
                    } else {
                        den_str
                    };
                    format!("{num_wrapped}/{den_wrapped}")
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Fraction { num, den } => {
                let names: Vec<String> = (0..num.arity()).map(|i| format!("t{}", i + 1)).collect();
                write!(
                    f,
                    "{}",
                    Scalar::Fraction {
                        num: num.clone(),
                        den: den.clone()
                    }
                    .render(&names)
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_ratio(1, 6);
        assert_eq!(a.add(&b), Scalar::from_ratio(1, 2));
        assert_eq!(a.mul(&b), Scalar::from_ratio(1, 18));
        assert_eq!(a.sub(&a), Scalar::zero());
    }

    #[test]
    fn fraction_reduces_to_canonical_form() {
        // (t1^2 - 1) / (t1 - 1) == t1 + 1
        let t1 = ParamPoly::param(2, 0);
        let one = ParamPoly::one(2);
        let num = t1.mul(&t1).sub(&one);
        let den = t1.sub(&one);
        let s = Scalar::from_param_ratio(num, den).unwrap();
        let expected = Scalar::from_param_ratio(t1.add(&one), one).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn parameter_free_fraction_demotes_to_rational() {
        let two = ParamPoly::constant(1, q(2, 1));
        let four = ParamPoly::constant(1, q(4, 1));
        let s = Scalar::from_param_ratio(two, four).unwrap();
        assert_eq!(s, Scalar::from_ratio(1, 2));
        assert!(s.is_rational());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(Scalar::one().div(&Scalar::zero()).is_err());
        assert!(Scalar::from_param_ratio(ParamPoly::one(1), ParamPoly::zero(1)).is_err());
    }

    #[test]
    fn gcd_of_multivariate_polys() {
        // gcd((t1+t2)^2 * t1, (t1+t2) * t2) == t1 + t2 up to a unit
        let t1 = ParamPoly::param(2, 0);
        let t2 = ParamPoly::param(2, 1);
        let s = t1.add(&t2);
        let a = s.mul(&s).mul(&t1);
        let b = s.mul(&t2);
        let g = ParamPoly::gcd(&a, &b);
        assert_eq!(g, s.monic());
    }

    #[test]
    fn specialize_detects_poles() {
        let t2 = ParamPoly::param(2, 1);
        let s = Scalar::from_param_ratio(ParamPoly::one(2), t2).unwrap();
        let names = vec!["t1".to_string(), "t2".to_string()];
        let err = s.specialize(&[q(1, 1), q(0, 1)], &names).unwrap_err();
        assert!(err.to_string().contains("t2=0"));
        let ok = s.specialize(&[q(1, 1), q(4, 1)], &names).unwrap();
        assert_eq!(ok, Scalar::from_ratio(1, 4));
    }

    #[test]
    fn field_axioms_on_small_fractions() {
        let t1 = Scalar::parameter(2, 0);
        let t2 = Scalar::parameter(2, 1);
        let a = t1.add(&Scalar::from_integer(1));
        let b = t2.sub(&t1);
        let c = Scalar::from_ratio(3, 2);
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        assert_eq!(left, right);
        let quot = a.div(&b).unwrap();
        assert_eq!(quot.mul(&b), a);
    }

    #[test]
    fn render_round_formats() {
        let t1 = Scalar::parameter(2, 0);
        let names = vec!["t1".to_string(), "t2".to_string()];
        assert_eq!(t1.render(&names), "t1");
        let s = t1.add(&Scalar::from_integer(1));
        assert_eq!(s.render(&names), "(t1 + 1)");
        let r = Scalar::from_ratio(-3, 2);
        assert_eq!(r.render(&names), "-3/2");
        let frac = t1.div(&Scalar::parameter(2, 1)).unwrap();
        assert_eq!(frac.render(&names), "t1/t2");
    }
}
