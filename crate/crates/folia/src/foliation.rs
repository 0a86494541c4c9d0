//! Polynomial vector fields, Lie brackets, bracket closure of generating
//! sets, iterated-derivative words, and the contact order at a point or
//! along a subvariety.
//!
//! Contact orders are searched breadth-first over words ordered by length
//! and then lexicographically by generator index, so witness words are
//! deterministic. Exact membership in the maximal invariant ideal is
//! undecidable in bounded steps, which the result type surfaces as an
//! `AtLeast` outcome instead of a silent truncation.

use crate::context::{ensure_same_context, VariableContext};
use crate::error::{FoliaError, Result};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;
use std::sync::Arc;

pub const DEFAULT_WORD_CAP: usize = 12;
pub const DEFAULT_SPAN_CAP: usize = 64;
pub const DEFAULT_DIM_CAP: usize = 64;

/// A derivation Σ aᵢ ∂/∂xᵢ with polynomial components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: Arc<VariableContext>,
    components: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ctx: &Arc<VariableContext>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != ctx.nvars() {
            return Err(FoliaError::ArityMismatch {
                expected: ctx.nvars(),
                got: components.len(),
            });
        }
        for c in &components {
            ensure_same_context(ctx, c.context())?;
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            components,
        })
    }

    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            components: vec![Polynomial::zero(ctx); ctx.nvars()],
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Apply to a polynomial: Σ aᵢ ∂f/∂xᵢ.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        ensure_same_context(&self.ctx, f.context())?;
        let mut out = Polynomial::zero(&self.ctx);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let df = f.partial_derivative(i)?;
            if !df.is_zero() {
                out = out.try_add(&a.try_mul(&df)?)?;
            }
        }
        Ok(out)
    }

    /// Render as `a d/dx + b d/dy`; the zero derivation prints one zero term.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let body = c.render();
                let wrapped = if c.num_terms() > 1 {
                    format!("({body})")
                } else {
                    body
                };
                format!("{wrapped} d/d{}", self.ctx.var_name(i))
            })
            .collect();
        if parts.is_empty() {
            format!("0 d/d{}", self.ctx.var_name(0))
        } else {
            parts.join(" + ")
        }
    }
}

/// Lie bracket [d1, d2], component-wise d1(bᵢ) − d2(aᵢ).
pub fn lie_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    ensure_same_context(d1.context(), d2.context())?;
    let mut components = Vec::with_capacity(d1.components.len());
    for i in 0..d1.components.len() {
        let left = d1.apply(&d2.components[i])?;
        let right = d2.apply(&d1.components[i])?;
        components.push(left.try_sub(&right)?);
    }
    Derivation::new(d1.context(), components)
}

/// A generating set for the module of derivations, with a flag recording
/// whether bracket stability has been verified up to the coefficient degree
/// cap.
#[derive(Debug, Clone)]
pub struct FoliationSpec {
    ctx: Arc<VariableContext>,
    names: Vec<String>,
    generators: Vec<Derivation>,
    pub bracket_closed: bool,
    pub closure_degree_cap: u32,
}

impl FoliationSpec {
    pub fn from_named(
        named: Vec<(String, Derivation)>,
        bracket_closed: bool,
        closure_degree_cap: u32,
    ) -> Result<Self> {
        let Some((_, first)) = named.first() else {
            return Err(FoliaError::EmptyInput {
                what: "foliation generator list".into(),
            });
        };
        let ctx = Arc::clone(first.context());
        for (_, d) in &named {
            ensure_same_context(&ctx, d.context())?;
        }
        let (names, generators) = named.into_iter().unzip();
        Ok(Self {
            ctx,
            names,
            generators,
            bracket_closed,
            closure_degree_cap,
        })
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Decide whether `target` lies in the module generated by `gens` with
/// polynomial coefficients of total degree at most `degree_cap`.
fn in_module(gens: &[Derivation], target: &Derivation, degree_cap: u32) -> Result<bool> {
    if target.is_zero() {
        return Ok(true);
    }
    let ctx = target.context();
    let nvars = ctx.nvars();
    let coeff_monos = monomials_up_to(nvars, degree_cap);
    // Unknown u_{k,m}: coefficient of monomial m in the multiplier of gens[k].
    // Equations are indexed by (component, monomial of the expanded products).
    let mut eq_monos: Vec<Vec<Monomial>> = vec![Vec::new(); nvars];
    let collect = |comp: usize, m: &Monomial, store: &mut Vec<Vec<Monomial>>| {
        if !store[comp].contains(m) {
            store[comp].push(m.clone());
        }
    };
    for gen in gens {
        for (comp, a) in gen.components().iter().enumerate() {
            for cm in &coeff_monos {
                for (m, _) in a.terms() {
                    collect(comp, &m.mul(cm), &mut eq_monos);
                }
            }
        }
    }
    for (comp, t) in target.components().iter().enumerate() {
        for (m, _) in t.terms() {
            collect(comp, m, &mut eq_monos);
        }
    }
    for monos in eq_monos.iter_mut() {
        monos.sort();
    }
    let ncols = gens.len() * coeff_monos.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for comp in 0..nvars {
        for m in &eq_monos[comp] {
            let mut row = vec![Scalar::zero(); ncols];
            for (k, gen) in gens.iter().enumerate() {
                for (ci, cm) in coeff_monos.iter().enumerate() {
                    // coefficient of m in cm * gens[k].components[comp]
                    if let Some(rest) = m.try_div(cm) {
                        let c = gen.components()[comp].coeff(&rest);
                        if !c.is_zero() {
                            row[k * coeff_monos.len() + ci] = c;
                        }
                    }
                }
            }
            rows.push(row);
            rhs.push(target.components()[comp].coeff(m));
        }
    }
    let matrix = Matrix::from_rows(rows, ncols);
    Ok(matrix.solve(&rhs)?.is_some())
}

/// Close a generating set under Lie brackets, adjoining brackets that are
/// not module members with coefficients of degree ≤ `degree_cap`. Stops at
/// a fixpoint or at `size_cap`, flagging the outcome.
pub fn close_under_brackets(
    named: Vec<(String, Derivation)>,
    degree_cap: u32,
    size_cap: usize,
) -> Result<FoliationSpec> {
    let mut spec = FoliationSpec::from_named(named, false, degree_cap)?;
    let mut checked = 0usize; // pairs (i, j) with i < j < checked are done
    loop {
        let n = spec.generators.len();
        if checked >= n {
            spec.bracket_closed = true;
            return Ok(spec);
        }
        for j in checked..n {
            for i in 0..j {
                let b = lie_bracket(&spec.generators[i], &spec.generators[j])?;
                if in_module(&spec.generators, &b, degree_cap)? {
                    continue;
                }
                if spec.generators.len() >= size_cap {
                    spec.bracket_closed = false;
                    return Ok(spec);
                }
                spec.names
                    .push(format!("[{},{}]", spec.names[i], spec.names[j]));
                spec.generators.push(b);
            }
        }
        checked = n;
    }
}

/// Index word I = (i₁, …, i_k); the associated operator is the composition
/// ∂_{i₁} ∘ … ∘ ∂_{i_k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Apply an iterated-derivative word to a polynomial (rightmost index acts
/// first).
pub fn apply_word(spec: &FoliationSpec, word: &[usize], f: &Polynomial) -> Result<Polynomial> {
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = spec.generators[i].apply(&g)?;
    }
    Ok(g)
}

/// Where contact is measured: a point (membership by evaluation) or a
/// subvariety given by an ideal with a cached basis (membership by normal
/// form).
#[derive(Debug, Clone)]
pub enum Site {
    Point(Vec<Scalar>),
    Variety(Ideal),
}

impl Site {
    fn member(&self, p: &Polynomial) -> Result<bool> {
        match self {
            Site::Point(coords) => Ok(p.evaluate(coords)?.is_zero()),
            Site::Variety(ideal) => Ok(ideal.normal_form(p)?.is_zero()),
        }
    }
}

/// Outcome of a contact-order computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContactOrderResult {
    /// ord = |witness|, with the first witness word in breadth-first order.
    Finite { witness: Word },
    /// Certified infinite: the listed polynomials span a derivation-stable
    /// space containing f whose members all vanish on the site.
    Infinite { certificate: Vec<Polynomial> },
    /// Search exhausted `word_cap` without a witness or a certificate.
    AtLeast { bound: usize },
}

impl ContactOrderResult {
    pub fn finite_order(&self) -> Option<usize> {
        match self {
            ContactOrderResult::Finite { witness } => Some(witness.len()),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ContactOrderResult::Infinite { .. })
    }
}

/// Linear span of polynomials with echelon reduction by leading monomial.
#[derive(Debug, Clone)]
pub(crate) struct PolySpan {
    rows: Vec<Polynomial>,
}

impl PolySpan {
    pub(crate) fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut p = p.clone();
        'outer: while !p.is_zero() {
            let lm = p.leading_term(MonomialOrder::Grevlex).unwrap().0.clone();
            for row in &self.rows {
                let (rm, _) = row.leading_term(MonomialOrder::Grevlex).unwrap();
                if *rm == lm {
                    let c = p.coeff(&lm);
                    p = p.try_sub(&row.scale(&c)).unwrap();
                    continue 'outer;
                }
            }
            return p;
        }
        p
    }

    /// Insert if linearly independent of the current rows; returns true when
    /// the dimension grew.
    pub(crate) fn insert(&mut self, p: &Polynomial) -> Result<bool> {
        let r = self.reduce(p);
        if r.is_zero() {
            return Ok(false);
        }
        let lc = r.leading_term(MonomialOrder::Grevlex).unwrap().1.clone();
        self.rows.push(r.scale(&lc.inv()?));
        Ok(true)
    }
}

/// Contact order of `f` with respect to the foliation at `site`.
///
/// Breadth-first over words of increasing length, generator index ascending
/// within a length. Branches whose iterated derivative is a linear
/// combination of earlier ones are pruned; this cannot change the first
/// witness because such values (and all their derivatives) stay inside the
/// span of earlier branches.
pub fn contact_order(
    f: &Polynomial,
    spec: &FoliationSpec,
    site: &Site,
    word_cap: usize,
    span_cap: usize,
) -> Result<ContactOrderResult> {
    ensure_same_context(spec.context(), f.context())?;
    if let Site::Point(coords) = site {
        if coords.len() != spec.context().nvars() {
            return Err(FoliaError::ArityMismatch {
                expected: spec.context().nvars(),
                got: coords.len(),
            });
        }
    }
    if f.is_zero() {
        return Ok(ContactOrderResult::Infinite {
            certificate: vec![],
        });
    }
    if !site.member(f)? {
        return Ok(ContactOrderResult::Finite {
            witness: Word(vec![]),
        });
    }
    let mut span = PolySpan::new();
    span.insert(f)?;
    let mut certificate = vec![f.clone()];
    // frontier: linearly independent values with their words, current level
    let mut frontier: Vec<(Vec<usize>, Polynomial)> = vec![(vec![], f.clone())];
    let mut level = 0usize;
    loop {
        level += 1;
        let within_cap = level <= word_cap;
        let mut next = Vec::new();
        for i in 0..spec.len() {
            for (word, value) in &frontier {
                let dv = spec.generators()[i].apply(value)?;
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(word);
                if within_cap && !site.member(&dv)? {
                    return Ok(ContactOrderResult::Finite { witness: Word(w) });
                }
                if span.insert(&dv)? {
                    if !within_cap && !site.member(&dv)? {
                        // A non-member beyond the cap rules out a certificate,
                        // and the first in-cap witness was already missed.
                        return Ok(ContactOrderResult::AtLeast {
                            bound: word_cap + 1,
                        });
                    }
                    certificate.push(dv.clone());
                    next.push((w, dv));
                }
            }
        }
        if next.is_empty() {
            // Derivation-stable span, every member on the site.
            if span.dim() <= span_cap {
                return Ok(ContactOrderResult::Infinite { certificate });
            }
            return Ok(ContactOrderResult::AtLeast {
                bound: word_cap + 1,
            });
        }
        if span.dim() > span_cap && !within_cap {
            return Ok(ContactOrderResult::AtLeast {
                bound: word_cap + 1,
            });
        }
        frontier = next;
    }
}

/// Bounded witness search: the first word of length ≤ `word_cap` (in the
/// breadth-first order) whose iterated derivative of `f` does not vanish on
/// the site, or `None` when the search is exhausted or the span stabilizes
/// early.
pub(crate) fn first_violation(
    f: &Polynomial,
    spec: &FoliationSpec,
    site: &Site,
    word_cap: usize,
) -> Result<Option<Word>> {
    if f.is_zero() {
        return Ok(None);
    }
    if !site.member(f)? {
        return Ok(Some(Word(vec![])));
    }
    let mut span = PolySpan::new();
    span.insert(f)?;
    let mut frontier: Vec<(Vec<usize>, Polynomial)> = vec![(vec![], f.clone())];
    for _level in 1..=word_cap {
        let mut next = Vec::new();
        for i in 0..spec.len() {
            for (word, value) in &frontier {
                let dv = spec.generators()[i].apply(value)?;
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(word);
                if !site.member(&dv)? {
                    return Ok(Some(Word(w)));
                }
                if span.insert(&dv)? {
                    next.push((w, dv));
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        frontier = next;
    }
    Ok(None)
}

/// Krylov closure of span{∂_I(f)} under all generators; `Some(basis)` when
/// it stabilizes with at most `dim_cap` elements.
pub fn stable_span(
    f: &Polynomial,
    spec: &FoliationSpec,
    dim_cap: usize,
) -> Result<Option<Vec<Polynomial>>> {
    ensure_same_context(spec.context(), f.context())?;
    if f.is_zero() {
        return Ok(Some(vec![]));
    }
    let mut span = PolySpan::new();
    span.insert(f)?;
    let mut basis = vec![f.clone()];
    let mut queue = vec![f.clone()];
    while let Some(p) = queue.pop() {
        for gen in spec.generators() {
            let dp = gen.apply(&p)?;
            if span.insert(&dp)? {
                if span.dim() > dim_cap {
                    return Ok(None);
                }
                basis.push(dp.clone());
                queue.push(dp);
            }
        }
    }
    Ok(Some(basis))
}
