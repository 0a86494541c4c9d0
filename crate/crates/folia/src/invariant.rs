//! Degree-truncated computation of the maximal invariant ideal at a point,
//! dimension estimates for the minimal invariant variety, and point
//! profiles.
//!
//! The functional matrix collects linear functionals f ↦ ∂_I(f)(x) on the
//! monomial basis of F_n, grown by applying generators to tracked iterated
//! derivatives and keeping rows that raise the rank. Because a rank plateau
//! does not always persist, every kernel element is then re-checked by a
//! word search up to the module's word cap; a violating word contributes its
//! row and the kernel is recomputed, so the reported kernel is always
//! consistent with word-checking up to that cap.

use crate::context::{ensure_same_context, VariableContext};
use crate::error::{FoliaError, Result};
use crate::foliation::{
    apply_word, first_violation, FoliationSpec, Site, Word, DEFAULT_WORD_CAP,
};
use crate::groebner::Ideal;
use crate::linalg::{Echelon, Matrix};
use crate::poly::{monomials_up_to, Monomial, Polynomial};
use crate::scalar::Scalar;
use std::sync::Arc;

/// Closed (rational) or generic (parameter-coordinate) evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Closed,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    ctx: Arc<VariableContext>,
    coords: Vec<Scalar>,
    kind: PointKind,
}

impl EvalPoint {
    /// Classify by content: any parameter-bearing coordinate makes the point
    /// generic.
    pub fn new(ctx: &Arc<VariableContext>, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != ctx.nvars() {
            return Err(FoliaError::ArityMismatch {
                expected: ctx.nvars(),
                got: coords.len(),
            });
        }
        let kind = if coords.iter().all(|c| c.is_rational()) {
            PointKind::Closed
        } else {
            PointKind::Generic
        };
        Ok(Self {
            ctx: Arc::clone(ctx),
            coords,
            kind,
        })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.render(self.ctx.params()))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Functional matrix Δ(x) on the monomial basis of F_n.
#[derive(Debug, Clone)]
pub struct FunctionalMatrix {
    pub truncation_degree: u32,
    /// Basis of F_n in descending grevlex order (columns).
    pub basis: Vec<Monomial>,
    /// Rank-increasing rows with the words that produced them.
    pub rows: Vec<(Word, Vec<Scalar>)>,
    pub rank: usize,
}

/// Result of the truncated invariant-ideal pipeline at one degree.
#[derive(Debug, Clone)]
pub struct InvariantEstimate {
    pub truncation_degree: u32,
    /// Kernel basis of the functional matrix at the final degree, in reduced
    /// row echelon form over the graded monomial basis (pivots scaled to 1).
    pub kernel: Vec<Polynomial>,
    /// Ideal generated by the kernel, with a cached grevlex basis.
    pub ideal: Ideal,
    /// Dimension estimates for n = 1..=truncation_degree.
    pub dims_by_degree: Vec<i64>,
    pub dimension: i64,
    pub stabilized: bool,
}

fn eval_row(values: &[Polynomial], coords: &[Scalar]) -> Result<Vec<Scalar>> {
    values.iter().map(|p| p.evaluate(coords)).collect()
}

/// Build the functional-matrix closure and the verified kernel together.
fn closure_with_repair(
    x: &EvalPoint,
    spec: &FoliationSpec,
    n: u32,
) -> Result<(FunctionalMatrix, Vec<Polynomial>)> {
    ensure_same_context(spec.context(), x.context())?;
    let ctx = spec.context();
    let nvars = ctx.nvars();
    // Columns in descending grevlex order, so kernel pivots land on leading
    // monomials.
    let basis: Vec<Monomial> = monomials_up_to(nvars, n).into_iter().rev().collect();
    let ncols = basis.len();
    let basis_polys: Vec<Polynomial> = basis
        .iter()
        .map(|m| Polynomial::from_terms(ctx, [(m.clone(), Scalar::one())]))
        .collect();

    let mut echelon = Echelon::new(ncols);
    let mut rows: Vec<(Word, Vec<Scalar>)> = Vec::new();

    // Level 0: evaluation at x.
    let row0 = eval_row(&basis_polys, x.coords())?;
    let grew = echelon.insert(row0.clone())?;
    debug_assert!(grew, "the constant monomial never vanishes at a point");
    rows.push((Word(vec![]), row0));

    // Breadth-first closure; keep branches while their rows raise the rank.
    let mut frontier: Vec<(Vec<usize>, Vec<Polynomial>)> = vec![(vec![], basis_polys.clone())];
    let mut depth = 0usize;
    while !frontier.is_empty() && depth < ncols {
        depth += 1;
        let mut next = Vec::new();
        for i in 0..spec.len() {
            for (word, values) in &frontier {
                let dvalues: Vec<Polynomial> = values
                    .iter()
                    .map(|p| spec.generators()[i].apply(p))
                    .collect::<Result<_>>()?;
                let row = eval_row(&dvalues, x.coords())?;
                if echelon.insert(row.clone())? {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(i);
                    w.extend_from_slice(word);
                    rows.push((Word(w.clone()), row));
                    next.push((w, dvalues));
                }
            }
        }
        frontier = next;
    }

    // Kernel, then verify each element by word search; a finite contact
    // order contributes the violating row and forces a recomputation.
    loop {
        let matrix = Matrix::from_rows(rows.iter().map(|(_, r)| r.clone()).collect(), ncols);
        let kernel_vecs = matrix.nullspace()?;
        let kernel: Vec<Polynomial> = kernel_vecs
            .iter()
            .map(|v| {
                Polynomial::from_terms(
                    ctx,
                    basis
                        .iter()
                        .cloned()
                        .zip(v.iter().cloned())
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect();
        let site = Site::Point(x.coords().to_vec());
        let mut violation: Option<Word> = None;
        for k in &kernel {
            if let Some(witness) = first_violation(k, spec, &site, DEFAULT_WORD_CAP)? {
                violation = Some(witness);
                break;
            }
        }
        let Some(word) = violation else {
            let fm = FunctionalMatrix {
                truncation_degree: n,
                basis,
                rank: rows.len(),
                rows,
            };
            return Ok((fm, kernel));
        };
        let values: Vec<Polynomial> = basis_polys
            .iter()
            .map(|p| apply_word(spec, &word.0, p))
            .collect::<Result<_>>()?;
        let row = eval_row(&values, x.coords())?;
        let grew = echelon.insert(row.clone())?;
        debug_assert!(grew, "violating rows are independent of the kept rows");
        rows.push((word, row));
    }
}

/// Rank of the functional matrix Δ(x) for the degree-n truncation.
pub fn functional_matrix(
    x: &EvalPoint,
    spec: &FoliationSpec,
    n: u32,
) -> Result<FunctionalMatrix> {
    Ok(closure_with_repair(x, spec, n)?.0)
}

/// Kernel basis of the functional matrix: the polynomials of degree ≤ n all
/// of whose tracked iterated derivatives vanish at x. Canonical reduced row
/// echelon form over the graded monomial basis.
pub fn truncated_invariant_ideal(
    x: &EvalPoint,
    spec: &FoliationSpec,
    n: u32,
) -> Result<Vec<Polynomial>> {
    Ok(closure_with_repair(x, spec, n)?.1)
}

/// Run the truncation at n = 1..=n_max and report the dimension estimates.
pub fn invariant_variety_estimate(
    x: &EvalPoint,
    spec: &FoliationSpec,
    n_max: u32,
) -> Result<InvariantEstimate> {
    if n_max < 1 {
        return Err(FoliaError::InvalidOption {
            message: "n_max must be at least 1".into(),
        });
    }
    let ctx = spec.context();
    let mut dims = Vec::new();
    let mut last_kernel = Vec::new();
    let mut last_ideal = Ideal::new(ctx, vec![])?;
    for n in 1..=n_max {
        let kernel = truncated_invariant_ideal(x, spec, n)?;
        let ideal = Ideal::new(ctx, kernel.clone())?.groebner_basis(Default::default())?;
        let report = ideal.dimension()?;
        dims.push(report.dimension);
        last_kernel = kernel;
        last_ideal = ideal;
    }
    let dimension = *dims.last().unwrap();
    let stabilized = dims.len() >= 2 && dims[dims.len() - 2] == dimension;
    Ok(InvariantEstimate {
        truncation_degree: n_max,
        kernel: last_kernel,
        ideal: last_ideal,
        dims_by_degree: dims,
        dimension,
        stabilized,
    })
}

/// One row of a point profile; errors are recorded per row.
#[derive(Debug, Clone)]
pub struct ProfileEntry {
    pub point: EvalPoint,
    pub estimate: Option<InvariantEstimate>,
    pub error: Option<String>,
}

/// Per-point invariant estimates in input order.
pub fn nf_profile(points: &[EvalPoint], spec: &FoliationSpec, n_max: u32) -> Vec<ProfileEntry> {
    points
        .iter()
        .map(|p| match invariant_variety_estimate(p, spec, n_max) {
            Ok(estimate) => ProfileEntry {
                point: p.clone(),
                estimate: Some(estimate),
                error: None,
            },
            Err(e) => ProfileEntry {
                point: p.clone(),
                estimate: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}
