//! Buchberger-based ideal computations: reduced Groebner bases, normal
//! forms, membership, Krull dimension of the zero set, and the counting
//! function h_I(n) over the degree filtration.

use crate::context::VariableContext;
use crate::error::{FoliaError, Result};
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, Polynomial};
use std::sync::Arc;

const DIMENSION_VAR_LIMIT: usize = 12;

/// Ideal given by generators, with an optional cached reduced Groebner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Polynomial>,
    basis: Option<(MonomialOrder, Vec<Polynomial>)>,
    ctx: Arc<VariableContext>,
}

/// Krull dimension of V(I) with a witness set of independent variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub dimension: i64,
    /// Indices of a maximal variable set independent modulo the leading-term
    /// ideal; empty for the unit ideal.
    pub witness: Vec<usize>,
}

impl Ideal {
    pub fn new(ctx: &Arc<VariableContext>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            crate::context::ensure_same_context(ctx, g.context())?;
        }
        Ok(Self {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: None,
            ctx: Arc::clone(ctx),
        })
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn cached_basis(&self) -> Option<(&MonomialOrder, &[Polynomial])> {
        self.basis.as_ref().map(|(o, b)| (o, b.as_slice()))
    }

    /// Compute (or reuse) the reduced Groebner basis for `order`; the result
    /// carries the basis in its cache.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Ideal> {
        if let Some((o, _)) = &self.basis {
            if *o == order {
                return Ok(self.clone());
            }
        }
        let basis = buchberger(&self.ctx, &self.gens, order)?;
        Ok(Ideal {
            gens: self.gens.clone(),
            basis: Some((order, basis)),
            ctx: Arc::clone(&self.ctx),
        })
    }

    /// Remainder of multivariate division by the cached basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        let Some((order, basis)) = &self.basis else {
            return Err(FoliaError::MissingBasis);
        };
        crate::context::ensure_same_context(&self.ctx, p.context())?;
        Ok(reduce(p, basis, *order))
    }

    /// True iff `p` lies in the ideal generated by the generators.
    pub fn membership(&self, p: &Polynomial) -> Result<bool> {
        crate::context::ensure_same_context(&self.ctx, p.context())?;
        let with_basis = self.groebner_basis(MonomialOrder::Grevlex)?;
        Ok(with_basis.normal_form(p)?.is_zero())
    }

    /// Krull dimension of V(I) via the staircase: the maximal cardinality of
    /// a variable set S such that no leading term of the reduced basis lies
    /// in k[S]. Exhaustive over subsets; limited to 12 variables.
    pub fn dimension(&self) -> Result<DimensionReport> {
        let n = self.ctx.nvars();
        if n > DIMENSION_VAR_LIMIT {
            return Err(FoliaError::UnsupportedSize {
                what: "variable count for dimension".into(),
                got: n,
                limit: DIMENSION_VAR_LIMIT,
            });
        }
        let with_basis = self.groebner_basis(MonomialOrder::Grevlex)?;
        let (_, basis) = with_basis.basis.as_ref().unwrap();
        let leading: Vec<Monomial> = basis
            .iter()
            .map(|g| {
                g.leading_term(MonomialOrder::Grevlex)
                    .map(|(m, _)| m.clone())
                    .expect("basis elements are non-zero")
            })
            .collect();
        if leading.iter().any(|m| m.is_constant()) {
            // Unit ideal: empty variety.
            return Ok(DimensionReport {
                dimension: -1,
                witness: vec![],
            });
        }
        // A leading term lies in k[S] iff all its variables belong to S.
        let lt_vars: Vec<u32> = leading
            .iter()
            .map(|m| {
                m.exps()
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc })
            })
            .collect();
        let mut best: u32 = 0;
        for subset in 0..(1u32 << n) {
            // S is independent iff no leading term uses only variables of S.
            if lt_vars.iter().any(|&vars| vars & !subset == 0) {
                continue;
            }
            if subset.count_ones() > best.count_ones() {
                best = subset;
            }
        }
        let witness: Vec<usize> = (0..n).filter(|i| best & (1 << i) != 0).collect();
        Ok(DimensionReport {
            dimension: witness.len() as i64,
            witness,
        })
    }

    /// h_I(n): the number of standard monomials of total degree at most `n`
    /// for the reduced grevlex basis, equal to dim F_n − dim(I ∩ F_n).
    pub fn hilbert_h(&self, n: u32) -> Result<u64> {
        let with_basis = self.groebner_basis(MonomialOrder::Grevlex)?;
        let (_, basis) = with_basis.basis.as_ref().unwrap();
        let leading: Vec<Monomial> = basis
            .iter()
            .map(|g| {
                g.leading_term(MonomialOrder::Grevlex)
                    .map(|(m, _)| m.clone())
                    .unwrap()
            })
            .collect();
        let mut count = 0u64;
        for m in monomials_up_to(self.ctx.nvars(), n) {
            if !leading.iter().any(|lt| lt.divides(&m)) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Full reduction of `p` by `basis` under `order` (remainder of division).
pub(crate) fn reduce(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let ctx = p.context();
    let mut rem = Polynomial::zero(ctx);
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        for g in basis {
            let (glm, glc) = g.leading_term(order).expect("non-zero basis element");
            if let Some(q) = lm.try_div(glm) {
                let factor = lc.div(glc).expect("non-zero leading coefficient");
                work = work.try_sub(&g.mul_term(&q, &factor)).unwrap();
                continue 'outer;
            }
        }
        // Leading term is irreducible; move it to the remainder.
        rem.add_term(lm.clone(), lc.clone());
        let mut single = Polynomial::zero(ctx);
        single.add_term(lm, lc);
        work = work.try_sub(&single).unwrap();
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (flm, flc) = f.leading_term(order).unwrap();
    let (glm, glc) = g.leading_term(order).unwrap();
    let lcm = flm.lcm(glm);
    let fm = lcm.try_div(flm).unwrap();
    let gm = lcm.try_div(glm).unwrap();
    let left = f.mul_term(&fm, &flc.inv().expect("non-zero"));
    let right = g.mul_term(&gm, &glc.inv().expect("non-zero"));
    left.try_sub(&right).unwrap()
}

/// Replace each generator by its remainder modulo the others until stable.
fn autoreduce(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let mut set: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < set.len() {
            let g = set.remove(i);
            let r = reduce(&g, &set, order);
            if r.is_zero() {
                changed = true;
                continue;
            }
            if r != g {
                changed = true;
            }
            set.insert(i, r);
            i += 1;
        }
        if !changed {
            return set;
        }
    }
}

/// Buchberger's algorithm with the coprimality and chain criteria and
/// normal-strategy pair selection; output is the reduced basis, sorted by
/// ascending leading monomial for determinism.
fn buchberger(
    ctx: &Arc<VariableContext>,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<Vec<Polynomial>> {
    let mut basis = autoreduce(gens, order);
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let lm = |p: &Polynomial| -> Monomial { p.leading_term(order).unwrap().0.clone() };

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal strategy: smallest lcm of the leading monomials first.
        let mut pick = 0;
        let mut pick_lcm = lm(&basis[pairs[0].0]).lcm(&lm(&basis[pairs[0].1]));
        for (idx, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = lm(&basis[i]).lcm(&lm(&basis[j]));
            if order.cmp(&l, &pick_lcm) == std::cmp::Ordering::Less {
                pick = idx;
                pick_lcm = l;
            }
        }
        let (i, j) = pairs.remove(pick);
        let lcm_ij = lm(&basis[i]).lcm(&lm(&basis[j]));
        // First criterion: coprime leading monomials.
        if lcm_ij == lm(&basis[i]).mul(&lm(&basis[j])) {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm(i, j) and both mixed
        // pairs already treated.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm_ij)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by the
    // leading monomial of another kept element.
    let lms: Vec<Monomial> = basis.iter().map(|g| lm(g)).collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Tail-reduce each survivor against the others and scale monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = reduce(&minimal[i], &others, order);
        debug_assert!(!r.is_zero());
        let lc = r.leading_term(order).unwrap().1.clone();
        reduced.push(r.scale(&lc.inv()?));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    let _ = ctx;
    Ok(reduced)
}
