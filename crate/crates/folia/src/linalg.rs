//! Dense exact linear algebra over the scalar field.
//!
//! Deterministic throughout: pivots are chosen as the first non-zero entry
//! in column order, never by magnitude.

use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: Vec<Vec<Scalar>>,
    pub ncols: usize,
}

impl Matrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            let Some(p) = (row..self.nrows()).find(|&r| !self.rows[r][col].is_zero()) else {
                continue;
            };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].inv()?;
            for c in col..self.ncols {
                self.rows[row][c] = self.rows[row][c].mul(&inv);
            }
            for r in 0..self.nrows() {
                if r != row && !self.rows[r][col].is_zero() {
                    let factor = self.rows[r][col].clone();
                    for c in col..self.ncols {
                        let sub = self.rows[row][c].mul(&factor);
                        self.rows[r][c] = self.rows[r][c].sub(&sub);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.nrows() {
                break;
            }
        }
        Ok(pivots)
    }

    #[allow(dead_code)]
    pub fn rank(&self) -> Result<usize> {
        let mut m = self.clone();
        Ok(m.rref()?.len())
    }

    /// Canonical nullspace basis: the matrix of kernel vectors in reduced
    /// row echelon form over the columns.
    ///
    /// Proportional columns are merged before elimination; the functional
    /// matrices this serves have many pairwise-proportional columns, and
    /// eliminating the merged system keeps rational-function entries small.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        // Group columns: zero columns, then proportionality classes with the
        // leftmost column as representative.
        let col = |c: usize| -> Vec<&Scalar> { self.rows.iter().map(|r| &r[c]).collect() };
        let mut class_of: Vec<Option<usize>> = vec![None; self.ncols];
        let mut reps: Vec<usize> = Vec::new();
        let mut zero_cols: Vec<usize> = Vec::new();
        for c in 0..self.ncols {
            let v = col(c);
            if v.iter().all(|e| e.is_zero()) {
                zero_cols.push(c);
                continue;
            }
            let lead = v.iter().position(|e| !e.is_zero()).unwrap();
            let mut found = None;
            'reps: for (ci, &r) in reps.iter().enumerate() {
                let w = col(r);
                let wlead = w.iter().position(|e| !e.is_zero()).unwrap();
                if wlead != lead {
                    continue;
                }
                // proportional iff v_i * w_lead == w_i * v_lead for all i
                for i in 0..v.len() {
                    if v[i].mul(w[lead]) != w[i].mul(v[lead]) {
                        continue 'reps;
                    }
                }
                found = Some(ci);
                break;
            }
            match found {
                Some(ci) => class_of[c] = Some(ci),
                None => {
                    class_of[c] = Some(reps.len());
                    reps.push(c);
                }
            }
        }

        // Row echelon over the representatives, then back-substitution per
        // free column. This avoids the fill-in of a full reduction when the
        // merged system has no free columns at all.
        let mut ech = Echelon::new(reps.len());
        for r in &self.rows {
            ech.insert(reps.iter().map(|&c| r[c].clone()).collect())?;
        }
        let mut ech_rows: Vec<&(usize, Vec<Scalar>)> = ech.rows.iter().collect();
        ech_rows.sort_by_key(|(p, _)| std::cmp::Reverse(*p));
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; reps.len()];
            for (p, _) in &ech.rows {
                v[*p] = true;
            }
            v
        };
        let mut small_kernel: Vec<Vec<Scalar>> = Vec::new();
        for free in 0..reps.len() {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![Scalar::zero(); reps.len()];
            x[free] = Scalar::one();
            for (p, row) in &ech_rows {
                let mut acc = Scalar::zero();
                for c in (p + 1)..reps.len() {
                    if !row[c].is_zero() && !x[c].is_zero() {
                        acc = acc.add(&row[c].mul(&x[c]));
                    }
                }
                x[*p] = acc.neg();
            }
            small_kernel.push(x);
        }

        // Reconstruct kernel vectors of the full matrix. With μ_c the factor
        // of column c against its representative, constraints read
        // Σ_class rep · (Σ_{c in class} μ_c x_c) = 0.
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for &c in &zero_cols {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[c] = Scalar::one();
            basis.push(v);
        }
        let factor = |c: usize| -> Result<Scalar> {
            let r = reps[class_of[c].unwrap()];
            let v = col(c);
            let w = col(r);
            let lead = w.iter().position(|e| !e.is_zero()).unwrap();
            v[lead].div(w[lead])
        };
        for c in 0..self.ncols {
            let Some(class) = class_of[c] else { continue };
            let r = reps[class];
            if r == c {
                continue;
            }
            // x_c = 1, x_rep = -μ_c keeps the class sum at zero.
            let mut v = vec![Scalar::zero(); self.ncols];
            v[c] = Scalar::one();
            v[r] = factor(c)?.neg();
            basis.push(v);
        }
        for y in &small_kernel {
            let mut v = vec![Scalar::zero(); self.ncols];
            for (ci, &r) in reps.iter().enumerate() {
                v[r] = y[ci].clone();
            }
            basis.push(v);
        }

        if basis.is_empty() {
            return Ok(basis);
        }
        let mut km = Matrix::from_rows(basis, self.ncols);
        km.rref()?;
        Ok(km.rows)
    }

    /// Solve `A x = b`; returns a solution when the system is consistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        debug_assert_eq!(rhs.len(), self.nrows());
        // Augment and eliminate.
        let mut aug = Matrix::new(self.ncols + 1);
        for (r, row) in self.rows.iter().enumerate() {
            let mut v = row.clone();
            v.push(rhs[r].clone());
            aug.rows.push(v);
        }
        let pivots = aug.rref()?;
        if pivots.contains(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.rows[r][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

/// Incremental row-echelon accumulator for rank tracking.
///
/// Rows are reduced with pseudo-elimination scaled to keep entries in the
/// polynomial part of the field where possible; pivot normalization happens
/// only on insert.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    /// Rows with strictly increasing pivot columns are not required; each row
    /// has a distinct pivot column with a unit entry.
    pub(crate) rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    #[allow(dead_code)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the accumulated rows; if a non-zero residue
    /// remains, insert it and return true.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> Result<bool> {
        debug_assert_eq!(row.len(), self.ncols);
        for (pivot_col, pivot_row) in &self.rows {
            let factor = row[*pivot_col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..self.ncols {
                let sub = pivot_row[c].mul(&factor);
                row[c] = row[c].sub(&sub);
            }
        }
        let Some(pc) = (0..self.ncols).find(|&c| !row[c].is_zero()) else {
            return Ok(false);
        };
        let inv = row[pc].inv()?;
        for c in 0..self.ncols {
            row[c] = row[c].mul(&inv);
        }
        self.rows.push((pc, row));
        Ok(true)
    }

    /// True when the row lies in the current span (without inserting).
    #[allow(dead_code)]
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut row = row.to_vec();
        for (pivot_col, pivot_row) in &self.rows {
            let factor = row[*pivot_col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..self.ncols {
                let sub = pivot_row[c].mul(&factor);
                row[c] = row[c].sub(&sub);
            }
        }
        row.iter().all(|e| e.is_zero())
    }
}
