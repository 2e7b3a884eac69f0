//! Exact Gaussian elimination over a [`FieldCtx`], shared by the quotient
//! dimension computations, jet-image ranks and the contact-unit solver.

use crate::coeff::{FieldCtx, FieldElem};

/// Incremental row-echelon basis over an exact field.  Rows are dense
/// coordinate vectors; pivots are normalized to 1.
pub struct Echelon {
    field: FieldCtx,
    ncols: usize,
    /// (pivot column, reduced row) sorted by pivot column.
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl Echelon {
    pub fn new(field: FieldCtx, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the basis in place; returns the pivot column of
    /// the remainder, or `None` if it reduces to zero.
    fn reduce(&self, row: &mut [FieldElem]) -> Option<usize> {
        let f = &self.field;
        for (piv, basis_row) in &self.rows {
            if !f.is_zero(&row[*piv]) {
                let c = row[*piv].clone();
                for j in *piv..self.ncols {
                    let t = f.mul(&c, &basis_row[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
        }
        (0..self.ncols).find(|&j| !f.is_zero(&row[j]))
    }

    /// Insert a row; returns true when it enlarged the span.
    pub fn insert(&mut self, mut row: Vec<FieldElem>) -> bool {
        assert_eq!(row.len(), self.ncols);
        let f = self.field.clone();
        match self.reduce(&mut row) {
            None => false,
            Some(piv) => {
                let inv = f.inv(&row[piv]).expect("pivot nonzero");
                for v in row.iter_mut() {
                    *v = f.mul(v, &inv);
                }
                // back-substitute into existing rows to keep reduction cheap
                for (_, existing) in self.rows.iter_mut() {
                    if !f.is_zero(&existing[piv]) {
                        let c = existing[piv].clone();
                        for j in 0..self.ncols {
                            let t = f.mul(&c, &row[j]);
                            existing[j] = f.sub(&existing[j], &t);
                        }
                    }
                }
                let pos = self.rows.partition_point(|(p, _)| *p < piv);
                self.rows.insert(pos, (piv, row));
                true
            }
        }
    }

    /// Does the row lie in the current span?
    pub fn contains(&self, row: &[FieldElem]) -> bool {
        let mut row = row.to_vec();
        self.reduce(&mut row).is_none()
    }
}

/// Solve A x = b over the field, with A given in row-major dense form.
/// Returns one particular solution and a basis of the kernel, or `None`
/// when the system is inconsistent.
pub fn solve_dense(
    field: &FieldCtx,
    a: &[Vec<FieldElem>],
    b: &[FieldElem],
) -> Option<(Vec<FieldElem>, Vec<Vec<FieldElem>>)> {
    let nrows = a.len();
    assert_eq!(b.len(), nrows);
    let ncols = a.first().map_or(0, |r| r.len());
    // augmented elimination
    let mut m: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let f = field;
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(sel) = (rank..nrows).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, sel);
        let inv = f.inv(&m[rank][col]).unwrap();
        for j in col..=ncols {
            m[rank][j] = f.mul(&m[rank][j], &inv);
        }
        for r in 0..nrows {
            if r != rank && !f.is_zero(&m[r][col]) {
                let c = m[r][col].clone();
                for j in col..=ncols {
                    let t = f.mul(&c, &m[rank][j]);
                    m[r][j] = f.sub(&m[r][j], &t);
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    // consistency
    for r in rank..nrows {
        if !f.is_zero(&m[r][ncols]) {
            return None;
        }
    }
    let mut particular = vec![f.zero(); ncols];
    for &(r, c) in &pivots {
        particular[c] = m[r][ncols].clone();
    }
    // kernel basis: one vector per free column
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = vec![];
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for &(r, c) in &pivots {
            v[c] = f.neg(&m[r][free]);
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}
