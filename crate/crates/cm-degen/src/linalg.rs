//! Exact linear algebra: sparse rank computation over an arbitrary exact
//! field, and small dense kernel/rank routines over Q used by the artinian
//! oracle.  Never floating point.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Field;

/// A sparse row: sorted, duplicate-free (col, coeff) pairs with nonzero coeffs.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Collapses duplicates and drops zeros; returns a sorted row.
pub fn normalize_row<F: Field>(field: &F, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    row.sort_by_key(|&(c, _)| c);
    let mut out: SparseRow<F::Elem> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => {
                *lv = field.add(lv, &v);
            }
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

/// out = a + scale * b, both sorted rows.
fn axpy<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    b: &SparseRow<F::Elem>,
    scale: &F::Elem,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = field.add(va, &field.mul(scale, vb));
                if !field.is_zero(&v) {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let v = field.mul(scale, vb);
                if !field.is_zero(&v) {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = field.mul(scale, vb);
                if !field.is_zero(&v) {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental sparse Gaussian eliminator keeping one normalized pivot row
/// per leading column.  Rank is the number of pivots.
pub struct SparseEliminator<'a, F: Field> {
    field: &'a F,
    pivots: std::collections::BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<'a, F: Field> SparseEliminator<'a, F> {
    pub fn new(field: &'a F) -> Self {
        SparseEliminator { field, pivots: Default::default() }
    }

    /// Reduces `row` against the current pivots; if a nonzero remainder is
    /// left it becomes a new pivot.  Returns true when the rank grew.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let f = self.field;
        let mut row = normalize_row(f, row);
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    row = axpy(f, &row, p, &f.neg(&lv));
                }
                None => {
                    let inv = f.inv(&lv);
                    for e in row.iter_mut() {
                        e.1 = f.mul(&e.1, &inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of a sparse matrix given as rows.
pub fn sparse_rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut elim = SparseEliminator::new(field);
    for row in rows {
        elim.insert(row);
    }
    elim.rank()
}

/// Dense matrix over Q, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            for k in 0..self.cols {
                self.data.swap(r * self.cols + k, pr * self.cols + k);
            }
            let inv = self.at(r, c).recip();
            for k in 0..self.cols {
                let v = self.at(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for k in 0..self.cols {
                        let v = self.at(i, k) - &factor * self.at(r, k);
                        self.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per column of the result.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::field::QiField;
    use proptest::prelude::*;

    proptest! {
        // Sparse and dense ranks agree on random small integer matrices.
        #[test]
        fn sparse_rank_agrees_with_dense(
            entries in proptest::collection::vec(-4i64..5, 20)
        ) {
            let f = QiField;
            let rows: Vec<_> = (0..4)
                .map(|r| {
                    (0..5)
                        .filter_map(|c| {
                            let v = entries[r * 5 + c];
                            (v != 0).then(|| (c, f.from_int(v)))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut dense = QMatrix::zero(4, 5);
            for (r, row) in rows.iter().enumerate() {
                for (c, _) in row {
                    dense.set(r, *c, crate::field::rational(entries[r * 5 + c], 1));
                }
            }
            prop_assert_eq!(sparse_rank(&f, rows), dense.rank());
        }
    }
}
