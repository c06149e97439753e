//! Incremental reduced row echelon form over sparse rows.
//!
//! Rows are kept fully reduced: every stored row has a leading 1 at its pivot
//! column and zeros in every other pivot column. The reduced basis of a row
//! space is unique, so the result is independent of insertion order.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;
use crate::sparse::{self, SparseVec};

pub(crate) struct Echelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` modulo the current row space. The result has zeros in all
    /// pivot columns.
    pub(crate) fn reduce(&self, v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> =
            v.iter().filter_map(|(i, x)| self.pivot_row[*i].map(|r| (r, x.clone()))).collect();
        hits.into_iter().fold(v, |acc, (r, c)| sparse::sub_scaled(&acc, &c, &self.rows[r]))
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(i, x)| *i < self.cols && !x.is_zero()));
        let mut v = self.reduce(v);
        let Some((pivot, lead)) = v.first().cloned() else {
            return false;
        };
        sparse::scale(&mut v, &lead.recip());
        for row in &mut self.rows {
            if let Some(c) = sparse::get(row, pivot).cloned() {
                *row = sparse::sub_scaled(row, &c, &v);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Reduced rows sorted by pivot column.
    pub(crate) fn into_sorted_rows(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        rows
    }

    pub(crate) fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Null space basis indexed by free columns: the vector for free column
    /// `f` has a 1 at `f` and `-row[f]` at each pivot. Not yet canonical.
    pub(crate) fn null_space(&self) -> Vec<SparseVec> {
        let mut by_free: Vec<SparseVec> = (0..self.cols)
            .map(|f| if self.pivot_row[f].is_none() { vec![(f, Rational::from_integer(1.into()))] } else { Vec::new() })
            .collect();
        for row in &self.rows {
            let pivot = row[0].0;
            for (f, x) in &row[1..] {
                by_free[*f].push((pivot, -x.clone()));
            }
        }
        by_free
            .into_iter()
            .filter(|v| !v.is_empty())
            .map(|mut v| {
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Canonical reduced basis of the span of `vectors`.
pub(crate) fn canonical_basis(cols: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(cols);
    for v in vectors {
        if !v.is_empty() {
            e.insert(v);
        }
        if e.is_full() {
            break;
        }
    }
    e.into_sorted_rows()
}
