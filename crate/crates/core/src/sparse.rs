//! Sparse rows and column-stored sparse operators used by the elimination
//! engine. Everything here is crate-private; public APIs speak `RatMatrix`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// Sorted `(index, nonzero value)` pairs.
pub(crate) type SparseVec = Vec<(usize, Rational)>;

pub(crate) fn from_dense(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub(crate) fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = crate::rational::zeros(len);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub(crate) fn get(v: &SparseVec, index: usize) -> Option<&Rational> {
    v.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &v[k].1)
}

/// `a - c·b`, merged in index order with cancellations dropped.
pub(crate) fn sub_scaled(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|e| e.0);
        let bj = b.get(j).map(|e| e.0);
        match (ai, bj) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn scale(v: &mut SparseVec, c: &Rational) {
    for (_, x) in v.iter_mut() {
        *x *= c;
    }
}

/// Accumulates `Σ cᵢ·vᵢ` over sparse vectors.
#[derive(Default)]
pub(crate) struct Accumulator {
    acc: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub(crate) fn add(&mut self, index: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.acc.entry(index).or_insert_with(Rational::zero);
        *slot += value;
    }

    pub(crate) fn add_scaled(&mut self, c: &Rational, v: &SparseVec) {
        for (i, x) in v {
            self.add(*i, c * x);
        }
    }

    pub(crate) fn finish(self) -> SparseVec {
        self.acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Operator stored by columns, so applying it to a sparse vector touches only
/// the columns the vector hits.
#[derive(Clone, Debug)]
pub(crate) struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub(crate) fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        Self { rows, columns }
    }

    pub(crate) fn rows(&self) -> usize {
        self.rows
    }

    pub(crate) fn cols(&self) -> usize {
        self.columns.len()
    }

    pub(crate) fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub(crate) fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::default();
        for (j, x) in v {
            acc.add_scaled(x, &self.columns[*j]);
        }
        acc.finish()
    }

    /// The rows of the operator as sparse vectors.
    pub(crate) fn row_major(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = alloc::vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                rows[*i].push((j, x.clone()));
            }
        }
        rows
    }

    pub(crate) fn to_dense(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }
}
