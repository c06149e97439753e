//! Row reduction and null spaces over ℚ.

use alloc::vec::Vec;

use crate::echelon::{self, Echelon};
use crate::matrix::RatMatrix;
use crate::sparse;
use crate::subspace::Subspace;

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows sit at the bottom.
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// The unique reduced row echelon form of `m`.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut e = Echelon::new(m.cols());
    for row in m.row_vectors() {
        let v = sparse::from_dense(row);
        if !v.is_empty() {
            e.insert(v);
        }
    }
    let pivots = e.pivots();
    let rank = e.rank();
    let mut matrix = RatMatrix::zeros(m.rows(), m.cols());
    for (i, row) in e.into_sorted_rows().iter().enumerate() {
        for (j, x) in row {
            matrix[(i, *j)] = x.clone();
        }
    }
    Rref { matrix, pivots, rank }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank
}

/// `{ v : m·v = 0 }` as a canonical subspace of ℚ^cols.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for row in m.row_vectors() {
        let v = sparse::from_dense(row);
        if !v.is_empty() {
            e.insert(v);
        }
        if e.is_full() {
            break;
        }
    }
    Subspace::from_sparse_rows(m.cols(), echelon::canonical_basis(m.cols(), e.null_space()))
}
