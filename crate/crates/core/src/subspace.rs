//! Linear subspaces of ℚ^d in canonical form.
//!
//! A [`Subspace`] stores the reduced row echelon basis of its span, so two
//! subspaces are equal as sets exactly when their stored bases are equal.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::echelon::{self, Echelon};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::sparse::{self, Accumulator, SparseMatrix, SparseVec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: RatMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: RatMatrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the given vectors, canonicalized.
    pub fn span<V: AsRef<[Rational]>>(ambient_dim: usize, vectors: &[V]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            check_len(ambient_dim, v.len())?;
            rows.push(sparse::from_dense(v));
        }
        Ok(Self::from_sparse_rows(ambient_dim, echelon::canonical_basis(ambient_dim, rows)))
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &RatMatrix) -> Self {
        let rows = m.row_vectors().map(sparse::from_dense);
        Self::from_sparse_rows(m.cols(), echelon::canonical_basis(m.cols(), rows))
    }

    /// `rows` must already be reduced and sorted by pivot.
    pub(crate) fn from_sparse_rows(ambient_dim: usize, rows: Vec<SparseVec>) -> Self {
        let pivots = rows.iter().map(|r| r[0].0).collect();
        let mut basis = RatMatrix::zeros(rows.len(), ambient_dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row {
                basis[(i, *j)] = x.clone();
            }
        }
        Self { ambient_dim, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn sparse_basis(&self) -> Vec<SparseVec> {
        self.basis_vectors().map(sparse::from_dense).collect()
    }

    /// Canonical representative of `v + self`: the unique element of the
    /// coset with zeros in every pivot coordinate.
    pub fn coset_reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.ambient_dim, v.len())?;
        let mut out = v.to_vec();
        for (row, &p) in self.basis_vectors().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o -= &c * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coset_reduce(v)?.iter().all(Zero::is_zero))
    }

    /// `self ∩ other`, computed as the part of `self` that `other`'s coset
    /// reduction annihilates.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        let projector = other.complement_projector();
        Ok(self.restrict_kernel(&[&projector]))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        check_len(other.ambient_dim, self.ambient_dim)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The linear map `v ↦ coset_reduce(v)` as an operator.
    pub(crate) fn complement_projector(&self) -> SparseMatrix {
        let d = self.ambient_dim;
        let mut is_pivot = alloc::vec![None; d];
        for (r, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let columns = (0..d)
            .map(|j| match is_pivot[j] {
                // e_p ↦ e_p − row_p; the pivot entry cancels.
                Some(r) => {
                    let mut col: SparseVec = self
                        .basis
                        .row(r)
                        .iter()
                        .enumerate()
                        .filter(|(k, x)| *k != j && !x.is_zero())
                        .map(|(k, x)| (k, -x.clone()))
                        .collect();
                    col.retain(|(k, _)| is_pivot[*k].is_none());
                    col
                }
                None => alloc::vec![(j, Rational::from_integer(1.into()))],
            })
            .collect();
        SparseMatrix::from_columns(d, columns)
    }

    /// Simultaneous kernel of operators on ℚ^ambient_dim.
    pub(crate) fn kernel_of_operators(ambient_dim: usize, ops: &[&SparseMatrix]) -> Self {
        let mut e = Echelon::new(ambient_dim);
        'ops: for op in ops {
            debug_assert_eq!(op.cols(), ambient_dim);
            for row in op.row_major() {
                if !row.is_empty() && e.insert(row) && e.is_full() {
                    break 'ops;
                }
            }
        }
        Self::from_sparse_rows(ambient_dim, echelon::canonical_basis(ambient_dim, e.null_space()))
    }

    /// `{ v ∈ self : op(v) = 0 for every op }`. Works in the coordinates of the
    /// current basis, so the elimination size is `dim(self)`, not the ambient
    /// dimension.
    pub(crate) fn restrict_kernel(&self, ops: &[&SparseMatrix]) -> Self {
        debug_assert!(ops.iter().all(|op| op.cols() == self.ambient_dim));
        let maps: Vec<_> = ops.iter().map(|op| move |b: &SparseVec| op.apply(b)).collect();
        self.restrict_kernel_by(&maps)
    }

    /// [`Self::restrict_kernel`] for maps given as functions on sparse vectors.
    pub(crate) fn restrict_kernel_by<F: Fn(&SparseVec) -> SparseVec>(&self, maps: &[F]) -> Self {
        let basis = self.sparse_basis();
        let k = basis.len();
        if k == 0 {
            return self.clone();
        }
        let mut e = Echelon::new(k);
        'ops: for map in maps {
            // Row m of the image matrix holds coordinate m of every map(bᵢ).
            let mut image_rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (i, b) in basis.iter().enumerate() {
                for (m, x) in map(b) {
                    image_rows.entry(m).or_default().push((i, x));
                }
            }
            for row in image_rows.into_values() {
                if !row.is_empty() && e.insert(row) && e.is_full() {
                    break 'ops;
                }
            }
        }
        if e.rank() == 0 {
            return self.clone();
        }
        let combos = e.null_space().into_iter().map(|coeffs| {
            let mut acc = Accumulator::default();
            for (i, c) in &coeffs {
                acc.add_scaled(c, &basis[*i]);
            }
            acc.finish()
        });
        Self::from_sparse_rows(self.ambient_dim, echelon::canonical_basis(self.ambient_dim, combos))
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl core::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient_dim", &self.ambient_dim)
            .field("dim", &self.dim())
            .field("basis", &self.basis)
            .finish()
    }
}
