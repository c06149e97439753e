//! Finite-dimensional tensor spaces over ℝⁿ with the standard inner product.
//!
//! Coordinates are flat vectors in row-major order, last index fastest:
//!
//! | valence | multi-index | meaning |
//! |---------|-------------|---------|
//! | (2,1) | `[a, b, k]` | component `k` of `T(e_a, e_b)` |
//! | (3,1) | `[a, b, c, k]` | component `k` of `R(e_a, e_b) e_c` |
//! | (4,0) | `[a, b, c, d]` | `R(e_a, e_b, e_c, e_d)` |
//! | inner-torsion map | `[i, r, c]` | entry `(r, c)` of `λ(e_i)` |
//!
//! Lowering pairs the output slot of a (3,1) tensor with a fourth argument,
//! `R(u,v,w,z) = ⟨R(u,v)w, z⟩`; in the standard basis this leaves the
//! coordinates unchanged.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::sparse::{self, SparseMatrix, SparseVec};
use crate::subspace::Subspace;

pub const INDEX_CONVENTION: &str = "row-major, last-fastest";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valence {
    /// Vector-valued bilinear maps, e.g. torsion.
    TwoOne,
    /// Vector-valued trilinear maps, e.g. curvature `R(u,v)w`.
    ThreeOne,
    /// Scalar quadrilinear maps.
    FourZero,
    /// Linear maps ℝⁿ → 𝔤𝔩(ℝⁿ), lifts of inner torsion.
    InnerTorsionMap,
}

impl Valence {
    /// Number of tensor indices.
    pub fn order(self) -> usize {
        match self {
            Valence::TwoOne | Valence::InnerTorsionMap => 3,
            Valence::ThreeOne | Valence::FourZero => 4,
        }
    }

    /// Number of vector arguments taken by [`evaluate`].
    pub fn arity(self) -> usize {
        match self {
            Valence::TwoOne => 2,
            Valence::ThreeOne => 3,
            Valence::FourZero => 4,
            Valence::InnerTorsionMap => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Valence::TwoOne => "(2,1)",
            Valence::ThreeOne => "(3,1)",
            Valence::FourZero => "(4,0)",
            Valence::InnerTorsionMap => "inner-torsion-map",
        }
    }

    pub fn parse(label: &str) -> Option<Self> {
        [Valence::TwoOne, Valence::ThreeOne, Valence::FourZero, Valence::InnerTorsionMap]
            .into_iter()
            .find(|v| v.label() == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// `t(u, v, …) = −t(v, u, …)`.
    SkewArgs12,
    /// Antisymmetry in slots 3 and 4. On (3,1) tensors slot 4 is the output
    /// slot, so this says every `R(u,v)` is skew-adjoint.
    SkewArgs34,
    /// (3,1): `R(u,v)w + R(v,w)u + R(w,u)v = 0`.
    /// (4,0): `R(u₁,u₂,u₃,u₄) + R(u₁,u₃,u₄,u₂) + R(u₁,u₄,u₂,u₃) = 0`.
    FirstBianchi,
}

impl Constraint {
    pub fn label(self) -> &'static str {
        match self {
            Constraint::SkewArgs12 => "skew-in-args-1-2",
            Constraint::SkewArgs34 => "skew-in-args-3-4",
            Constraint::FirstBianchi => "first-Bianchi",
        }
    }

    pub fn parse(label: &str) -> Option<Self> {
        [Constraint::SkewArgs12, Constraint::SkewArgs34, Constraint::FirstBianchi]
            .into_iter()
            .find(|c| c.label() == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpec {
    n: usize,
    valence: Valence,
    constraints: Vec<Constraint>,
}

impl TensorSpec {
    pub fn new(n: usize, valence: Valence, constraints: &[Constraint]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".to_string()));
        }
        let mut constraints = constraints.to_vec();
        constraints.sort();
        constraints.dedup();
        for c in &constraints {
            let ok = match (c, valence) {
                (_, Valence::InnerTorsionMap) => false,
                (Constraint::SkewArgs12, _) => true,
                (_, Valence::TwoOne) => false,
                _ => true,
            };
            if !ok {
                return Err(Error::InvalidSpec(alloc::format!("{} is not allowed on {}", c.label(), valence.label())));
            }
        }
        Ok(Self { n, valence, constraints })
    }

    /// Torsion-type tensors: (2,1), skew in the arguments.
    pub fn torsion(n: usize) -> Self {
        Self::new(n, Valence::TwoOne, &[Constraint::SkewArgs12]).expect("valid spec")
    }

    /// (3,1), skew in the first two arguments, first Bianchi identity.
    pub fn curvature(n: usize) -> Self {
        Self::new(n, Valence::ThreeOne, &[Constraint::SkewArgs12, Constraint::FirstBianchi]).expect("valid spec")
    }

    /// [`TensorSpec::curvature`] plus skew-adjoint values.
    pub fn metric_curvature(n: usize) -> Self {
        Self::new(n, Valence::ThreeOne, &[Constraint::SkewArgs12, Constraint::SkewArgs34, Constraint::FirstBianchi])
            .expect("valid spec")
    }

    /// Algebraic curvature tensors in quadrilinear form.
    pub fn algebraic_curvature(n: usize) -> Self {
        Self::new(n, Valence::FourZero, &[Constraint::SkewArgs12, Constraint::SkewArgs34, Constraint::FirstBianchi])
            .expect("valid spec")
    }

    pub fn inner_torsion_map(n: usize) -> Self {
        Self::new(n, Valence::InnerTorsionMap, &[]).expect("valid spec")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn has(&self, c: Constraint) -> bool {
        self.constraints.contains(&c)
    }

    /// Dimension of the unconstrained tensor space.
    pub fn full_dim(&self) -> usize {
        self.n.pow(self.valence.order() as u32)
    }

    pub fn with_constraints(&self, constraints: &[Constraint]) -> Result<Self> {
        Self::new(self.n, self.valence, constraints)
    }
}

/// Row-major flat index of `multi_index`, last index fastest.
pub fn flat_index(multi_index: &[usize], n: usize) -> Result<usize> {
    multi_index.iter().try_fold(0usize, |acc, &i| {
        if i < n {
            Ok(acc * n + i)
        } else {
            Err(Error::IndexOutOfRange { index: i, dim: n })
        }
    })
}

/// Inverse of [`flat_index`] for a multi-index of length `order`.
pub fn decode_index(mut flat: usize, n: usize, order: usize) -> Result<Vec<usize>> {
    let total = n.pow(order as u32);
    if flat >= total {
        return Err(Error::IndexOutOfRange { index: flat, dim: total });
    }
    let mut out = alloc::vec![0; order];
    for slot in out.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
    Ok(out)
}

fn encode(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

fn decode(flat: usize, n: usize, order: usize) -> Vec<usize> {
    decode_index(flat, n, order).expect("flat index in range")
}

/// Operator `t ↦ Σ sign·(t ∘ perm)` where `perm` permutes the index slots:
/// `(t ∘ perm)[x] = t[x_perm(0), x_perm(1), …]`.
fn permutation_sum(n: usize, order: usize, terms: &[(&[usize], i64)]) -> SparseMatrix {
    let dim = n.pow(order as u32);
    // Build rows, then transpose into the column layout.
    let mut columns: Vec<SparseVec> = alloc::vec![Vec::new(); dim];
    let mut permuted = alloc::vec![0; order];
    for y in 0..dim {
        let idx = decode(y, n, order);
        for (perm, sign) in terms {
            for (slot, &p) in perm.iter().enumerate() {
                permuted[slot] = idx[p];
            }
            let x = encode(&permuted, n);
            columns[x].push((y, rational::int(*sign)));
        }
    }
    let columns = columns
        .into_iter()
        .map(|col| {
            let mut acc = sparse::Accumulator::default();
            for (y, v) in col {
                acc.add(y, v);
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dim, columns)
}

pub(crate) fn constraint_operator(n: usize, valence: Valence, c: Constraint) -> SparseMatrix {
    let order = valence.order();
    match (c, valence) {
        (Constraint::SkewArgs12, _) => {
            let mut swap: Vec<usize> = (0..order).collect();
            swap.swap(0, 1);
            let id: Vec<usize> = (0..order).collect();
            permutation_sum(n, order, &[(&id, 1), (&swap, 1)])
        }
        (Constraint::SkewArgs34, _) => permutation_sum(n, 4, &[(&[0, 1, 2, 3], 1), (&[0, 1, 3, 2], 1)]),
        (Constraint::FirstBianchi, Valence::ThreeOne) => {
            // R[a,b,c,k] + R[b,c,a,k] + R[c,a,b,k]
            permutation_sum(n, 4, &[(&[0, 1, 2, 3], 1), (&[1, 2, 0, 3], 1), (&[2, 0, 1, 3], 1)])
        }
        (Constraint::FirstBianchi, _) => {
            // R[a,b,c,d] + R[a,c,d,b] + R[a,d,b,c]
            permutation_sum(n, 4, &[(&[0, 1, 2, 3], 1), (&[0, 2, 3, 1], 1), (&[0, 3, 1, 2], 1)])
        }
    }
}

/// Applies the linear operator whose kernel is constraint `c` (for example
/// `t ↦ t + t∘swap₁₂`) to a coordinate vector.
pub fn apply_constraint(spec: &TensorSpec, c: Constraint, coords: &[Rational]) -> Result<Vec<Rational>> {
    if coords.len() != spec.full_dim() {
        return Err(Error::DimensionMismatch { expected: spec.full_dim(), found: coords.len() });
    }
    spec.with_constraints(&[c])?;
    let op = constraint_operator(spec.n, spec.valence, c);
    Ok(sparse::to_dense(&op.apply(&sparse::from_dense(coords)), spec.full_dim()))
}

/// The subspace of the full tensor space cut out by every declared constraint.
pub fn symmetry_subspace(spec: &TensorSpec) -> Subspace {
    if spec.constraints.is_empty() {
        return Subspace::full(spec.full_dim());
    }
    let ops: Vec<SparseMatrix> =
        spec.constraints.iter().map(|&c| constraint_operator(spec.n, spec.valence, c)).collect();
    Subspace::kernel_of_operators(spec.full_dim(), &ops.iter().collect::<Vec<_>>())
}

/// A tensor together with its spec. Coordinates always satisfy the spec's
/// constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    spec: TensorSpec,
    coords: Vec<Rational>,
}

impl TensorElement {
    pub fn new(spec: TensorSpec, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != spec.full_dim() {
            return Err(Error::DimensionMismatch { expected: spec.full_dim(), found: coords.len() });
        }
        let sv = sparse::from_dense(&coords);
        for &c in &spec.constraints {
            if !constraint_operator(spec.n, spec.valence, c).apply(&sv).is_empty() {
                return Err(Error::SymmetryViolated);
            }
        }
        Ok(Self { spec, coords })
    }

    pub fn zero(spec: TensorSpec) -> Self {
        let coords = rational::zeros(spec.full_dim());
        Self { spec, coords }
    }

    pub fn spec(&self) -> &TensorSpec {
        &self.spec
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn get(&self, multi_index: &[usize]) -> Result<&Rational> {
        if multi_index.len() != self.spec.valence.order() {
            return Err(Error::Arity { expected: self.spec.valence.order(), found: multi_index.len() });
        }
        Ok(&self.coords[flat_index(multi_index, self.spec.n)?])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { spec: self.spec.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

// Bianchi survives a change of valence only together with both skew
// symmetries, where the (3,1) and (4,0) forms of the identity agree.
fn mirrored_constraints(spec: &TensorSpec) -> Vec<Constraint> {
    let full = spec.has(Constraint::SkewArgs12) && spec.has(Constraint::SkewArgs34);
    spec.constraints.iter().copied().filter(|&c| c != Constraint::FirstBianchi || full).collect()
}

/// `(3,1) → (4,0)`: `R(u₁,u₂,u₃,u₄) = ⟨R(u₁,u₂)u₃, u₄⟩`.
pub fn lower_index(t: &TensorElement) -> Result<TensorElement> {
    if t.spec.valence != Valence::ThreeOne {
        return Err(Error::InvalidSpec("lower_index expects a (3,1) tensor".to_string()));
    }
    let spec = TensorSpec::new(t.spec.n, Valence::FourZero, &mirrored_constraints(&t.spec))?;
    Ok(TensorElement { spec, coords: t.coords.clone() })
}

/// Inverse of [`lower_index`].
pub fn raise_index(t: &TensorElement) -> Result<TensorElement> {
    if t.spec.valence != Valence::FourZero {
        return Err(Error::InvalidSpec("raise_index expects a (4,0) tensor".to_string()));
    }
    let spec = TensorSpec::new(t.spec.n, Valence::ThreeOne, &mirrored_constraints(&t.spec))?;
    Ok(TensorElement { spec, coords: t.coords.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Scalar(Rational),
    /// A vector, or for inner-torsion maps a row-major n×n matrix.
    Vector(Vec<Rational>),
}

/// Multilinear evaluation by contracting the leading slots with `args`.
pub fn evaluate(t: &TensorElement, args: &[&[Rational]]) -> Result<Evaluation> {
    let n = t.spec.n;
    let arity = t.spec.valence.arity();
    if args.len() != arity {
        return Err(Error::Arity { expected: arity, found: args.len() });
    }
    for a in args {
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
    }
    let mut current = t.coords.clone();
    for a in args {
        let block = current.len() / n;
        let mut next = rational::zeros(block);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (o, x) in next.iter_mut().zip(&current[i * block..(i + 1) * block]) {
                if !x.is_zero() {
                    *o += ai * x;
                }
            }
        }
        current = next;
    }
    Ok(match current.len() {
        1 if t.spec.valence == Valence::FourZero => Evaluation::Scalar(current.remove(0)),
        _ => Evaluation::Vector(current),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn flat_index_examples() {
        assert_eq!(flat_index(&[0, 0, 0], 3).unwrap(), 0);
        assert_eq!(flat_index(&[0, 0, 1], 3).unwrap(), 1);
        assert_eq!(flat_index(&[1, 2, 0], 3).unwrap(), 15);
        assert_eq!(flat_index(&[1, 3, 0], 3), Err(Error::IndexOutOfRange { index: 3, dim: 3 }));
        assert_eq!(decode_index(15, 3, 3).unwrap(), alloc::vec![1, 2, 0]);
    }

    #[test]
    fn spec_validation() {
        assert!(TensorSpec::new(3, Valence::TwoOne, &[Constraint::FirstBianchi]).is_err());
        assert!(TensorSpec::new(3, Valence::TwoOne, &[Constraint::SkewArgs34]).is_err());
        assert!(TensorSpec::new(3, Valence::InnerTorsionMap, &[Constraint::SkewArgs12]).is_err());
        assert!(TensorSpec::new(0, Valence::TwoOne, &[]).is_err());
        let s = TensorSpec::new(2, Valence::ThreeOne, &[Constraint::FirstBianchi, Constraint::SkewArgs12]).unwrap();
        assert_eq!(s, TensorSpec::curvature(2));
    }

    #[test]
    fn symmetry_dimensions() {
        assert_eq!(symmetry_subspace(&TensorSpec::torsion(3)).dim(), 9);
        assert_eq!(symmetry_subspace(&TensorSpec::algebraic_curvature(2)).dim(), 1);
        assert_eq!(symmetry_subspace(&TensorSpec::algebraic_curvature(3)).dim(), 6);
        assert_eq!(symmetry_subspace(&TensorSpec::algebraic_curvature(4)).dim(), 20);
    }

    #[test]
    fn evaluate_basis_returns_coordinate() {
        let spec = TensorSpec::new(2, Valence::FourZero, &[]).unwrap();
        let coords: Vec<Rational> = (0..16).map(int).collect();
        let t = TensorElement::new(spec, coords).unwrap();
        let e0 = [int(1), int(0)];
        let e1 = [int(0), int(1)];
        let v = evaluate(&t, &[&e1, &e0, &e1, &e1]).unwrap();
        assert_eq!(v, Evaluation::Scalar(int(11)));
        assert!(evaluate(&t, &[&e1, &e0]).is_err());
    }

    #[test]
    fn element_rejects_asymmetric_coords() {
        let mut coords = rational::zeros(8);
        coords[flat_index(&[0, 1, 0], 2).unwrap()] = int(1);
        assert_eq!(TensorElement::new(TensorSpec::torsion(2), coords), Err(Error::SymmetryViolated));
    }
}
