//! Invariance operators and the invariant tensor spaces they cut out.
//!
//! A connected group acts through its Lie algebra: each basis element `L`
//! gives a derivation `D_L` of the tensor space. Each component
//! representative `g` gives the finite condition `ρ(g)t = t`. Inner torsion
//! lives in `Hom(ℝⁿ, 𝔤𝔩/𝔤)`, so its conditions are taken modulo 𝔤 by
//! composing with the canonical complement projector of 𝔤.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{cayley_orthogonal, GroupSpec};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};
use crate::sparse::{self, Accumulator, SparseMatrix, SparseVec};
use crate::subspace::Subspace;
use crate::tensor::{self, decode_index, TensorElement, TensorSpec, Valence};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    In,
    Out,
}

fn slots(valence: Valence) -> &'static [Slot] {
    use Slot::*;
    match valence {
        Valence::TwoOne => &[In, In, Out],
        Valence::ThreeOne => &[In, In, In, Out],
        Valence::FourZero => &[In, In, In, In],
        // [i, r, c]: λ(e_i) has output row r and input column c.
        Valence::InnerTorsionMap => &[In, Out, In],
    }
}

/// `#output slots − #input slots`: `D_I` is this multiple of the identity.
pub fn derivation_weight(valence: Valence) -> i64 {
    slots(valence).iter().map(|s| if *s == Slot::Out { 1 } else { -1 }).sum()
}

fn check_square(m: &RatMatrix, n: usize) -> Result<()> {
    if m.rows() != n {
        Err(Error::DimensionMismatch { expected: n, found: m.rows() })
    } else if m.cols() != n {
        Err(Error::DimensionMismatch { expected: n, found: m.cols() })
    } else {
        Ok(())
    }
}

fn nonzero_column(m: &RatMatrix, j: usize) -> SparseVec {
    sparse::from_dense(&m.column(j))
}

fn nonzero_row(m: &RatMatrix, i: usize) -> SparseVec {
    sparse::from_dense(m.row(i))
}

fn encode(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// `D_L` on the full tensor space: `L` acts on output slots and `−Lᵀ`-style
/// on input slots, summed over slots.
pub(crate) fn derivation_operator(n: usize, valence: Valence, l: &RatMatrix) -> SparseMatrix {
    let kinds = slots(valence);
    let order = kinds.len();
    let dim = n.pow(order as u32);
    let cols: Vec<SparseVec> = (0..n).map(|j| nonzero_column(l, j)).collect();
    let rows: Vec<SparseVec> = (0..n).map(|i| nonzero_row(l, i)).collect();
    let columns = (0..dim)
        .map(|x| {
            let idx = decode_index(x, n, order).expect("in range");
            let mut acc = Accumulator::default();
            let mut y = idx.clone();
            for (s, kind) in kinds.iter().enumerate() {
                let entries = match kind {
                    Slot::Out => &cols[idx[s]],
                    Slot::In => &rows[idx[s]],
                };
                for (k, v) in entries {
                    y[s] = *k;
                    acc.add(encode(&y, n), if *kind == Slot::Out { v.clone() } else { -v.clone() });
                }
                y[s] = idx[s];
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dim, columns)
}

/// `ρ(g) − Id`, where `g` acts on output slots and `g⁻¹` pulls back inputs.
pub(crate) fn action_operator(n: usize, valence: Valence, g: &RatMatrix, g_inv: &RatMatrix) -> SparseMatrix {
    let kinds = slots(valence);
    let order = kinds.len();
    let dim = n.pow(order as u32);
    let out_vecs: Vec<SparseVec> = (0..n).map(|j| nonzero_column(g, j)).collect();
    let in_vecs: Vec<SparseVec> = (0..n).map(|i| nonzero_row(g_inv, i)).collect();
    let columns = (0..dim)
        .map(|x| {
            let idx = decode_index(x, n, order).expect("in range");
            // Kronecker product of the per-slot images.
            let mut terms: Vec<(usize, Rational)> = alloc::vec![(0, rational::one())];
            for (s, kind) in kinds.iter().enumerate() {
                let factor = match kind {
                    Slot::Out => &out_vecs[idx[s]],
                    Slot::In => &in_vecs[idx[s]],
                };
                let mut next = Vec::with_capacity(terms.len() * factor.len());
                for (p, a) in &terms {
                    for (k, b) in factor {
                        next.push((p * n + k, a * b));
                    }
                }
                terms = next;
            }
            let mut acc = Accumulator::default();
            for (y, v) in terms {
                acc.add(y, v);
            }
            acc.add(x, -rational::one());
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dim, columns)
}

/// `(ρ(g) − Id)v` by one matrix product per slot, without assembling the
/// operator. Agrees with [`action_operator`].
fn apply_action(n: usize, valence: Valence, g: &RatMatrix, g_inv: &RatMatrix, v: &SparseVec) -> SparseVec {
    let kinds = slots(valence);
    let dim = n.pow(kinds.len() as u32);
    let mut t = sparse::to_dense(v, dim);
    for (s, kind) in kinds.iter().enumerate() {
        // Axis s has stride n^(order-1-s).
        let stride = n.pow((kinds.len() - 1 - s) as u32);
        let mut next = rational::zeros(dim);
        for (x, value) in t.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let xs = (x / stride) % n;
            let base = x - xs * stride;
            for y in 0..n {
                let m = match kind {
                    Slot::Out => &g[(y, xs)],
                    Slot::In => &g_inv[(xs, y)],
                };
                if !m.is_zero() {
                    next[base + y * stride] += m * value;
                }
            }
        }
        t = next;
    }
    let mut acc = Accumulator::default();
    for (y, x) in t.into_iter().enumerate() {
        acc.add(y, x);
    }
    for (x, value) in v {
        acc.add(*x, -value.clone());
    }
    acc.finish()
}

/// `λ ↦ (i ↦ Ad_g λ(e_i) − λ(g e_i))`, before reduction modulo 𝔤.
fn inner_torsion_action(n: usize, g: &RatMatrix, g_inv: &RatMatrix) -> SparseMatrix {
    let dim = n * n * n;
    let g_cols: Vec<SparseVec> = (0..n).map(|j| nonzero_column(g, j)).collect();
    let g_rows: Vec<SparseVec> = (0..n).map(|i| nonzero_row(g, i)).collect();
    let h_rows: Vec<SparseVec> = (0..n).map(|i| nonzero_row(g_inv, i)).collect();
    let columns = (0..dim)
        .map(|x| {
            let (i, r, c) = (x / (n * n), (x / n) % n, x % n);
            let mut acc = Accumulator::default();
            // g E_rc g⁻¹ = g[:, r] ⊗ g⁻¹[c, :]
            for (a, u) in &g_cols[r] {
                for (b, v) in &h_rows[c] {
                    acc.add(encode(&[i, *a, *b], n), u * v);
                }
            }
            // λ(g e_j) picks up g[i, j]·λ(e_i).
            for (j, v) in &g_rows[i] {
                acc.add(encode(&[*j, r, c], n), -v.clone());
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(dim, columns)
}

/// Composes `op` with the projector `p` applied independently to each
/// consecutive block of `p.cols()` output coordinates.
fn project_blocks(op: &SparseMatrix, p: &SparseMatrix) -> SparseMatrix {
    let block = p.cols();
    let columns = op
        .columns()
        .iter()
        .map(|col| {
            let mut acc = Accumulator::default();
            let mut start = 0;
            while start < col.len() {
                let b = col[start].0 / block;
                let mut end = start;
                while end < col.len() && col[end].0 / block == b {
                    end += 1;
                }
                let local: SparseVec = col[start..end].iter().map(|(k, v)| (k % block, v.clone())).collect();
                for (m, v) in p.apply(&local) {
                    acc.add(b * block + m, v);
                }
                start = end;
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(op.rows() / block * p.rows(), columns)
}

fn check_group_for(group: &GroupSpec, n: usize) -> Result<()> {
    if group.n != n {
        return Err(Error::DimensionMismatch { expected: group.n, found: n });
    }
    group.ensure_valid()
}

/// Matrix of `D_L` on the full tensor space of `spec`.
pub fn infinitesimal_constraint(spec: &TensorSpec, l: &RatMatrix) -> Result<RatMatrix> {
    check_square(l, spec.n())?;
    Ok(derivation_operator(spec.n(), spec.valence(), l).to_dense())
}

/// Matrix of `ρ(g) − Id` on the full tensor space of `spec`.
pub fn finite_constraint(spec: &TensorSpec, g: &RatMatrix) -> Result<RatMatrix> {
    check_square(g, spec.n())?;
    let h = g.inverse()?;
    Ok(action_operator(spec.n(), spec.valence(), g, &h).to_dense())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    /// Every `R(e_i, e_j)` lies in 𝔤.
    GValued,
}

impl Filter {
    pub fn label(self) -> &'static str {
        match self {
            Filter::GValued => "g-valued",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpaceResult {
    pub spec: TensorSpec,
    pub space: Subspace,
    pub group: String,
    pub filters: Vec<Filter>,
}

impl InvariantSpaceResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_elements(&self) -> Vec<TensorElement> {
        self.space
            .basis_vectors()
            .map(|v| TensorElement::new(self.spec.clone(), v.to_vec()).expect("space lies in the symmetry subspace"))
            .collect()
    }
}

fn tensor_operators(group: &GroupSpec, spec: &TensorSpec) -> Result<Vec<SparseMatrix>> {
    let (n, valence) = (spec.n(), spec.valence());
    let mut ops: Vec<SparseMatrix> =
        group.lie_algebra_basis.iter().map(|l| derivation_operator(n, valence, l)).collect();
    for g in &group.component_reps {
        check_square(g, n)?;
        ops.push(action_operator(n, valence, g, &g.inverse()?));
    }
    Ok(ops)
}

/// Symmetry subspace of `spec` ∩ kernels of every `D_L` ∩ kernels of every
/// `ρ(g) − Id`, in that order.
pub fn invariant_tensors(group: &GroupSpec, spec: &TensorSpec) -> Result<InvariantSpaceResult> {
    invariant_tensors_with_reps(group, spec, &[])
}

/// [`invariant_tensors`] with additional finite constraints, for consistency
/// checks with extra group elements.
pub fn invariant_tensors_with_reps(
    group: &GroupSpec,
    spec: &TensorSpec,
    extra_reps: &[RatMatrix],
) -> Result<InvariantSpaceResult> {
    check_group_for(group, spec.n())?;
    if spec.valence() == Valence::InnerTorsionMap {
        return Err(Error::InvalidSpec("inner torsion is solved by inner_torsion_space".to_string()));
    }
    let ops = tensor_operators(group, spec)?;
    let mut space = tensor::symmetry_subspace(spec).restrict_kernel(&ops.iter().collect::<Vec<_>>());
    if !extra_reps.is_empty() {
        let (n, valence) = (spec.n(), spec.valence());
        let pairs = extra_reps
            .iter()
            .map(|g| {
                check_square(g, n)?;
                Ok((g, g.inverse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        let maps: Vec<_> = pairs.iter().map(|(g, h)| move |v: &SparseVec| apply_action(n, valence, g, h, v)).collect();
        space = space.restrict_kernel_by(&maps);
    }
    Ok(InvariantSpaceResult { spec: spec.clone(), space, group: group.name.clone(), filters: Vec::new() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerTorsionSolution {
    /// Canonical representatives of a basis of the quotient.
    pub lambda_basis: Vec<TensorElement>,
    /// `Hom(ℝⁿ, 𝔤)` inside the inner-torsion-map space.
    pub modulo: Subspace,
    pub quotient_dim: usize,
    /// Dimension of the solution space before taking the quotient.
    pub solution_dim: usize,
}

/// `⊕ᵢ eᵢ ⊗ 𝔤`, the lifts of zero inner torsion.
fn hom_into_algebra(group: &GroupSpec) -> Subspace {
    let n = group.n;
    let block = n * n;
    let mut vecs = Vec::new();
    for i in 0..n {
        for b in &group.lie_algebra_basis {
            let mut v = rational::zeros(n * block);
            v[i * block..(i + 1) * block].clone_from_slice(b.entries());
            vecs.push(v);
        }
    }
    Subspace::span(n * block, &vecs).expect("lengths agree")
}

pub fn inner_torsion_space(group: &GroupSpec) -> Result<InnerTorsionSolution> {
    inner_torsion_space_with_reps(group, &[])
}

pub fn inner_torsion_space_with_reps(group: &GroupSpec, extra_reps: &[RatMatrix]) -> Result<InnerTorsionSolution> {
    let n = group.n;
    check_group_for(group, n)?;
    let projector = group.algebra_span().complement_projector();
    let mut ops = Vec::new();
    for l in &group.lie_algebra_basis {
        ops.push(project_blocks(&derivation_operator(n, Valence::InnerTorsionMap, l), &projector));
    }
    for g in &group.component_reps {
        check_square(g, n)?;
        ops.push(project_blocks(&inner_torsion_action(n, g, &g.inverse()?), &projector));
    }
    let mut solutions = Subspace::kernel_of_operators(n * n * n, &ops.iter().collect::<Vec<_>>());
    if !extra_reps.is_empty() {
        let mut extra = Vec::new();
        for g in extra_reps {
            check_square(g, n)?;
            extra.push(project_blocks(&inner_torsion_action(n, g, &g.inverse()?), &projector));
        }
        solutions = solutions.restrict_kernel(&extra.iter().collect::<Vec<_>>());
    }
    let modulo = hom_into_algebra(group);
    let reduced: Vec<Vec<Rational>> =
        solutions.basis_vectors().map(|v| modulo.coset_reduce(v).expect("lengths agree")).collect();
    let quotient = Subspace::span(n * n * n, &reduced)?;
    let spec = TensorSpec::inner_torsion_map(n);
    let lambda_basis = quotient
        .basis_vectors()
        .map(|v| TensorElement::new(spec.clone(), v.to_vec()).expect("no symmetry constraints"))
        .collect();
    Ok(InnerTorsionSolution { lambda_basis, modulo, quotient_dim: quotient.dim(), solution_dim: solutions.dim() })
}

/// `t ↦ (P ⊗ …)(R(e_a, e_b))`: the part of each endomorphism `R(e_a, e_b)`
/// outside 𝔤.
fn g_valued_operator(n: usize, algebra: &Subspace) -> SparseMatrix {
    let p = algebra.complement_projector();
    let block = n * n;
    let columns = (0..n.pow(4))
        .map(|x| {
            let (ab, c, k) = (x / block, (x / n) % n, x % n);
            // Matrix entry (k, c) of R(e_a, e_b), row-major.
            p.columns()[k * n + c].iter().map(|(m, v)| (ab * block + m, v.clone())).collect()
        })
        .collect();
    SparseMatrix::from_columns(n.pow(4), columns)
}

/// Restricts a curvature-type space to tensors whose endomorphisms
/// `R(e_i, e_j)` all lie in 𝔤.
pub fn g_valued_filter(result: &InvariantSpaceResult, group: &GroupSpec) -> Result<InvariantSpaceResult> {
    let spec = &result.spec;
    if !matches!(spec.valence(), Valence::ThreeOne | Valence::FourZero) {
        return Err(Error::InvalidSpec(alloc::format!(
            "the g-valued filter needs a curvature-type valence, not {}",
            spec.valence().label()
        )));
    }
    if group.n != spec.n() {
        return Err(Error::DimensionMismatch { expected: group.n, found: spec.n() });
    }
    let op = g_valued_operator(spec.n(), &group.algebra_span());
    let mut filters = result.filters.clone();
    if !filters.contains(&Filter::GValued) {
        filters.push(Filter::GValued);
    }
    Ok(InvariantSpaceResult {
        spec: spec.clone(),
        space: result.space.restrict_kernel(&[&op]),
        group: result.group.clone(),
        filters,
    })
}

/// Pseudo-random elements of the identity component, as Cayley transforms of
/// small-integer combinations of the algebra basis. `None` when the algebra
/// is zero or not inside 𝔬(n), where the transform does not land in the group.
pub fn cayley_rotations(group: &GroupSpec, count: usize, seed: u64) -> Option<Vec<RatMatrix>> {
    if group.lie_algebra_basis.is_empty() || !group.lie_algebra_basis.iter().all(RatMatrix::is_skew) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut s = RatMatrix::zeros(group.n, group.n);
        for b in &group.lie_algebra_basis {
            let c: i64 = rng.gen_range(-2..=2);
            if c != 0 {
                s = s.add(&b.scale(&rational::int(c))).expect("square");
            }
        }
        if s.is_zero() {
            continue;
        }
        out.push(cayley_orthogonal(&s).expect("I − S is invertible for skew S"));
    }
    Some(out)
}

/// Which group generators move a given tensor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvarianceVerdict {
    pub failing_algebra: Vec<usize>,
    pub failing_reps: Vec<usize>,
}

impl InvarianceVerdict {
    pub fn is_invariant(&self) -> bool {
        self.failing_algebra.is_empty() && self.failing_reps.is_empty()
    }
}

/// Tests one tensor against every generator. Inner-torsion maps are tested
/// modulo 𝔤.
pub fn check_invariance(group: &GroupSpec, t: &TensorElement) -> Result<InvarianceVerdict> {
    let spec = t.spec();
    let n = spec.n();
    check_group_for(group, n)?;
    let v = sparse::from_dense(t.coords());
    let mut verdict = InvarianceVerdict::default();
    let itm = spec.valence() == Valence::InnerTorsionMap;
    let projector = group.algebra_span().complement_projector();
    let moved = |op: SparseMatrix| {
        let op = if itm { project_blocks(&op, &projector) } else { op };
        !op.apply(&v).is_empty()
    };
    for (i, l) in group.lie_algebra_basis.iter().enumerate() {
        if moved(derivation_operator(n, spec.valence(), l)) {
            verdict.failing_algebra.push(i);
        }
    }
    for (i, g) in group.component_reps.iter().enumerate() {
        let h = g.inverse()?;
        let op = if itm { inner_torsion_action(n, g, &h) } else { action_operator(n, spec.valence(), g, &h) };
        if moved(op) {
            verdict.failing_reps.push(i);
        }
    }
    Ok(verdict)
}

/// Whether `v` is fixed by `ρ(g)`, used for a-posteriori checks.
pub fn is_fixed_by(spec: &TensorSpec, g: &RatMatrix, v: &[Rational]) -> Result<bool> {
    check_square(g, spec.n())?;
    let op = action_operator(spec.n(), spec.valence(), g, &g.inverse()?);
    Ok(op.apply(&sparse::from_dense(v)).iter().all(|(_, x)| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;
    use crate::named::{named_tensor, Named};
    use crate::rational::int;

    fn so(n: usize) -> GroupSpec {
        Builtin::So { n }.build().unwrap()
    }

    #[test]
    fn zero_and_identity_generators() {
        for spec in [TensorSpec::torsion(2), TensorSpec::curvature(2), TensorSpec::algebraic_curvature(2)] {
            assert!(infinitesimal_constraint(&spec, &RatMatrix::zeros(2, 2)).unwrap().is_zero());
            assert!(finite_constraint(&spec, &RatMatrix::identity(2)).unwrap().is_zero());
        }
    }

    #[test]
    fn scaling_weights() {
        let id = RatMatrix::identity(3);
        for (valence, w) in [(Valence::TwoOne, -1), (Valence::ThreeOne, -2), (Valence::FourZero, -4)] {
            let spec = TensorSpec::new(3, valence, &[]).unwrap();
            let d = infinitesimal_constraint(&spec, &id).unwrap();
            assert_eq!(d, RatMatrix::scalar(spec.full_dim(), &int(w)));
            assert_eq!(derivation_weight(valence), w);
        }
    }

    #[test]
    fn minus_identity_action() {
        let minus = RatMatrix::scalar(2, &int(-1));
        let t = finite_constraint(&TensorSpec::torsion(2), &minus).unwrap();
        assert_eq!(t, RatMatrix::scalar(8, &int(-2)));
        assert!(finite_constraint(&TensorSpec::curvature(2), &minus).unwrap().is_zero());
        assert_eq!(finite_constraint(&TensorSpec::torsion(2), &RatMatrix::zeros(2, 2)), Err(Error::Singular));
    }

    #[test]
    fn so3_spaces() {
        let g = so(3);
        let r = invariant_tensors(&g, &TensorSpec::metric_curvature(3)).unwrap();
        assert_eq!(r.dim(), 1);
        let t = invariant_tensors(&g, &TensorSpec::torsion(3)).unwrap();
        assert_eq!(t.dim(), 1);
        let cross = named_tensor(&Named::Cross { n: 3 }).unwrap();
        assert!(t.space.contains(cross.coords()).unwrap());
        assert_eq!(invariant_tensors(&so(5), &TensorSpec::torsion(5)).unwrap().dim(), 0);
    }

    #[test]
    fn trivial_group_keeps_symmetry_subspace() {
        let g = Builtin::Trivial { n: 3 }.build().unwrap();
        let spec = TensorSpec::curvature(3);
        assert_eq!(invariant_tensors(&g, &spec).unwrap().space, tensor::symmetry_subspace(&spec));
        let it = inner_torsion_space(&g).unwrap();
        assert_eq!(it.quotient_dim, 27);
    }

    #[test]
    fn inner_torsion_small_groups() {
        for b in [Builtin::So { n: 3 }, Builtin::Gl { n: 2 }, Builtin::Sl { n: 2 }, Builtin::Signs { n: 2 }] {
            let it = inner_torsion_space(&b.build().unwrap()).unwrap();
            assert_eq!(it.quotient_dim, 0, "{b:?}");
        }
    }

    #[test]
    fn literal_and_pulled_back_finite_conditions_agree() {
        // Ad_g λ(e_i) − λ(g e_i) ∈ 𝔤 for all i  ⟺  ρ(g)λ − λ is 𝔤-valued.
        let g = Builtin::O { n: 3 }.build().unwrap();
        let rep = &g.component_reps[0];
        let h = rep.inverse().unwrap();
        let p = g.algebra_span().complement_projector();
        let a = project_blocks(&inner_torsion_action(3, rep, &h), &p);
        let b = project_blocks(&action_operator(3, Valence::InnerTorsionMap, rep, &h), &p);
        assert_eq!(Subspace::kernel_of_operators(27, &[&a]), Subspace::kernel_of_operators(27, &[&b]));
    }

    #[test]
    fn g_valued_filter_identity_on_so() {
        let g = so(3);
        let r = invariant_tensors(&g, &TensorSpec::metric_curvature(3)).unwrap();
        let f = g_valued_filter(&r, &g).unwrap();
        assert_eq!(f.space, r.space);
        assert_eq!(f.filters, alloc::vec![Filter::GValued]);
        let zero = InvariantSpaceResult { space: Subspace::zero(81), ..r };
        assert_eq!(g_valued_filter(&zero, &g).unwrap().dim(), 0);
    }

    #[test]
    fn cayley_rotations_fix_invariants() {
        let g = so(3);
        let rots = cayley_rotations(&g, 5, 7).unwrap();
        let k0 = named_tensor(&Named::K0 { n: 3 }).unwrap();
        for m in &rots {
            assert!(m.is_orthogonal());
            assert!(is_fixed_by(k0.spec(), m, k0.coords()).unwrap());
        }
        assert_eq!(cayley_rotations(&g, 5, 7).unwrap(), rots);
        assert!(cayley_rotations(&Builtin::Gl { n: 2 }.build().unwrap(), 1, 0).is_none());
    }

    #[test]
    fn slotwise_action_matches_operator() {
        let g = RatMatrix::from_ints(&[[1, 2, 0], [0, 1, -1], [3, 0, 1]]);
        let h = g.inverse().unwrap();
        for valence in [Valence::TwoOne, Valence::ThreeOne, Valence::FourZero] {
            let op = action_operator(3, valence, &g, &h);
            let dim = 3usize.pow(slots(valence).len() as u32);
            for x in [0, 5, dim - 1] {
                let mut v: SparseVec = alloc::vec![(x, rational::int(2)), ((x + 7) % dim, rational::frac(-1, 3))];
                v.sort_by_key(|e| e.0);
                assert_eq!(apply_action(3, valence, &g, &h, &v), op.apply(&v));
            }
        }
    }

    #[test]
    fn invariance_verdict() {
        let g = so(3);
        let k0 = named_tensor(&Named::K0 { n: 3 }).unwrap();
        assert!(check_invariance(&g, &k0).unwrap().is_invariant());
        let diag = Builtin::Diagonal { n: 3 }.build().unwrap();
        assert!(!check_invariance(&diag, &k0).unwrap().is_invariant());
    }
}
