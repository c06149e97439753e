mod oracle;

use etk_core::equivariance::{inner_torsion_space, invariant_tensors, invariant_tensors_with_reps};
use etk_core::group::{cayley_orthogonal, GroupSpec};
use etk_core::linalg::{kernel, rank, rref};
use etk_core::named::{named_tensor, Named};
use etk_core::parallelism::{so3_structure_constants, ParallelismData};
use etk_core::rational::{frac, int, zeros};
use etk_core::tensor::{
    apply_constraint, evaluate, lower_index, raise_index, symmetry_subspace, Constraint, Evaluation, TensorElement,
};
use etk_core::{RatMatrix, Rational, Subspace, TensorSpec, Valence};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn sparse_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![3 => Just(int(0)), 2 => small_rational()]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(sparse_rational(), rows * cols)
        .prop_map(move |v| RatMatrix::from_vec(rows, cols, v).unwrap())
}

fn any_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))
}

fn vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(sparse_rational(), dim), count)
}

fn int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(lo..=hi, n * n)
        .prop_map(move |v| RatMatrix::from_vec(n, n, v.into_iter().map(int).collect()).unwrap())
}

fn combination(space: &Subspace, coeffs: &[Rational]) -> Vec<Rational> {
    let mut out = zeros(space.ambient_dim());
    for (b, c) in space.basis_vectors().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += x * c;
        }
    }
    out
}

fn all_specs(n: usize) -> Vec<TensorSpec> {
    use Constraint::*;
    let sets: [&[Constraint]; 6] = [
        &[],
        &[SkewArgs12],
        &[SkewArgs12, FirstBianchi],
        &[SkewArgs34],
        &[SkewArgs12, SkewArgs34],
        &[SkewArgs12, SkewArgs34, FirstBianchi],
    ];
    let mut out = Vec::new();
    for v in [Valence::TwoOne, Valence::ThreeOne, Valence::FourZero] {
        for s in sets {
            if let Ok(spec) = TensorSpec::new(n, v, s) {
                out.push(spec);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_vectors_are_annihilated(m in any_matrix()) {
        let k = kernel(&m);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once, &twice);
    }

    #[test]
    fn span_is_canonical(vs in vectors(5, 3), c in small_rational()) {
        let a = Subspace::span(5, &vs).unwrap();
        let mut other: Vec<Vec<Rational>> = vs.iter().rev().cloned().collect();
        let mixed: Vec<Rational> = vs[0].iter().zip(&vs[1]).map(|(x, y)| x + y * &c).collect();
        other.push(mixed);
        prop_assert_eq!(a, Subspace::span(5, &other).unwrap());
    }

    #[test]
    fn coset_reduce_is_constant_on_cosets(vs in vectors(5, 2), v in vectors(5, 1), coeffs in proptest::collection::vec(small_rational(), 2)) {
        let s = Subspace::span(5, &vs).unwrap();
        let v = &v[0];
        let w: Vec<Rational> = v.iter().zip(combination(&s, &coeffs)).map(|(a, b)| a + b).collect();
        let r = s.coset_reduce(v).unwrap();
        prop_assert_eq!(&r, &s.coset_reduce(&w).unwrap());
        prop_assert_eq!(&r, &s.coset_reduce(&r).unwrap());
        let diff: Vec<Rational> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(s.contains(&diff).unwrap());
    }

    #[test]
    fn intersection_dimension_bounds(a in vectors(5, 3), b in vectors(5, 3)) {
        let (a, b) = (Subspace::span(5, &a).unwrap(), Subspace::span(5, &b).unwrap());
        let i = a.intersect(&b).unwrap();
        prop_assert!(i.dim() <= a.dim().min(b.dim()));
        prop_assert!(i.dim() + 5 >= a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
    }

    #[test]
    fn symmetry_basis_satisfies_constraints(n in 1usize..=3, pick in 0usize..18) {
        let specs = all_specs(n);
        let spec = &specs[pick % specs.len()];
        let s = symmetry_subspace(spec);
        for v in s.basis_vectors() {
            for c in spec.constraints() {
                prop_assert!(apply_constraint(spec, *c, v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn curvature_elements_satisfy_bianchi(coeffs in proptest::collection::vec(small_rational(), 6)) {
        let spec = TensorSpec::algebraic_curvature(3);
        let s = symmetry_subspace(&spec);
        prop_assert_eq!(s.dim(), 6);
        let t = combination(&s, &coeffs);
        prop_assert!(apply_constraint(&spec, Constraint::FirstBianchi, &t).unwrap().iter().all(Zero::is_zero));
        prop_assert!(TensorElement::new(spec, t).is_ok());
    }

    #[test]
    fn lower_raise_round_trip(coords in proptest::collection::vec(small_rational(), 16)) {
        let t = TensorElement::new(TensorSpec::new(2, Valence::ThreeOne, &[]).unwrap(), coords).unwrap();
        let low = lower_index(&t).unwrap();
        prop_assert_eq!(low.spec().valence(), Valence::FourZero);
        prop_assert_eq!(raise_index(&low).unwrap(), t);
    }

    #[test]
    fn evaluation_is_multilinear(
        coords in proptest::collection::vec(small_rational(), 27),
        args in vectors(3, 3),
        c in small_rational(),
    ) {
        let t = TensorElement::new(TensorSpec::new(3, Valence::TwoOne, &[]).unwrap(), coords).unwrap();
        let mixed: Vec<Rational> = args[0].iter().zip(&args[2]).map(|(x, y)| x + &c * y).collect();
        let ev = |a: &[Rational]| match evaluate(&t, &[a, &args[1]]).unwrap() {
            Evaluation::Vector(v) => v,
            Evaluation::Scalar(_) => unreachable!(),
        };
        let (lhs, a, b) = (ev(&mixed), ev(&args[0]), ev(&args[2]));
        for k in 0..3 {
            prop_assert_eq!(&lhs[k], &(&a[k] + &c * &b[k]));
        }
    }

    #[test]
    fn cross_product_is_orthogonal(u in vectors(3, 2)) {
        let cross = named_tensor(&Named::Cross { n: 3 }).unwrap();
        let Evaluation::Vector(w) = evaluate(&cross, &[&u[0], &u[1]]).unwrap() else { unreachable!() };
        for v in &u {
            let dot: Rational = w.iter().zip(v).map(|(a, b)| a * b).sum();
            prop_assert!(dot.is_zero());
        }
    }

    #[test]
    fn cayley_transform_is_special_orthogonal(a in small_rational(), b in small_rational(), c in small_rational()) {
        let s = RatMatrix::from_rows(vec![
            vec![int(0), a.clone(), b.clone()],
            vec![-a, int(0), c.clone()],
            vec![-b, -c, int(0)],
        ]).unwrap();
        let q = cayley_orthogonal(&s).unwrap();
        prop_assert!(q.is_orthogonal());
        prop_assert_eq!(q.determinant().unwrap(), int(1));
    }

    #[test]
    fn parallelism_torsion_is_skew(
        lambda_scale in small_rational(),
        gamma in proptest::collection::vec(sparse_rational(), 27),
    ) {
        let lambda: Vec<Rational> = so3_structure_constants().iter().map(|x| x * &lambda_scale).collect();
        let d = ParallelismData::new(3, lambda, gamma).unwrap();
        let t = d.torsion_constants().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    prop_assert_eq!(t.get(&[i, j, k]).unwrap(), &-t.get(&[j, i, k]).unwrap().clone());
                }
            }
        }
    }

    #[test]
    fn torsion_free_parallelism_satisfies_bianchi(
        lambda_scale in small_rational(),
        sym in proptest::collection::vec(sparse_rational(), 27),
    ) {
        // Γ = ½λ + S with S symmetric in its lower pair.
        let lambda: Vec<Rational> = so3_structure_constants().iter().map(|x| x * &lambda_scale).collect();
        let mut gamma = zeros(27);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let s = &sym[(i.min(j) * 3 + i.max(j)) * 3 + k];
                    gamma[(i * 3 + j) * 3 + k] = &lambda[(i * 3 + j) * 3 + k] * frac(1, 2) + s;
                }
            }
        }
        let d = ParallelismData::new(3, lambda, gamma).unwrap();
        prop_assert!(d.torsion_constants().unwrap().is_zero());
        let r = d.curvature_constants().unwrap();
        let bianchi = apply_constraint(r.spec(), Constraint::FirstBianchi, r.coords()).unwrap();
        prop_assert!(bianchi.iter().all(Zero::is_zero));
    }

    #[test]
    fn extra_reps_only_shrink_invariant_spaces(g in int_matrix(2, -2, 2), pick in 0usize..18) {
        prop_assume!(!g.determinant().unwrap().is_zero());
        let specs = all_specs(2);
        let spec = &specs[pick % specs.len()];
        let trivial = GroupSpec::finite("trivial", 2, vec![]);
        let base = invariant_tensors(&trivial, spec).unwrap();
        let cut = invariant_tensors_with_reps(&trivial, spec, &[g]).unwrap();
        prop_assert!(cut.space.is_subspace_of(&base.space).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_parameter_groups_agree_with_oracle(n in 2usize..=3, l in int_matrix(3, -1, 1), pick in 0usize..18) {
        let l = RatMatrix::from_vec(n, n, (0..n * n).map(|k| l.entries()[(k / n) * 3 + k % n].clone()).collect()).unwrap();
        prop_assume!(!l.is_zero());
        let group = GroupSpec { name: "exp(tL)".into(), n, lie_algebra_basis: vec![l], component_reps: vec![], builtin: None };
        let specs = all_specs(n);
        let spec = &specs[pick % specs.len()];
        prop_assert_eq!(invariant_tensors(&group, spec).unwrap().dim(), oracle::invariant_dim(&group, spec, &[]));
        prop_assert_eq!(inner_torsion_space(&group).unwrap().quotient_dim, oracle::inner_torsion_quotient_dim(&group, &[]));
    }

    #[test]
    fn finite_groups_agree_with_oracle(g in int_matrix(2, -2, 2), h in int_matrix(2, -1, 1), pick in 0usize..18) {
        prop_assume!(!g.determinant().unwrap().is_zero() && !h.determinant().unwrap().is_zero());
        let group = GroupSpec::finite("generated", 2, vec![g, h]);
        let specs = all_specs(2);
        let spec = &specs[pick % specs.len()];
        prop_assert_eq!(invariant_tensors(&group, spec).unwrap().dim(), oracle::invariant_dim(&group, spec, &[]));
        prop_assert_eq!(inner_torsion_space(&group).unwrap().quotient_dim, oracle::inner_torsion_quotient_dim(&group, &[]));
    }
}
