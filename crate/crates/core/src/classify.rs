//! Per-group classification reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::equivariance::{
    self, cayley_rotations, check_invariance, g_valued_filter, InnerTorsionSolution, InvariantSpaceResult,
};
use crate::error::Result;
use crate::group::{scalar_matrix_census, Builtin, FamilyParams, GroupSpec, ScalarCount};
use crate::named::{named_tensor, Named};
use crate::rational::{self, Rational};
use crate::subspace::Subspace;
use crate::tensor::{evaluate, raise_index, TensorElement, TensorSpec};

/// When to restrict the curvature space to 𝔤-valued tensors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FilterMode {
    /// Apply exactly when the inner-torsion quotient vanishes.
    #[default]
    Auto,
    Force,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub g_valued_filter: FilterMode,
    /// Seed for the Cayley consistency sequence.
    pub seed: u64,
    /// Number of Cayley rotations; 0 disables the check.
    pub cayley_checks: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { g_valued_filter: FilterMode::Auto, seed: 0, cayley_checks: 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportSlot {
    Torsion,
    Curvature,
    CurvatureGValued,
}

impl ReportSlot {
    pub fn label(self) -> &'static str {
        match self {
            ReportSlot::Torsion => "torsion",
            ReportSlot::Curvature => "curvature",
            ReportSlot::CurvatureGValued => "curvature_g_valued",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedRelation {
    /// The space is one-dimensional and its canonical basis vector is this
    /// multiple of the named tensor.
    Multiple(Rational),
    /// The named tensor lies in a space of dimension ≥ 2.
    Contained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMatch {
    pub slot: ReportSlot,
    pub name: String,
    pub relation: NamedRelation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    NotApplicable,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Passed => "passed",
            CheckStatus::Failed => "failed",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyFlag {
    pub check: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub name: String,
    pub family: Option<&'static str>,
    pub params: FamilyParams,
    pub n: usize,
    pub algebra_dim: usize,
    pub component_reps: usize,
    /// The group preserves the standard inner product.
    pub orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub group: GroupSummary,
    pub torsion: InvariantSpaceResult,
    pub curvature: InvariantSpaceResult,
    pub curvature_g_valued: Option<InvariantSpaceResult>,
    pub inner_torsion: InnerTorsionSolution,
    pub named_matches: Vec<NamedMatch>,
    pub flags: Vec<ConsistencyFlag>,
}

impl ClassificationReport {
    /// The filtered curvature space when the filter ran, otherwise the
    /// unfiltered one.
    pub fn headline_curvature(&self) -> &InvariantSpaceResult {
        self.curvature_g_valued.as_ref().unwrap_or(&self.curvature)
    }

    /// `(dim R, dim T, dim 𝔍)` with the headline curvature.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.headline_curvature().dim(), self.torsion.dim(), self.inner_torsion.quotient_dim)
    }

    pub fn all_flags_hold(&self) -> bool {
        self.flags.iter().all(|f| f.status != CheckStatus::Failed)
    }

    pub fn conclusion(&self) -> Option<&'static str> {
        let b = self.builtin()?;
        Some(match b {
            Builtin::So { .. } | Builtin::O { .. } => "constant sectional curvature",
            Builtin::U { .. } => "constant holomorphic curvature Kaehler structure",
            Builtin::ProductOO { .. } => "locally a product of two constant sectional curvature spaces",
            Builtin::Sl { .. } => "flat torsion-free linear connection preserving a volume form",
            Builtin::Gl { .. } => "flat torsion-free linear connection",
            Builtin::Diagonal { .. } => "flat web: characteristic tensors vanish",
            Builtin::Block { .. } => "flat connection with parallel distribution: characteristic tensors vanish",
            Builtin::Trivial { .. } => "parallelism: Lie algebra of frame fields with constant Christoffel symbols",
            Builtin::Signs { .. } => "torsion and inner torsion vanish",
        })
    }

    fn builtin(&self) -> Option<Builtin> {
        let family = self.group.family?;
        Builtin::parse(family, self.group.params).ok()
    }
}

/// Candidate named tensors for a family, as coordinate vectors tagged with
/// their names.
pub fn curvature_candidates(builtin: &Builtin) -> Vec<(String, TensorElement)> {
    let named = |list: &[Named]| {
        list.iter()
            .map(|nm| {
                let t = named_tensor(nm).expect("builtin params are valid");
                let t = if t.spec().valence() == crate::tensor::Valence::FourZero {
                    raise_index(&t).expect("(4,0) tensor")
                } else {
                    t
                };
                (nm.name().to_string(), t)
            })
            .collect()
    };
    match *builtin {
        Builtin::So { n } | Builtin::O { n } => named(&[Named::K0 { n }]),
        Builtin::U { n } => named(&[Named::BoldK { complex_dim: n }]),
        Builtin::ProductOO { n1, n2 } => named(&[Named::K { n: n1 + n2 }, Named::K1 { n1, n2 }, Named::K2 { n1, n2 }]),
        _ => Vec::new(),
    }
}

pub fn torsion_candidates(builtin: &Builtin) -> Vec<(String, TensorElement)> {
    match *builtin {
        Builtin::So { n: 3 } | Builtin::O { n: 3 } => {
            alloc::vec![("cross".to_string(), named_tensor(&Named::Cross { n: 3 }).expect("n = 3"))]
        }
        _ => Vec::new(),
    }
}

/// Relates a solution space to named candidates: an exact scalar for
/// one-dimensional spaces, containment otherwise. Candidates of the wrong
/// size are skipped.
pub fn match_named(space: &Subspace, candidates: &[(String, TensorElement)]) -> Vec<(String, NamedRelation)> {
    let mut out = Vec::new();
    if space.is_zero() {
        return out;
    }
    for (name, t) in candidates {
        let c = t.coords();
        if c.len() != space.ambient_dim() || t.is_zero() {
            continue;
        }
        if space.dim() == 1 {
            let b = space.basis().row(0);
            let p = c.iter().position(|x| !x.is_zero()).expect("nonzero candidate");
            let scalar = &b[p] / &c[p];
            if b.iter().zip(c).all(|(x, y)| *x == &scalar * y) {
                out.push((name.clone(), NamedRelation::Multiple(scalar)));
            }
        } else if space.contains(c).expect("length checked") {
            out.push((name.clone(), NamedRelation::Contained));
        }
    }
    out
}

/// Checks `basis = c·named` by evaluating both on every tuple of standard
/// basis vectors.
pub fn verify_multiple(space: &Subspace, spec: &TensorSpec, named: &TensorElement, c: &Rational) -> Result<bool> {
    if space.dim() != 1 {
        return Ok(false);
    }
    let basis = TensorElement::new(spec.clone(), space.basis().row(0).to_vec())?;
    let scaled = TensorElement::new(spec.clone(), named.scale(c).into_coords())?;
    let n = spec.n();
    let arity = spec.valence().arity();
    let units: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = rational::zeros(n);
            v[i] = rational::one();
            v
        })
        .collect();
    let mut idx = alloc::vec![0usize; arity];
    loop {
        let args: Vec<&[Rational]> = idx.iter().map(|&i| units[i].as_slice()).collect();
        if evaluate(&basis, &args)? != evaluate(&scaled, &args)? {
            return Ok(false);
        }
        let mut s = arity;
        loop {
            if s == 0 {
                return Ok(true);
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < n {
                break;
            }
            idx[s] = 0;
        }
    }
}

pub fn classify(group: &GroupSpec, options: &ClassifyOptions) -> Result<ClassificationReport> {
    group.ensure_valid()?;
    let n = group.n;
    let inner_torsion = equivariance::inner_torsion_space(group)?;
    let torsion = equivariance::invariant_tensors(group, &TensorSpec::torsion(n))?;

    // With vanishing inner torsion the connection preserves the structure;
    // for orthogonal groups that makes every R(u, v) skew-adjoint.
    let orthogonal = group.preserves_standard_inner_product();
    let curvature_spec = if orthogonal && inner_torsion.quotient_dim == 0 {
        TensorSpec::metric_curvature(n)
    } else {
        TensorSpec::curvature(n)
    };
    let curvature = equivariance::invariant_tensors(group, &curvature_spec)?;
    let apply_filter = match options.g_valued_filter {
        FilterMode::Auto => inner_torsion.quotient_dim == 0,
        FilterMode::Force => true,
        FilterMode::Off => false,
    };
    let curvature_g_valued = if apply_filter { Some(g_valued_filter(&curvature, group)?) } else { None };

    let mut report = ClassificationReport {
        group: GroupSummary {
            name: group.name.clone(),
            family: group.builtin.map(|b| b.family()),
            params: group.builtin.map(|b| b.params()).unwrap_or_default(),
            n,
            algebra_dim: group.algebra_dim(),
            component_reps: group.component_reps.len(),
            orthogonal,
        },
        torsion,
        curvature,
        curvature_g_valued,
        inner_torsion,
        named_matches: Vec::new(),
        flags: Vec::new(),
    };
    report.named_matches = named_matches(group, &report);
    report.flags = consistency_flags(group, &report, options)?;
    Ok(report)
}

fn named_matches(group: &GroupSpec, report: &ClassificationReport) -> Vec<NamedMatch> {
    let Some(b) = group.builtin else { return Vec::new() };
    let mut out = Vec::new();
    let mut push = |slot, space: &Subspace, candidates: &[(String, TensorElement)]| {
        for (name, relation) in match_named(space, candidates) {
            out.push(NamedMatch { slot, name, relation });
        }
    };
    push(ReportSlot::Torsion, &report.torsion.space, &torsion_candidates(&b));
    let curv = curvature_candidates(&b);
    push(ReportSlot::Curvature, &report.curvature.space, &curv);
    if let Some(f) = &report.curvature_g_valued {
        push(ReportSlot::CurvatureGValued, &f.space, &curv);
    }
    out
}

fn consistency_flags(
    group: &GroupSpec,
    report: &ClassificationReport,
    options: &ClassifyOptions,
) -> Result<Vec<ConsistencyFlag>> {
    let mut flags = Vec::new();
    let census = scalar_matrix_census(group);
    let scalars = match census.count_known_scalars {
        ScalarCount::Infinite => usize::MAX,
        ScalarCount::Known(k) => k,
    };
    let scalar_detail = match census.count_known_scalars {
        ScalarCount::Infinite => "identity in algebra span".to_string(),
        ScalarCount::Known(k) => alloc::format!("{k} scalar(s) witnessed by short words"),
    };
    let (t, r, j) = (report.torsion.dim(), report.curvature.dim(), report.inner_torsion.quotient_dim);
    let guarded =
        |applies: bool, ok: bool| if applies { CheckStatus::from_bool(ok) } else { CheckStatus::NotApplicable };
    flags.push(ConsistencyFlag {
        check: "two-scalars-force-zero-torsion",
        status: guarded(scalars >= 2, t == 0),
        detail: scalar_detail.clone(),
    });
    flags.push(ConsistencyFlag {
        check: "three-scalars-force-zero-curvature-and-torsion",
        status: guarded(scalars >= 3, t == 0 && r == 0),
        detail: scalar_detail,
    });
    flags.push(ConsistencyFlag {
        check: "minus-identity-forces-zero-torsion-and-inner-torsion",
        status: guarded(census.contains_minus_identity, t == 0 && j == 0),
        detail: if census.contains_minus_identity {
            "-I reached by a word of length <= 4".to_string()
        } else {
            "-I not witnessed".to_string()
        },
    });

    let mut invariant = true;
    for result in [&report.torsion, &report.curvature] {
        for b in result.basis_elements() {
            invariant &= check_invariance(group, &b)?.is_invariant();
        }
    }
    flags.push(ConsistencyFlag {
        check: "basis-elements-invariant",
        status: CheckStatus::from_bool(invariant),
        detail: "every generator fixes every torsion and curvature basis element".to_string(),
    });

    let rotations =
        if options.cayley_checks > 0 { cayley_rotations(group, options.cayley_checks, options.seed) } else { None };
    let (status, detail) = match rotations {
        Some(rots) => {
            let t2 = equivariance::invariant_tensors_with_reps(group, &report.torsion.spec, &rots)?.dim();
            let r2 = equivariance::invariant_tensors_with_reps(group, &report.curvature.spec, &rots)?.dim();
            let j2 = equivariance::inner_torsion_space_with_reps(group, &rots)?.quotient_dim;
            (
                CheckStatus::from_bool((t2, r2, j2) == (t, r, j)),
                alloc::format!("{} Cayley rotations, seed {}", rots.len(), options.seed),
            )
        }
        None => (CheckStatus::NotApplicable, "algebra is zero or not inside o(n)".to_string()),
    };
    flags.push(ConsistencyFlag { check: "cayley-rotations-change-no-dimension", status, detail });

    let mut verified = true;
    if let Some(b) = group.builtin {
        for m in &report.named_matches {
            let NamedRelation::Multiple(c) = &m.relation else { continue };
            let (result, candidates) = match m.slot {
                ReportSlot::Torsion => (&report.torsion, torsion_candidates(&b)),
                ReportSlot::Curvature => (&report.curvature, curvature_candidates(&b)),
                ReportSlot::CurvatureGValued => {
                    (report.curvature_g_valued.as_ref().expect("slot present"), curvature_candidates(&b))
                }
            };
            let named = candidates.iter().find(|(nm, _)| *nm == m.name).map(|(_, t)| t).expect("candidate");
            let named = TensorElement::new(result.spec.clone(), named.coords().to_vec());
            verified &= match named {
                Ok(t) => verify_multiple(&result.space, &result.spec, &t, c)?,
                Err(_) => false,
            };
        }
    }
    flags.push(ConsistencyFlag {
        check: "named-matches-verified-by-evaluation",
        status: if report.named_matches.is_empty() {
            CheckStatus::NotApplicable
        } else {
            CheckStatus::from_bool(verified)
        },
        detail: "basis = c * named on all basis-vector argument tuples".to_string(),
    });
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn run(b: Builtin) -> ClassificationReport {
        classify(&b.build().unwrap(), &ClassifyOptions { cayley_checks: 3, ..ClassifyOptions::default() }).unwrap()
    }

    #[test]
    fn orthogonal_three() {
        let r = run(Builtin::O { n: 3 });
        assert_eq!(r.dims(), (1, 0, 0));
        assert!(r.named_matches.iter().any(|m| m.name == "K0" && matches!(m.relation, NamedRelation::Multiple(_))));
        assert!(r.all_flags_hold());
    }

    #[test]
    fn flat_families() {
        for b in [Builtin::Diagonal { n: 3 }, Builtin::Block { n: 3, s: 1 }, Builtin::Gl { n: 3 }] {
            let r = run(b);
            assert_eq!(r.dims(), (0, 0, 0), "{b:?}");
            assert!(r.all_flags_hold());
        }
    }

    #[test]
    fn match_named_examples() {
        let k0 = named_tensor(&Named::K0 { n: 2 }).unwrap();
        let doubled = k0.scale(&int(2));
        let space = Subspace::span(16, &[doubled.coords()]).unwrap();
        let m = match_named(&space, &[("K0".to_string(), k0.clone())]);
        assert_eq!(m.len(), 1);
        let NamedRelation::Multiple(c) = &m[0].1 else { panic!("expected a multiple") };
        assert_eq!(TensorElement::new(k0.spec().clone(), space.basis().row(0).to_vec()).unwrap(), k0.scale(c));
        assert!(verify_multiple(&space, k0.spec(), &k0, c).unwrap());
        assert!(match_named(&Subspace::zero(16), &[("K0".to_string(), k0)]).is_empty());
    }

    #[test]
    fn signs_group() {
        let r = run(Builtin::Signs { n: 4 });
        assert_eq!((r.torsion.dim(), r.inner_torsion.quotient_dim), (0, 0));
    }
}
