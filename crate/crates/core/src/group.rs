//! Matrix structure groups: a Lie algebra basis plus finitely many
//! representatives of the non-identity components.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};
use crate::sparse;
use crate::subspace::Subspace;

/// The builtin families with their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Trivial {
        n: usize,
    },
    Gl {
        n: usize,
    },
    Sl {
        n: usize,
    },
    So {
        n: usize,
    },
    O {
        n: usize,
    },
    /// `n` is the complex dimension; the ambient space is ℝ²ⁿ.
    U {
        n: usize,
    },
    Diagonal {
        n: usize,
    },
    /// Automorphisms of ℝⁿ fixing the subspace ℝˢ × {0}.
    Block {
        n: usize,
        s: usize,
    },
    ProductOO {
        n1: usize,
        n2: usize,
    },
    /// The two-element group {I, −I}.
    Signs {
        n: usize,
    },
}

/// Parameters as they arrive from the command line or a config file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub s: Option<usize>,
}

pub const FAMILIES: [&str; 11] =
    ["trivial", "gl", "sl", "so", "o", "u", "diagonal", "block", "product_oo", "signs", "finite"];

impl Builtin {
    pub fn parse(family: &str, p: FamilyParams) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidParams(alloc::format!("{family} needs --{what}")))
        };
        let b = match family {
            "trivial" => Builtin::Trivial { n: need(p.n, "n")? },
            "gl" => Builtin::Gl { n: need(p.n, "n")? },
            "sl" => Builtin::Sl { n: need(p.n, "n")? },
            "so" => Builtin::So { n: need(p.n, "n")? },
            "o" => Builtin::O { n: need(p.n, "n")? },
            "u" => Builtin::U { n: need(p.n, "n")? },
            "diagonal" => Builtin::Diagonal { n: need(p.n, "n")? },
            "block" => Builtin::Block { n: need(p.n, "n")?, s: need(p.s, "s")? },
            "product_oo" => Builtin::ProductOO { n1: need(p.n1, "n1")?, n2: need(p.n2, "n2")? },
            "signs" => Builtin::Signs { n: need(p.n, "n")? },
            "finite" => return Err(Error::InvalidParams("finite groups are read from a group file".to_string())),
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        match *self {
            Builtin::Block { n, s } => {
                if n == 0 {
                    bad("n must be positive")
                } else if s == 0 || s >= n {
                    bad("block needs 0 < s < n")
                } else {
                    Ok(())
                }
            }
            Builtin::ProductOO { n1, n2 } if n1 == 0 || n2 == 0 => bad("n1 and n2 must be positive"),
            Builtin::ProductOO { .. } => Ok(()),
            _ if self.ambient_dim() == 0 => bad("n must be positive"),
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Builtin::Trivial { .. } => "trivial",
            Builtin::Gl { .. } => "gl",
            Builtin::Sl { .. } => "sl",
            Builtin::So { .. } => "so",
            Builtin::O { .. } => "o",
            Builtin::U { .. } => "u",
            Builtin::Diagonal { .. } => "diagonal",
            Builtin::Block { .. } => "block",
            Builtin::ProductOO { .. } => "product_oo",
            Builtin::Signs { .. } => "signs",
        }
    }

    pub fn params(&self) -> FamilyParams {
        let n = |n| FamilyParams { n: Some(n), ..FamilyParams::default() };
        match *self {
            Builtin::Trivial { n: k }
            | Builtin::Gl { n: k }
            | Builtin::Sl { n: k }
            | Builtin::So { n: k }
            | Builtin::O { n: k }
            | Builtin::U { n: k }
            | Builtin::Diagonal { n: k }
            | Builtin::Signs { n: k } => n(k),
            Builtin::Block { n: k, s } => FamilyParams { s: Some(s), ..n(k) },
            Builtin::ProductOO { n1, n2 } => FamilyParams { n1: Some(n1), n2: Some(n2), ..FamilyParams::default() },
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match *self {
            Builtin::U { n } => 2 * n,
            Builtin::ProductOO { n1, n2 } => n1 + n2,
            Builtin::Block { n, .. } => n,
            Builtin::Trivial { n }
            | Builtin::Gl { n }
            | Builtin::Sl { n }
            | Builtin::So { n }
            | Builtin::O { n }
            | Builtin::Diagonal { n }
            | Builtin::Signs { n } => n,
        }
    }

    /// Display name such as `so{3}` or `block{3,1}`.
    pub fn display_name(&self) -> String {
        match *self {
            Builtin::Block { n, s } => alloc::format!("block{{{n},{s}}}"),
            Builtin::ProductOO { n1, n2 } => alloc::format!("product_oo{{{n1},{n2}}}"),
            _ => alloc::format!("{}{{{}}}", self.family(), self.params().n.unwrap_or(0)),
        }
    }

    pub fn build(&self) -> Result<GroupSpec> {
        self.check()?;
        let n = self.ambient_dim();
        let (algebra, reps) = match *self {
            Builtin::Trivial { .. } => (Vec::new(), Vec::new()),
            Builtin::Gl { n } => (gl_basis(n), alloc::vec![reflection(n, 0)]),
            Builtin::Sl { n } => (sl_basis(n), Vec::new()),
            Builtin::So { n } => (so_basis(n, 0, n), Vec::new()),
            Builtin::O { n } => (so_basis(n, 0, n), alloc::vec![reflection(n, 0)]),
            Builtin::U { n } => (u_basis(n), Vec::new()),
            Builtin::Diagonal { n } => {
                ((0..n).map(|i| RatMatrix::unit(n, i, i)).collect(), (0..n).map(|i| reflection(n, i)).collect())
            }
            Builtin::Block { n, s } => {
                let basis = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !(i >= s && j < s))
                    .map(|(i, j)| RatMatrix::unit(n, i, j))
                    .collect();
                (basis, alloc::vec![reflection(n, 0), reflection(n, s)])
            }
            Builtin::ProductOO { n1, n2 } => {
                let mut basis = so_basis(n1 + n2, 0, n1);
                basis.extend(so_basis(n1 + n2, n1, n1 + n2));
                (basis, alloc::vec![reflection(n1 + n2, 0), reflection(n1 + n2, n1)])
            }
            Builtin::Signs { n } => (Vec::new(), alloc::vec![RatMatrix::scalar(n, &rational::int(-1))]),
        };
        Ok(GroupSpec {
            name: self.display_name(),
            n,
            lie_algebra_basis: algebra,
            component_reps: reps,
            builtin: Some(*self),
        })
    }

    /// Closed-form algebra dimension, without building the basis.
    pub fn algebra_dim(&self) -> usize {
        match *self {
            Builtin::Trivial { .. } | Builtin::Signs { .. } => 0,
            Builtin::Gl { n } => n * n,
            Builtin::Sl { n } => n * n - 1,
            Builtin::So { n } | Builtin::O { n } => n * (n - 1) / 2,
            Builtin::U { n } => n * n,
            Builtin::Diagonal { n } => n,
            Builtin::Block { n, s } => n * n - s * (n - s),
            Builtin::ProductOO { n1, n2 } => n1 * (n1 - 1) / 2 + n2 * (n2 - 1) / 2,
        }
    }
}

fn reflection(n: usize, i: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    m[(i, i)] = rational::int(-1);
    m
}

fn gl_basis(n: usize) -> Vec<RatMatrix> {
    (0..n).flat_map(|i| (0..n).map(move |j| RatMatrix::unit(n, i, j))).collect()
}

fn sl_basis(n: usize) -> Vec<RatMatrix> {
    let mut out: Vec<RatMatrix> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| RatMatrix::unit(n, i, j))
        .collect();
    for i in 0..n.saturating_sub(1) {
        let mut h = RatMatrix::unit(n, i, i);
        h[(i + 1, i + 1)] = rational::int(-1);
        out.push(h);
    }
    out
}

/// `E_ij − E_ji` for `lo ≤ i < j < hi`, inside gl(n).
fn so_basis(n: usize, lo: usize, hi: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for i in lo..hi {
        for j in i + 1..hi {
            let mut m = RatMatrix::unit(n, i, j);
            m[(j, i)] = rational::int(-1);
            out.push(m);
        }
    }
    out
}

/// `[[X, −Y], [Y, X]]` with `X` skew and `Y` symmetric.
fn u_basis(m: usize) -> Vec<RatMatrix> {
    let n = 2 * m;
    let embed = |x: &[(usize, usize, i64)], y: &[(usize, usize, i64)]| {
        let mut a = RatMatrix::zeros(n, n);
        for &(r, c, v) in x {
            a[(r, c)] = rational::int(v);
            a[(r + m, c + m)] = rational::int(v);
        }
        for &(r, c, v) in y {
            a[(r, c + m)] = rational::int(-v);
            a[(r + m, c)] = rational::int(v);
        }
        a
    };
    let mut out = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            out.push(embed(&[(j, k, 1), (k, j, -1)], &[]));
        }
    }
    for j in 0..m {
        for k in j + 1..m {
            out.push(embed(&[], &[(j, k, 1), (k, j, 1)]));
        }
    }
    for j in 0..m {
        out.push(embed(&[], &[(j, j, 1)]));
    }
    out
}

/// The complex structure `[[0, −I], [I, 0]]` on ℝ²ᵐ.
pub fn complex_structure(m: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(i, i + m)] = rational::int(-1);
        j[(i + m, i)] = rational::int(1);
    }
    j
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub n: usize,
    pub lie_algebra_basis: Vec<RatMatrix>,
    pub component_reps: Vec<RatMatrix>,
    /// Set when the group came from a builtin constructor.
    pub builtin: Option<Builtin>,
}

/// A failed group axiom, naming the offending elements by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape { what: String, rows: usize, cols: usize },
    Dependent { basis: usize },
    BracketNotClosed { left: usize, right: usize },
    NotAdInvariant { rep: usize, basis: usize },
    Singular { rep: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { what, rows, cols } => write!(f, "{what} is {rows}x{cols}, not square of size n"),
            Violation::Dependent { basis } => {
                write!(f, "independence: algebra element {basis} lies in the span of the earlier ones")
            }
            Violation::BracketNotClosed { left, right } => {
                write!(f, "bracket closure: [B{left}, B{right}] is not in the algebra span")
            }
            Violation::NotAdInvariant { rep, basis } => {
                write!(f, "Ad-invariance: g{rep} B{basis} g{rep}^-1 is not in the algebra span")
            }
            Violation::Singular { rep } => write!(f, "invertibility: component rep {rep} is singular"),
        }
    }
}

pub(crate) fn vectorize(m: &RatMatrix) -> &[Rational] {
    m.entries()
}

impl GroupSpec {
    pub fn builtin(family: &str, params: FamilyParams) -> Result<Self> {
        Builtin::parse(family, params)?.build()
    }

    /// A finite group given by generators; the Lie algebra is zero.
    pub fn finite(name: impl Into<String>, n: usize, generators: Vec<RatMatrix>) -> Self {
        Self { name: name.into(), n, lie_algebra_basis: Vec::new(), component_reps: generators, builtin: None }
    }

    pub fn algebra_dim(&self) -> usize {
        self.lie_algebra_basis.len()
    }

    /// The algebra as a subspace of vectorized n×n matrices (row-major).
    pub fn algebra_span(&self) -> Subspace {
        let vs: Vec<&[Rational]> = self.lie_algebra_basis.iter().map(vectorize).collect();
        Subspace::span(self.n * self.n, &vs).expect("shapes checked by validate")
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let square = |m: &RatMatrix| m.rows() == self.n && m.cols() == self.n;
        for (i, b) in self.lie_algebra_basis.iter().enumerate() {
            if !square(b) {
                out.push(Violation::Shape {
                    what: alloc::format!("algebra element {i}"),
                    rows: b.rows(),
                    cols: b.cols(),
                });
            }
        }
        for (i, g) in self.component_reps.iter().enumerate() {
            if !square(g) {
                out.push(Violation::Shape {
                    what: alloc::format!("component rep {i}"),
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }

        let mut e = Echelon::new(self.n * self.n);
        for (i, b) in self.lie_algebra_basis.iter().enumerate() {
            let v = sparse::from_dense(vectorize(b));
            if v.is_empty() || !e.insert(v) {
                out.push(Violation::Dependent { basis: i });
            }
        }
        let span = self.algebra_span();
        let basis = &self.lie_algebra_basis;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let c = basis[i].commutator(&basis[j]).expect("square");
                if !span.contains(vectorize(&c)).expect("shape") {
                    out.push(Violation::BracketNotClosed { left: i, right: j });
                }
            }
        }
        for (r, g) in self.component_reps.iter().enumerate() {
            let Ok(h) = g.inverse() else {
                out.push(Violation::Singular { rep: r });
                continue;
            };
            for (i, b) in basis.iter().enumerate() {
                let conj = g.matmul(b).and_then(|gb| gb.matmul(&h)).expect("square");
                if !span.contains(vectorize(&conj)).expect("shape") {
                    out.push(Violation::NotAdInvariant { rep: r, basis: i });
                }
            }
        }
        out
    }

    /// Errors with every violation when the group is malformed.
    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGroup(v))
        }
    }

    /// Algebra inside o(n) and every rep orthogonal.
    pub fn preserves_standard_inner_product(&self) -> bool {
        self.lie_algebra_basis.iter().all(RatMatrix::is_skew)
            && self.component_reps.iter().all(RatMatrix::is_orthogonal)
    }
}

/// `(I − s)⁻¹(I + s)` for skew `s`.
pub fn cayley_orthogonal(s: &RatMatrix) -> Result<RatMatrix> {
    if !s.is_square() || !s.is_skew() {
        return Err(Error::InvalidParams("Cayley transform needs a skew-symmetric matrix".to_string()));
    }
    let id = RatMatrix::identity(s.rows());
    id.sub(s)?.inverse()?.matmul(&id.add(s)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarCount {
    Known(usize),
    Infinite,
}

/// Scalar matrices found in a group by exact search. Never used to decide a
/// classification, only to cross-check one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCensus {
    /// The identity lies in the algebra span, so `e^{tI}` gives a ray of scalars.
    pub identity_in_algebra: bool,
    /// Distinct scalars `c` with `cI` reached by a short word, including 1.
    pub witnessed: Vec<Rational>,
    pub count_known_scalars: ScalarCount,
    pub contains_minus_identity: bool,
}

pub const CENSUS_WORD_LENGTH: usize = 4;

/// Searches words of length ≤ 4 over the component reps and the half-turns
/// `exp(πL) = I + 2L²` of algebra basis elements with `L³ = −L`.
pub fn scalar_matrix_census(g: &GroupSpec) -> ScalarCensus {
    let n = g.n;
    let id = RatMatrix::identity(n);
    let identity_in_algebra = g.algebra_span().contains(vectorize(&id)).unwrap_or(false);

    let mut alphabet: Vec<RatMatrix> = g.component_reps.clone();
    for l in &g.lie_algebra_basis {
        let l2 = l.matmul(l).expect("square");
        let l3 = l2.matmul(l).expect("square");
        if !l.is_zero() && l3 == l.neg() {
            alphabet.push(id.add(&l2.scale(&rational::int(2))).expect("square"));
        }
    }

    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    seen.insert(id.entries().to_vec());
    let mut frontier = alloc::vec![id.clone()];
    for _ in 0..CENSUS_WORD_LENGTH {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &alphabet {
                let p = w.matmul(a).expect("square");
                if seen.insert(p.entries().to_vec()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let mut witnessed: Vec<Rational> = seen
        .iter()
        .filter_map(|e| {
            let m = RatMatrix::from_vec(n, n, e.clone()).expect("shape");
            let c = if n == 0 { Rational::one() } else { m[(0, 0)].clone() };
            (m == RatMatrix::scalar(n, &c)).then_some(c)
        })
        .collect();
    witnessed.sort();
    let minus_one = -Rational::one();
    let contains_minus_identity = witnessed.contains(&minus_one);
    let count_known_scalars =
        if identity_in_algebra { ScalarCount::Infinite } else { ScalarCount::Known(witnessed.len()) };
    ScalarCensus { identity_in_algebra, witnessed, count_known_scalars, contains_minus_identity }
}

/// One catalog line per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub params: &'static str,
    pub ambient_dim: &'static str,
    pub algebra_dim: &'static str,
    pub component_reps: &'static str,
    /// A representative instance, when the family needs no user data.
    pub example: Option<Builtin>,
}

pub fn catalog() -> Vec<CatalogEntry> {
    let e = |family, params, ambient_dim, algebra_dim, component_reps, example| CatalogEntry {
        family,
        params,
        ambient_dim,
        algebra_dim,
        component_reps,
        example,
    };
    alloc::vec![
        e("trivial", "n", "n", "0", "none", Some(Builtin::Trivial { n: 3 })),
        e("gl", "n", "n", "n^2", "diag(-1,1,...,1)", Some(Builtin::Gl { n: 3 })),
        e("sl", "n", "n", "n^2-1", "none", Some(Builtin::Sl { n: 3 })),
        e("so", "n", "n", "n(n-1)/2", "none", Some(Builtin::So { n: 3 })),
        e("o", "n", "n", "n(n-1)/2", "diag(-1,1,...,1)", Some(Builtin::O { n: 3 })),
        e("u", "n (complex)", "2n", "n^2", "none", Some(Builtin::U { n: 2 })),
        e("diagonal", "n", "n", "n", "n sign flips", Some(Builtin::Diagonal { n: 3 })),
        e("block", "n, s (0<s<n)", "n", "n^2-s(n-s)", "sign flips at 1 and s+1", Some(Builtin::Block { n: 3, s: 1 })),
        e(
            "product_oo",
            "n1, n2",
            "n1+n2",
            "n1(n1-1)/2+n2(n2-1)/2",
            "one reflection per factor",
            Some(Builtin::ProductOO { n1: 2, n2: 2 })
        ),
        e("signs", "n", "n", "0", "-I", Some(Builtin::Signs { n: 3 })),
        e("finite", "group file", "n", "0", "user generators", None),
    ]
}
