//! Brute-force reference solver for invariant dimensions.
//!
//! Shares no code with the library's solver. Every equation is written out
//! entry by entry from its defining formula, reduced modulo the prime
//! 2³¹ − 1, and eliminated densely with the unknowns in reversed order.
//! A rank over 𝔽ₚ never exceeds the rank over ℚ and agrees with it unless p
//! divides one of finitely many minors, which does not happen for the small
//! integer data used in the tests.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use etk_core::group::GroupSpec;
use etk_core::rational::{BigInt, Rational};
use etk_core::tensor::{Constraint, TensorSpec, Valence};
use etk_core::RatMatrix;
use num_traits::ToPrimitive;

pub const P: u64 = 2_147_483_647;

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn mul(a: u64, b: u64) -> u64 {
    a * b % P
}

fn neg(a: u64) -> u64 {
    (P - a) % P
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    assert_ne!(a, 0, "division by zero mod p");
    pow(a, P - 2)
}

pub fn reduce(r: &Rational) -> u64 {
    let p = BigInt::from(P);
    let lift = |x: &BigInt| (((x % &p) + &p) % &p).to_u64().expect("in range");
    mul(lift(r.numer()), inv(lift(r.denom())))
}

pub type Mat = Vec<Vec<u64>>;

pub fn reduce_matrix(m: &RatMatrix) -> Mat {
    (0..m.rows()).map(|i| m.row(i).iter().map(reduce).collect()).collect()
}

pub fn inverse(m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("invertible mod p");
        a.swap(col, piv);
        let s = inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = mul(*x, s);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..2 * n {
                    a[r][c] = add(a[r][c], neg(mul(f, a[col][c])));
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Row echelon form over 𝔽ₚ built one equation at a time.
pub struct Eliminator {
    cols: usize,
    pivots: BTreeMap<usize, Vec<u64>>,
}

impl Eliminator {
    pub fn new(cols: usize) -> Self {
        Self { cols, pivots: BTreeMap::new() }
    }

    /// Adds an equation given as `(unknown, coefficient)` terms. Unknown `u`
    /// is stored in column `cols − 1 − u`.
    pub fn push(&mut self, terms: &[(usize, u64)]) {
        let mut row = vec![0u64; self.cols];
        for &(u, c) in terms {
            let j = self.cols - 1 - u;
            row[j] = add(row[j], c);
        }
        for (&p, prow) in &self.pivots {
            let f = row[p];
            if f != 0 {
                for c in p..self.cols {
                    if prow[c] != 0 {
                        row[c] = add(row[c], neg(mul(f, prow[c])));
                    }
                }
            }
        }
        if let Some(lead) = row.iter().position(|&x| x != 0) {
            let s = inv(row[lead]);
            for x in row.iter_mut() {
                *x = mul(*x, s);
            }
            self.pivots.insert(lead, row);
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lower,
    Upper,
}

fn kinds(v: Valence) -> Vec<Kind> {
    use Kind::*;
    match v {
        Valence::TwoOne => vec![Lower, Lower, Upper],
        Valence::ThreeOne => vec![Lower, Lower, Lower, Upper],
        Valence::FourZero => vec![Lower; 4],
        Valence::InnerTorsionMap => vec![Lower, Upper, Lower],
    }
}

fn flat(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |a, &i| a * n + i)
}

fn multi_indices(n: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..order {
        out = out.into_iter().flat_map(|p| (0..n).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Bianchi on (3,1) cycles the three inputs; on (4,0) it fixes the first
/// slot and cycles the other three.
fn symmetry_equations(e: &mut Eliminator, n: usize, valence: Valence, constraints: &[Constraint]) {
    let order = kinds(valence).len();
    let one = 1;
    for x in multi_indices(n, order) {
        for c in constraints {
            match c {
                Constraint::SkewArgs12 => {
                    let mut y = x.clone();
                    y.swap(0, 1);
                    e.push(&[(flat(&x, n), one), (flat(&y, n), one)]);
                }
                Constraint::SkewArgs34 => {
                    let mut y = x.clone();
                    y.swap(2, 3);
                    e.push(&[(flat(&x, n), one), (flat(&y, n), one)]);
                }
                Constraint::FirstBianchi => {
                    let cycles: [[usize; 4]; 3] = if valence == Valence::FourZero {
                        [[0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
                    } else {
                        [[0, 1, 2, 3], [1, 2, 0, 3], [2, 0, 1, 3]]
                    };
                    let terms: Vec<(usize, u64)> = cycles
                        .iter()
                        .map(|perm| (flat(&perm.iter().map(|&p| x[p]).collect::<Vec<_>>(), n), one))
                        .collect();
                    e.push(&terms);
                }
            }
        }
    }
}

/// Row `y` of the derivation by `l`: upper slots contribute `l[y_s, k] t[..k..]`,
/// lower slots `−l[k, y_s] t[..k..]`.
fn derivation_row(n: usize, ks: &[Kind], l: &Mat, y: &[usize]) -> Vec<(usize, u64)> {
    let mut terms = Vec::new();
    for (s, kind) in ks.iter().enumerate() {
        for k in 0..n {
            let c = match kind {
                Kind::Upper => l[y[s]][k],
                Kind::Lower => neg(l[k][y[s]]),
            };
            if c != 0 {
                let mut x = y.to_vec();
                x[s] = k;
                terms.push((flat(&x, n), c));
            }
        }
    }
    terms
}

/// Row `y` of `ρ(g) − Id`: `Σ_x Π_s M_s[y_s, x_s] t[x] − t[y]` with
/// `M = g` on upper and `M = g⁻ᵀ` on lower slots.
fn action_row(n: usize, ks: &[Kind], g: &Mat, h: &Mat, y: &[usize]) -> Vec<(usize, u64)> {
    let mut terms = Vec::new();
    for x in multi_indices(n, ks.len()) {
        let mut c = 1;
        for (s, kind) in ks.iter().enumerate() {
            c = mul(
                c,
                match kind {
                    Kind::Upper => g[y[s]][x[s]],
                    Kind::Lower => h[x[s]][y[s]],
                },
            );
            if c == 0 {
                break;
            }
        }
        if c != 0 {
            terms.push((flat(&x, n), c));
        }
    }
    terms.push((flat(y, n), P - 1));
    terms
}

/// Dimension of the invariant subspace of `spec` for the group, with extra
/// finite constraints appended.
pub fn invariant_dim(group: &GroupSpec, spec: &TensorSpec, extra: &[RatMatrix]) -> usize {
    let n = spec.n();
    let ks = kinds(spec.valence());
    let unknowns = n.pow(ks.len() as u32);
    let mut e = Eliminator::new(unknowns);
    symmetry_equations(&mut e, n, spec.valence(), spec.constraints());
    for l in &group.lie_algebra_basis {
        let l = reduce_matrix(l);
        for y in multi_indices(n, ks.len()) {
            e.push(&derivation_row(n, &ks, &l, &y));
        }
    }
    for g in group.component_reps.iter().chain(extra) {
        let g = reduce_matrix(g);
        let h = inverse(&g);
        for y in multi_indices(n, ks.len()) {
            e.push(&action_row(n, &ks, &g, &h, &y));
        }
    }
    e.nullity()
}

/// Quotient dimension for inner torsion maps `λ[i, r, c]`. Membership of each
/// condition in `⊕ eᵢ ⊗ 𝔤` is expressed with auxiliary unknowns `μ`; the
/// lifts `λ(eᵢ) ∈ 𝔤` always solve the system and are subtracted at the end.
pub fn inner_torsion_quotient_dim(group: &GroupSpec, extra: &[RatMatrix]) -> usize {
    let n = group.n;
    let basis: Vec<Mat> = group.lie_algebra_basis.iter().map(reduce_matrix).collect();
    let d = basis.len();
    let conditions = d + group.component_reps.len() + extra.len();
    let lam = n * n * n;
    let unknowns = lam + conditions * n * d;
    let mu = |cond: usize, i: usize, m: usize| lam + (cond * n + i) * d + m;
    let mut e = Eliminator::new(unknowns);
    let ks = kinds(Valence::InnerTorsionMap);
    for (cond, l) in basis.iter().enumerate() {
        for y in multi_indices(n, 3) {
            let mut terms = derivation_row(n, &ks, l, &y);
            for (m, b) in basis.iter().enumerate() {
                if b[y[1]][y[2]] != 0 {
                    terms.push((mu(cond, y[0], m), neg(b[y[1]][y[2]])));
                }
            }
            e.push(&terms);
        }
    }
    for (k, g) in group.component_reps.iter().chain(extra).enumerate() {
        let cond = d + k;
        let g = reduce_matrix(g);
        let h = inverse(&g);
        for y in multi_indices(n, 3) {
            let (i, r, c) = (y[0], y[1], y[2]);
            let mut terms = Vec::new();
            // (g λ(e_i) g⁻¹)[r, c]
            for a in 0..n {
                for b in 0..n {
                    let coef = mul(g[r][a], h[b][c]);
                    if coef != 0 {
                        terms.push((flat(&[i, a, b], n), coef));
                    }
                }
            }
            // − λ(g e_i)[r, c]
            for j in 0..n {
                if g[j][i] != 0 {
                    terms.push((flat(&[j, r, c], n), neg(g[j][i])));
                }
            }
            for (m, b) in basis.iter().enumerate() {
                if b[r][c] != 0 {
                    terms.push((mu(cond, i, m), neg(b[r][c])));
                }
            }
            e.push(&terms);
        }
    }
    e.nullity() - n * d
}
