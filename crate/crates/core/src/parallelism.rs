//! Parallelisms: a Lie algebra of frame fields `[X_i, X_j] = λ_ij^k X_k`
//! with constant Christoffel symbols `∇_{X_i} X_j = Γ_ij^k X_k`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::tensor::{flat_index, Constraint, TensorElement, TensorSpec, Valence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelismData {
    n: usize,
    /// `λ[i, j, k] = λ_ij^k`, flat with the (2,1) convention.
    lambda: Vec<Rational>,
    /// `Γ[i, j, k] = Γ_ij^k`.
    gamma: Vec<Rational>,
}

fn at(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

impl ParallelismData {
    pub fn new(n: usize, lambda: Vec<Rational>, gamma: Vec<Rational>) -> Result<Self> {
        for v in [&lambda, &gamma] {
            if v.len() != n * n * n {
                return Err(Error::DimensionMismatch { expected: n * n * n, found: v.len() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if lambda[at(n, i, j, k)] != -lambda[at(n, j, i, k)].clone() {
                        return Err(Error::NotSkew);
                    }
                }
            }
        }
        Ok(Self { n, lambda, gamma })
    }

    /// Builds from sparse `(i, j, k) ↦ value` entries. Each `λ_ij^k` also
    /// sets `λ_ji^k = −λ_ij^k`; contradictory or diagonal entries fail.
    pub fn from_entries(n: usize, lambda: &[([usize; 3], Rational)], gamma: &[([usize; 3], Rational)]) -> Result<Self> {
        let mut l: Vec<Option<Rational>> = alloc::vec![None; n * n * n];
        for ([i, j, k], v) in lambda {
            flat_index(&[*i, *j, *k], n)?;
            if i == j && !v.is_zero() {
                return Err(Error::NotSkew);
            }
            for (idx, val) in [(at(n, *i, *j, *k), v.clone()), (at(n, *j, *i, *k), -v.clone())] {
                match &l[idx] {
                    Some(old) if *old != val => return Err(Error::NotSkew),
                    _ => l[idx] = Some(val),
                }
            }
        }
        let lambda = l.into_iter().map(|x| x.unwrap_or_else(rational::zero)).collect();
        let mut g = rational::zeros(n * n * n);
        for ([i, j, k], v) in gamma {
            g[flat_index(&[*i, *j, *k], n)?] = v.clone();
        }
        Self::new(n, lambda, g)
    }

    /// Γ(X)Y = ½[X, Y], the torsion-free choice built from the bracket.
    pub fn with_half_adjoint(n: usize, lambda: Vec<Rational>) -> Result<Self> {
        let half = rational::frac(1, 2);
        let gamma = lambda.iter().map(|x| x * &half).collect();
        Self::new(n, lambda, gamma)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    fn lam(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.lambda[at(self.n, i, j, k)]
    }

    /// The cyclic sum `Σ_m λ_ij^m λ_mk^l + λ_jk^m λ_mi^l + λ_ki^m λ_mj^l` as a
    /// flat `[i, j, k, l]` vector.
    pub fn jacobiator(&self) -> Vec<Rational> {
        let n = self.n;
        let mut out = rational::zeros(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s += self.lam(i, j, m) * self.lam(m, k, l)
                                + self.lam(j, k, m) * self.lam(m, i, l)
                                + self.lam(k, i, m) * self.lam(m, j, l);
                        }
                        out[((i * n + j) * n + k) * n + l] = s;
                    }
                }
            }
        }
        out
    }

    pub fn jacobi_check(&self) -> bool {
        self.jacobiator().iter().all(Zero::is_zero)
    }

    fn require_jacobi(&self) -> Result<()> {
        if self.jacobi_check() {
            Ok(())
        } else {
            Err(Error::JacobiFailure)
        }
    }

    /// `T_ij^k = Γ_ij^k − Γ_ji^k − λ_ij^k`.
    pub fn torsion_constants(&self) -> Result<TensorElement> {
        self.require_jacobi()?;
        let n = self.n;
        let mut t = rational::zeros(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t[at(n, i, j, k)] = &self.gamma[at(n, i, j, k)] - &self.gamma[at(n, j, i, k)] - self.lam(i, j, k);
                }
            }
        }
        TensorElement::new(TensorSpec::torsion(n), t)
    }

    /// Matrix of `∇_{X_i}`: entry `(k, j)` is `Γ_ij^k`.
    fn christoffel_matrix(&self, i: usize) -> Vec<Rational> {
        let n = self.n;
        let mut m = rational::zeros(n * n);
        for j in 0..n {
            for k in 0..n {
                m[k * n + j] = self.gamma[at(n, i, j, k)].clone();
            }
        }
        m
    }

    /// `R(e_i, e_j) = Γ_iΓ_j − Γ_jΓ_i − Σ_k λ_ij^k Γ_k`, as a (3,1) tensor
    /// skew in its first two arguments.
    pub fn curvature_constants(&self) -> Result<TensorElement> {
        self.require_jacobi()?;
        let n = self.n;
        let mats: Vec<Vec<Rational>> = (0..n).map(|i| self.christoffel_matrix(i)).collect();
        let mul = |a: &[Rational], b: &[Rational]| {
            let mut out = rational::zeros(n * n);
            for r in 0..n {
                for c in 0..n {
                    let mut s = Rational::zero();
                    for m in 0..n {
                        s += &a[r * n + m] * &b[m * n + c];
                    }
                    out[r * n + c] = s;
                }
            }
            out
        };
        let mut coords = rational::zeros(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                let ab = mul(&mats[i], &mats[j]);
                let ba = mul(&mats[j], &mats[i]);
                for row in 0..n {
                    for col in 0..n {
                        let mut v = &ab[row * n + col] - &ba[row * n + col];
                        for (k, mk) in mats.iter().enumerate() {
                            v -= self.lam(i, j, k) * &mk[row * n + col];
                        }
                        // [i, j, c, k]: component k of R(e_i, e_j) e_c.
                        coords[((i * n + j) * n + col) * n + row] = v;
                    }
                }
            }
        }
        TensorElement::new(TensorSpec::new(n, Valence::ThreeOne, &[Constraint::SkewArgs12])?, coords)
    }
}

/// Structure constants of so(3): `[e₁, e₂] = e₃` and cyclic.
pub fn so3_structure_constants() -> Vec<Rational> {
    let mut l = rational::zeros(27);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        l[at(3, i, j, k)] = rational::int(1);
        l[at(3, j, i, k)] = rational::int(-1);
    }
    l
}

/// Matrix of `ad(e_i)` (row-major), entry `(k, j)` is `λ_ij^k`.
pub fn adjoint_matrix(n: usize, lambda: &[Rational], i: usize) -> Vec<Rational> {
    let mut m = rational::zeros(n * n);
    for j in 0..n {
        for k in 0..n {
            m[k * n + j] = lambda[at(n, i, j, k)].clone();
        }
    }
    m
}
