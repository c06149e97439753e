//! Closed-form tensors the classification results are expressed in.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::tensor::{flat_index, TensorElement, TensorSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    /// `K(u₁,u₂,u₃,u₄) = ⟨u₂,u₃⟩⟨u₁,u₄⟩ − ⟨u₁,u₃⟩⟨u₂,u₄⟩` on ℝⁿ, valence (4,0).
    K { n: usize },
    /// `K₀(u,v,w) = ⟨v,w⟩u − ⟨u,w⟩v`, valence (3,1).
    K0 { n: usize },
    /// Vector product on ℝ³, valence (2,1).
    Cross { n: usize },
    /// Constant holomorphic curvature tensor on ℂⁿ ≅ ℝ²ⁿ, valence (4,0).
    BoldK { complex_dim: usize },
    /// `K` on the first factor of ℝⁿ¹ ⊕ ℝⁿ², zero off it.
    K1 { n1: usize, n2: usize },
    /// `K` on the second factor of ℝⁿ¹ ⊕ ℝⁿ², zero off it.
    K2 { n1: usize, n2: usize },
}

impl Named {
    pub fn name(&self) -> &'static str {
        match self {
            Named::K { .. } => "K",
            Named::K0 { .. } => "K0",
            Named::Cross { .. } => "cross",
            Named::BoldK { .. } => "boldK",
            Named::K1 { .. } => "K1",
            Named::K2 { .. } => "K2",
        }
    }

    /// Builds from a name and the parameters it needs: `n` for K/K0/cross,
    /// complex dimension `n` for boldK, `(n1, n2)` for K1/K2.
    pub fn parse(name: &str, n: Option<usize>, n1: Option<usize>, n2: Option<usize>) -> Result<Self> {
        let need = |p: Option<usize>, what: &str| {
            p.ok_or_else(|| Error::InvalidParams(alloc::format!("{name} needs parameter {what}")))
        };
        match name {
            "K" => Ok(Named::K { n: need(n, "n")? }),
            "K0" => Ok(Named::K0 { n: need(n, "n")? }),
            "cross" => Ok(Named::Cross { n: need(n, "n")? }),
            "boldK" => Ok(Named::BoldK { complex_dim: need(n, "n")? }),
            "K1" => Ok(Named::K1 { n1: need(n1, "n1")?, n2: need(n2, "n2")? }),
            "K2" => Ok(Named::K2 { n1: need(n1, "n1")?, n2: need(n2, "n2")? }),
            other => Err(Error::InvalidParams(alloc::format!("unknown named tensor `{other}`"))),
        }
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParams(alloc::format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn delta(i: usize, j: usize) -> i64 {
    i64::from(i == j)
}

fn tabulate4(n: usize, f: impl Fn(usize, usize, usize, usize) -> Rational) -> Vec<Rational> {
    let mut out = rational::zeros(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    out[flat_index(&[a, b, c, d], n).expect("in range")] = f(a, b, c, d);
                }
            }
        }
    }
    out
}

/// `P_ac·P_bd`-style K restricted to the coordinates in `range`.
fn block_k(n: usize, range: core::ops::Range<usize>) -> Vec<Rational> {
    let p = |i: usize, j: usize| i64::from(i == j && range.contains(&i));
    tabulate4(n, |a, b, c, d| rational::int(p(b, c) * p(a, d) - p(a, c) * p(b, d)))
}

/// Entry `(a, c)` of the complex structure `J = [[0, −I], [I, 0]]`, i.e. `⟨e_a, J e_c⟩`.
pub fn complex_structure_entry(complex_dim: usize, a: usize, c: usize) -> i64 {
    let m = complex_dim;
    if a < m && c == a + m {
        -1
    } else if a >= m && c + m == a {
        1
    } else {
        0
    }
}

pub fn named_tensor(named: &Named) -> Result<TensorElement> {
    match *named {
        Named::K { n } => {
            positive(n, "n")?;
            TensorElement::new(TensorSpec::algebraic_curvature(n), block_k(n, 0..n))
        }
        Named::K0 { n } => {
            positive(n, "n")?;
            // ⟨K₀(e_a,e_b)e_c, e_k⟩ has the same table as K.
            TensorElement::new(TensorSpec::metric_curvature(n), block_k(n, 0..n))
        }
        Named::Cross { n } => {
            if n != 3 {
                return Err(Error::InvalidParams("cross product needs n = 3".to_string()));
            }
            let mut coords = rational::zeros(27);
            for (a, b, k, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)]
            {
                coords[flat_index(&[a, b, k], 3)?] = rational::int(s);
            }
            TensorElement::new(TensorSpec::torsion(3), coords)
        }
        Named::BoldK { complex_dim } => {
            positive(complex_dim, "complex dimension")?;
            let n = 2 * complex_dim;
            let j = |a: usize, c: usize| complex_structure_entry(complex_dim, a, c);
            let coords = tabulate4(n, |a, b, c, d| {
                let four = delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c) + j(a, c) * j(b, d)
                    - j(a, d) * j(b, c)
                    + 2 * j(a, b) * j(c, d);
                rational::frac(four, 4)
            });
            TensorElement::new(TensorSpec::algebraic_curvature(n), coords)
        }
        Named::K1 { n1, n2 } | Named::K2 { n1, n2 } => {
            positive(n1, "n1")?;
            positive(n2, "n2")?;
            let n = n1 + n2;
            let range = if matches!(named, Named::K1 { .. }) { 0..n1 } else { n1..n };
            TensorElement::new(TensorSpec::algebraic_curvature(n), block_k(n, range))
        }
    }
}

pub fn describe(named: &Named) -> String {
    match *named {
        Named::K { n } | Named::K0 { n } | Named::Cross { n } => alloc::format!("{}{{n={n}}}", named.name()),
        Named::BoldK { complex_dim } => alloc::format!("boldK{{n={complex_dim}}}"),
        Named::K1 { n1, n2 } | Named::K2 { n1, n2 } => alloc::format!("{}{{n1={n1},n2={n2}}}", named.name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::tensor::{evaluate, Evaluation};

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = rational::zeros(n);
        v[i] = int(1);
        v
    }

    #[test]
    fn k0_values() {
        let k0 = named_tensor(&Named::K0 { n: 3 }).unwrap();
        let (e1, e2) = (e(3, 0), e(3, 1));
        assert_eq!(evaluate(&k0, &[&e1, &e2, &e2]).unwrap(), Evaluation::Vector(e1.clone()));
        let minus_e2: Vec<Rational> = e2.iter().map(|x| -x).collect();
        assert_eq!(evaluate(&k0, &[&e1, &e2, &e1]).unwrap(), Evaluation::Vector(minus_e2));
    }

    #[test]
    fn cross_values() {
        let c = named_tensor(&Named::Cross { n: 3 }).unwrap();
        let (e1, e2, e3) = (e(3, 0), e(3, 1), e(3, 2));
        assert_eq!(evaluate(&c, &[&e1, &e2]).unwrap(), Evaluation::Vector(e3.clone()));
        let minus: Vec<Rational> = e3.iter().map(|x| -x).collect();
        assert_eq!(evaluate(&c, &[&e2, &e1]).unwrap(), Evaluation::Vector(minus));
        assert!(named_tensor(&Named::Cross { n: 4 }).is_err());
    }

    #[test]
    fn bold_k_holomorphic_section() {
        for m in 1..=3 {
            let k = named_tensor(&Named::BoldK { complex_dim: m }).unwrap();
            let e1 = e(2 * m, 0);
            let ie1 = e(2 * m, m);
            assert_eq!(evaluate(&k, &[&e1, &ie1, &e1, &ie1]).unwrap(), Evaluation::Scalar(int(1)));
        }
    }

    #[test]
    fn block_versions_vanish_off_factor() {
        let k1 = named_tensor(&Named::K1 { n1: 2, n2: 2 }).unwrap();
        let k2 = named_tensor(&Named::K2 { n1: 2, n2: 2 }).unwrap();
        let (a, b, c) = (e(4, 0), e(4, 1), e(4, 2));
        assert_eq!(evaluate(&k1, &[&a, &b, &b, &a]).unwrap(), Evaluation::Scalar(int(1)));
        assert_eq!(evaluate(&k1, &[&a, &c, &c, &a]).unwrap(), Evaluation::Scalar(int(0)));
        assert_eq!(evaluate(&k2, &[&a, &b, &b, &a]).unwrap(), Evaluation::Scalar(int(0)));
        let k = named_tensor(&Named::K { n: 4 }).unwrap();
        assert_eq!(evaluate(&k, &[&a, &c, &c, &a]).unwrap(), Evaluation::Scalar(int(1)));
    }

    #[test]
    fn parse_names() {
        assert_eq!(Named::parse("K1", None, Some(2), Some(3)).unwrap(), Named::K1 { n1: 2, n2: 3 });
        assert!(Named::parse("K1", Some(2), None, None).is_err());
        assert!(Named::parse("Q", Some(2), None, None).is_err());
    }
}
