use serde::{Deserialize, Serialize};

use crate::grp::Mat3;
use crate::polynum::C64;
use crate::projgeom::{monomial_index, Form, GeomError, TernaryQuartic};

/// A quartic whose coefficients are affine in a list of parameters:
/// `constant + Σ p_k · linear[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametricQuartic {
    pub param_names: Vec<String>,
    constant: Vec<C64>,
    linear: Vec<Vec<C64>>,
}

fn zero15() -> Vec<C64> {
    vec![C64::new(0.0, 0.0); 15]
}

impl ParametricQuartic {
    pub fn new(param_names: &[&str]) -> Self {
        ParametricQuartic {
            param_names: param_names.iter().map(|s| s.to_string()).collect(),
            constant: zero15(),
            linear: vec![zero15(); param_names.len()],
        }
    }

    /// Adds `coef · x^e` to the constant part, or to the part multiplying
    /// parameter `param`.
    pub fn term(mut self, coef: C64, e: [u32; 3], param: Option<usize>) -> Self {
        let k = monomial_index(e);
        match param {
            None => self.constant[k] += coef,
            Some(p) => self.linear[p][k] += coef,
        }
        self
    }

    pub fn real(self, coef: f64, e: [u32; 3], param: Option<usize>) -> Self {
        self.term(C64::new(coef, 0.0), e, param)
    }

    pub fn arity(&self) -> usize {
        self.linear.len()
    }

    pub fn constant_part(&self) -> &[C64] {
        &self.constant
    }

    pub fn linear_part(&self, k: usize) -> &[C64] {
        &self.linear[k]
    }

    /// Raw coefficients at `params`, not rescaled.
    pub fn coefficients(&self, params: &[C64]) -> [C64; 15] {
        assert_eq!(params.len(), self.arity(), "parameter count");
        let mut c = [C64::new(0.0, 0.0); 15];
        for m in 0..15 {
            c[m] = self.constant[m]
                + params
                    .iter()
                    .zip(&self.linear)
                    .map(|(p, l)| p * l[m])
                    .sum::<C64>();
        }
        c
    }

    pub fn eval(&self, params: &[C64]) -> Result<TernaryQuartic, GeomError> {
        TernaryQuartic::new(self.coefficients(params))
    }

    fn map_parts(&self, f: impl Fn(&[C64]) -> Vec<C64>) -> Self {
        ParametricQuartic {
            param_names: self.param_names.clone(),
            constant: f(&self.constant),
            linear: self.linear.iter().map(|l| f(l)).collect(),
        }
    }

    /// The family `f(m·x)`.
    pub fn substituted(&self, m: &Mat3) -> Self {
        self.map_parts(|c| {
            Form {
                degree: 4,
                c: c.to_vec(),
            }
            .substitute(m)
            .c
        })
    }

    /// Restriction to the affine subspace `params = offset + Σ t_j basis[j]`,
    /// as a family in the `t_j`.
    pub fn restricted(&self, offset: &[C64], basis: &[Vec<C64>]) -> Self {
        let constant = self.coefficients(offset).to_vec();
        let linear = basis
            .iter()
            .map(|b| {
                (0..15)
                    .map(|m| b.iter().zip(&self.linear).map(|(x, l)| x * l[m]).sum())
                    .collect()
            })
            .collect();
        let param_names = (0..basis.len()).map(|j| format!("t{j}")).collect();
        ParametricQuartic {
            param_names,
            constant,
            linear,
        }
    }

    /// True when no coefficient depends on a parameter.
    pub fn is_constant(&self) -> bool {
        self.linear
            .iter()
            .all(|l| l.iter().all(|z| *z == C64::new(0.0, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_substitution() {
        let f = ParametricQuartic::new(&["a"])
            .real(1.0, [4, 0, 0], None)
            .real(1.0, [0, 4, 0], None)
            .real(1.0, [0, 0, 4], None)
            .real(1.0, [2, 2, 0], Some(0));
        let raw = f.coefficients(&[C64::new(-4.0, 0.0)]);
        assert_eq!(raw[monomial_index([2, 2, 0])], C64::new(-4.0, 0.0));
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let r = C64::new(8f64.powf(0.25), 0.0);
        let g = [[one, one, z], [one, -one, z], [z, z, r]];
        let s = f.substituted(&g);
        // (a+2)x^4 + (a+2)y^4 + 8z^4 + (12-2a)x^2y^2
        let c = s.coefficients(&[C64::new(6.0, 0.0)]);
        assert!((c[monomial_index([4, 0, 0])] - 8.0).norm() < 1e-12);
        assert!((c[monomial_index([0, 0, 4])] - 8.0).norm() < 1e-12);
        assert!(c[monomial_index([2, 2, 0])].norm() < 1e-12);
        assert!(c[monomial_index([3, 1, 0])].norm() < 1e-12);
    }

    #[test]
    fn restriction_to_a_line_of_parameters() {
        let f = ParametricQuartic::new(&["a", "b"])
            .real(1.0, [4, 0, 0], None)
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [0, 2, 2], Some(1));
        let one = C64::new(1.0, 0.0);
        let g = f.restricted(&[one, C64::new(0.0, 0.0)], &[vec![one, one]]);
        let t = C64::new(2.5, 0.0);
        assert_eq!(g.coefficients(&[t]), f.coefficients(&[one + t, t]));
    }
}
