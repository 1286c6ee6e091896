use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{check_finite, PolyError, UniPoly, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }
}

/// Dense bivariate polynomial; `c[i][j]` is the coefficient of `u^i v^j`.
///
/// Rows all have the same length. All-zero top rows and columns are trimmed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiPoly {
    c: Vec<Vec<C64>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            c: vec![vec![C64::new(0.0, 0.0)]],
        }
    }

    pub fn constant(value: C64) -> Self {
        BiPoly {
            c: vec![vec![value]],
        }
    }

    /// `coef * u^i * v^j`
    pub fn monomial(coef: C64, i: usize, j: usize) -> Self {
        let mut c = vec![vec![C64::new(0.0, 0.0); j + 1]; i + 1];
        c[i][j] = coef;
        Self::from_grid_trimmed(c)
    }

    /// Builds from `(coef, u_exp, v_exp)` triples; repeated exponents add up.
    pub fn from_terms(terms: &[(C64, usize, usize)]) -> Result<Self, PolyError> {
        let coefs: Vec<C64> = terms.iter().map(|t| t.0).collect();
        check_finite(&coefs)?;
        let du = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let dv = terms.iter().map(|t| t.2).max().unwrap_or(0);
        let mut c = vec![vec![C64::new(0.0, 0.0); dv + 1]; du + 1];
        for &(coef, i, j) in terms {
            c[i][j] += coef;
        }
        Ok(Self::from_grid_trimmed(c))
    }

    pub fn from_grid(grid: Vec<Vec<C64>>) -> Result<Self, PolyError> {
        for row in &grid {
            check_finite(row)?;
        }
        Ok(Self::from_grid_trimmed(grid))
    }

    fn from_grid_trimmed(mut c: Vec<Vec<C64>>) -> Self {
        let zero = C64::new(0.0, 0.0);
        let width = c.iter().map(|r| r.len()).max().unwrap_or(1).max(1);
        for row in c.iter_mut() {
            row.resize(width, zero);
        }
        while c.len() > 1 && c.last().is_some_and(|r| r.iter().all(|x| *x == zero)) {
            c.pop();
        }
        let mut w = width;
        while w > 1 && c.iter().all(|r| r[w - 1] == zero) {
            w -= 1;
        }
        for row in c.iter_mut() {
            row.truncate(w);
        }
        if c.is_empty() {
            return Self::zero();
        }
        BiPoly { c }
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        self.c
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or_default()
    }

    pub fn grid(&self) -> &[Vec<C64>] {
        &self.c
    }

    pub fn degree_in(&self, var: Var) -> usize {
        match var {
            Var::U => self.c.len() - 1,
            Var::V => self.c[0].len() - 1,
        }
    }

    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != C64::new(0.0, 0.0) {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.c
            .iter()
            .all(|r| r.iter().all(|x| *x == C64::new(0.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, u: C64, v: C64) -> C64 {
        self.c.iter().rev().fold(C64::new(0.0, 0.0), |acc, row| {
            acc * u + row.iter().rev().fold(C64::new(0.0, 0.0), |a, &x| a * v + x)
        })
    }

    /// Substitutes `value` for `var`, leaving a polynomial in the other
    /// variable.
    pub fn partial_eval(&self, var: Var, value: C64) -> UniPoly {
        let parts = self.coefficients_in(var.other());
        UniPoly::from_vec_trimmed(parts.iter().map(|p| p.eval(value)).collect())
    }

    /// Views the polynomial as univariate in `var`: entry `k` is the
    /// coefficient of `var^k`, a polynomial in the other variable.
    pub fn coefficients_in(&self, var: Var) -> Vec<UniPoly> {
        match var {
            Var::U => self
                .c
                .iter()
                .map(|row| UniPoly::from_vec_trimmed(row.clone()))
                .collect(),
            Var::V => {
                let w = self.c[0].len();
                (0..w)
                    .map(|j| UniPoly::from_vec_trimmed(self.c.iter().map(|r| r[j]).collect()))
                    .collect()
            }
        }
    }

    pub fn derivative(&self, var: Var) -> Self {
        let zero = C64::new(0.0, 0.0);
        match var {
            Var::U => {
                if self.c.len() == 1 {
                    return Self::zero();
                }
                let c = self.c[1..]
                    .iter()
                    .enumerate()
                    .map(|(i, row)| row.iter().map(|&x| x * (i as f64 + 1.0)).collect())
                    .collect();
                Self::from_grid_trimmed(c)
            }
            Var::V => {
                let c = self
                    .c
                    .iter()
                    .map(|row| {
                        if row.len() == 1 {
                            vec![zero]
                        } else {
                            row[1..]
                                .iter()
                                .enumerate()
                                .map(|(j, &x)| x * (j as f64 + 1.0))
                                .collect()
                        }
                    })
                    .collect();
                Self::from_grid_trimmed(c)
            }
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_grid_trimmed(
            self.c
                .iter()
                .map(|r| r.iter().map(|&x| x * s).collect())
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(C64::new(1.0, 0.0)), |acc, _| &acc * self)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let du = self.c.len().max(rhs.c.len());
        let dv = self.c[0].len().max(rhs.c[0].len());
        let c = (0..du)
            .map(|i| {
                (0..dv)
                    .map(|j| self.coeff(i, j) + rhs.coeff(i, j))
                    .collect()
            })
            .collect();
        BiPoly::from_grid_trimmed(c)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let du = self.c.len().max(rhs.c.len());
        let dv = self.c[0].len().max(rhs.c[0].len());
        let c = (0..du)
            .map(|i| {
                (0..dv)
                    .map(|j| self.coeff(i, j) - rhs.coeff(i, j))
                    .collect()
            })
            .collect();
        BiPoly::from_grid_trimmed(c)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let du = self.c.len() + rhs.c.len() - 1;
        let dv = self.c[0].len() + rhs.c[0].len() - 1;
        let mut c = vec![vec![C64::new(0.0, 0.0); dv]; du];
        for (i1, r1) in self.c.iter().enumerate() {
            for (j1, &a) in r1.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (i2, r2) in rhs.c.iter().enumerate() {
                    for (j2, &b) in r2.iter().enumerate() {
                        c[i1 + i2][j1 + j2] += a * b;
                    }
                }
            }
        }
        BiPoly::from_grid_trimmed(c)
    }
}
