//! Dense homogeneous forms in `x, y, z` of arbitrary degree.

use crate::polynum::C64;

/// Exponent triples of degree `d` in graded-lexicographic order:
/// `x^d, x^(d-1) y, x^(d-1) z, x^(d-2) y^2, ...`.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

pub fn monomial_index(e: [u32; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let before: u32 = (e[0] + 1..=d).map(|i| d - i + 1).sum();
    (before + (d - e[0] - e[1])) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    pub degree: u32,
    pub c: Vec<C64>,
}

impl Form {
    pub fn zero(degree: u32) -> Self {
        Form {
            degree,
            c: vec![C64::new(0.0, 0.0); ((degree + 1) * (degree + 2) / 2) as usize],
        }
    }

    pub fn linear(coeffs: [C64; 3]) -> Self {
        Form {
            degree: 1,
            c: coeffs.to_vec(),
        }
    }

    pub fn one() -> Self {
        Form {
            degree: 0,
            c: vec![C64::new(1.0, 0.0)],
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, &a) in ma.iter().zip(&self.c) {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (eb, &b) in mb.iter().zip(&other.c) {
                out.c[monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]])] += a * b;
            }
        }
        out
    }

    pub fn eval(&self, p: &[C64; 3]) -> C64 {
        monomials(self.degree)
            .iter()
            .zip(&self.c)
            .map(|(e, &c)| c * p[0].powu(e[0]) * p[1].powu(e[1]) * p[2].powu(e[2]))
            .sum()
    }

    pub fn partial(&self, var: usize) -> Form {
        if self.degree == 0 {
            return Form::zero(0);
        }
        let mut out = Form::zero(self.degree - 1);
        for (e, &c) in monomials(self.degree).iter().zip(&self.c) {
            if e[var] == 0 {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            out.c[monomial_index(f)] += c * e[var] as f64;
        }
        out
    }

    /// `f(h x)`, where row `r` of `h` gives the linear form substituted for
    /// the `r`-th variable.
    pub fn substitute(&self, h: &[[C64; 3]; 3]) -> Form {
        let mut powers: Vec<Vec<Form>> = Vec::with_capacity(3);
        for row in h {
            let lin = Form::linear(*row);
            let mut p = vec![Form::one()];
            for k in 1..=self.degree as usize {
                let next = p[k - 1].mul(&lin);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Form::zero(self.degree);
        for (e, &c) in monomials(self.degree).iter().zip(&self.c) {
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            let term = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            for (o, t) in out.c.iter_mut().zip(&term.c) {
                *o += c * t;
            }
        }
        out
    }

    /// Coefficients in `t` of `f(p0 + t p1)`, lowest power first; the
    /// vector always has length `degree + 1`.
    pub fn restrict(&self, p0: &[C64; 3], p1: &[C64; 3]) -> Vec<C64> {
        let d = self.degree as usize;
        let zero = C64::new(0.0, 0.0);
        // powers[r][k] = (p0_r + t p1_r)^k as coefficients in t
        let powers: Vec<Vec<Vec<C64>>> = (0..3)
            .map(|r| {
                let mut p = vec![vec![C64::new(1.0, 0.0)]];
                for k in 1..=d {
                    let prev = &p[k - 1];
                    let mut next = vec![zero; k + 1];
                    for (i, &a) in prev.iter().enumerate() {
                        next[i] += a * p0[r];
                        next[i + 1] += a * p1[r];
                    }
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = vec![zero; d + 1];
        for (e, &c) in monomials(self.degree).iter().zip(&self.c) {
            if c == zero {
                continue;
            }
            let ab = poly_mul(&powers[0][e[0] as usize], &powers[1][e[1] as usize]);
            let abc = poly_mul(&ab, &powers[2][e[2] as usize]);
            for (o, t) in out.iter_mut().zip(&abc) {
                *o += c * t;
            }
        }
        out
    }
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_and_index_agree() {
        for d in 0..6 {
            for (k, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), k);
            }
        }
        assert_eq!(monomials(4)[1], [3, 1, 0]);
        assert_eq!(monomials(4)[2], [3, 0, 1]);
        assert_eq!(monomials(4)[14], [0, 0, 4]);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let mut f = Form::zero(4);
        for (k, c) in f.c.iter_mut().enumerate() {
            *c = C64::new(k as f64 - 7.0, 0.5 * k as f64);
        }
        let h = [
            [C64::new(1.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, -1.0)],
            [C64::new(0.5, 0.0), C64::new(-1.0, 0.0), C64::new(3.0, 0.0)],
            [C64::new(0.0, 1.0), C64::new(1.0, 0.0), C64::new(1.0, 1.0)],
        ];
        let g = f.substitute(&h);
        let p = [C64::new(0.3, 0.1), C64::new(-1.2, 0.0), C64::new(0.7, -0.4)];
        let hp: Vec<C64> = h
            .iter()
            .map(|row| row.iter().zip(&p).map(|(a, b)| a * b).sum())
            .collect();
        let direct = f.eval(&[hp[0], hp[1], hp[2]]);
        assert!((g.eval(&p) - direct).norm() < 1e-10 * direct.norm().max(1.0));
    }
}
