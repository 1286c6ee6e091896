use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::qpoly::{q, QPoly, Q};

/// Polynomial in `(u, v)` over the rationals, keyed by exponent pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BiQ(BTreeMap<(u32, u32), Q>);

impl BiQ {
    pub fn constant(c: Q) -> Self {
        BiQ::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((i, j), c);
        }
        BiQ(m)
    }

    pub fn add(&self, other: &BiQ) -> BiQ {
        let mut out = self.0.clone();
        for (k, c) in &other.0 {
            let e = out.entry(*k).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.remove(k);
            }
        }
        BiQ(out)
    }

    pub fn scale(&self, s: &Q) -> BiQ {
        if s.is_zero() {
            return BiQ::default();
        }
        BiQ(self.0.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    pub fn sub(&self, other: &BiQ) -> BiQ {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &BiQ) -> BiQ {
        let mut out: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for ((i, j), a) in &self.0 {
            for ((k, l), b) in &other.0 {
                *out.entry((i + k, j + l)).or_insert_with(Q::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        BiQ(out)
    }

    pub fn degree_u(&self) -> usize {
        self.0.keys().map(|k| k.0 as usize).max().unwrap_or(0)
    }

    pub fn degree_v(&self) -> usize {
        self.0.keys().map(|k| k.1 as usize).max().unwrap_or(0)
    }

    /// Coefficients in `v` (ascending, length `degree_v + 1`) at `u = x`.
    pub fn in_v_at(&self, x: &Q) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.degree_v() + 1];
        for ((i, j), c) in &self.0 {
            out[*j as usize] += c * num_traits::pow(x.clone(), *i as usize);
        }
        out
    }

    /// The part free of `v`, as a polynomial in `u`.
    pub fn v_coefficient(&self, j: u32) -> QPoly {
        let mut out = vec![Q::zero(); self.degree_u() + 1];
        for ((i, jj), c) in &self.0 {
            if *jj == j {
                out[*i as usize] += c;
            }
        }
        QPoly::new(out)
    }

    /// Complex coefficients in `v` at a complex `u`.
    pub fn in_v_at_complex(&self, u: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.degree_v() + 1];
        for ((i, j), c) in &self.0 {
            out[*j as usize] += u.powu(*i) * c.to_f64().unwrap_or(f64::NAN);
        }
        out
    }
}

/// Binary form of degree `len - 1` in `(x, y)` with coefficients in
/// `Q[u, v]`; entry `k` multiplies `x^(d-k) y^k`.
#[derive(Debug, Clone)]
pub struct BinaryForm(pub Vec<BiQ>);

impl BinaryForm {
    pub fn one() -> Self {
        BinaryForm(vec![BiQ::constant(q(1))])
    }

    pub fn linear(a: BiQ, b: BiQ) -> Self {
        BinaryForm(vec![a, b])
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![BiQ::default(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BinaryForm(out)
    }

    pub fn pow(&self, n: u32) -> BinaryForm {
        (0..n).fold(BinaryForm::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &Q) -> BinaryForm {
        BinaryForm(self.0.iter().map(|c| c.scale(s)).collect())
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.0.len(), other.0.len(), "forms of different degree");
        BinaryForm(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_linear_form() {
        // (x + u y)^2 = x^2 + 2u xy + u^2 y^2
        let l = BinaryForm::linear(BiQ::constant(q(1)), BiQ::monomial(q(1), 1, 0));
        let s = l.pow(2);
        assert_eq!(s.0[1], BiQ::monomial(q(2), 1, 0));
        assert_eq!(s.0[2], BiQ::monomial(q(1), 2, 0));
    }

    #[test]
    fn coefficients_in_v() {
        // 3 + u v^2
        let p = BiQ::constant(q(3)).add(&BiQ::monomial(q(1), 1, 2));
        assert_eq!(p.in_v_at(&q(2)), vec![q(3), q(0), q(2)]);
        assert_eq!(p.v_coefficient(2), QPoly::new(vec![q(0), q(1)]));
    }
}
