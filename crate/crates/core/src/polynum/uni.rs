use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{check_finite, max_abs, PolyError, C64, DROP_TOL};

/// Univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
///
/// The zero polynomial is stored as a single zero coefficient so that
/// `degree()` is always `len - 1`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<C64>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<C64>) -> Result<Self, PolyError> {
        check_finite(&coeffs)?;
        Ok(Self::from_vec_trimmed(coeffs))
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_vec_trimmed(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        UniPoly {
            coeffs: vec![C64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: C64) -> Self {
        UniPoly { coeffs: vec![c] }
    }

    /// Monic polynomial with the given roots, repeated entries giving
    /// repeated factors.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        UniPoly { coeffs }
    }

    /// Drops leading coefficients whose modulus is below `DROP_TOL` times
    /// the largest coefficient modulus. Exact zeros are always dropped.
    pub(crate) fn from_vec_trimmed(mut coeffs: Vec<C64>) -> Self {
        let scale = max_abs(&coeffs);
        while coeffs.len() > 1 {
            let top = coeffs[coeffs.len() - 1].norm();
            if top == 0.0 || top <= DROP_TOL * scale {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        UniPoly { coeffs }
    }

    /// Keeps every coefficient as given, including zero leading terms.
    pub(crate) fn from_vec_untrimmed(coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == C64::new(0.0, 0.0))
    }

    pub fn leading(&self) -> C64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (i as f64 + 1.0))
            .collect();
        Self::from_vec_trimmed(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_vec_trimmed(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead == C64::new(0.0, 0.0) {
            return self.clone();
        }
        self.scale(lead.inv())
    }

    /// Coefficients in reverse order: `t^deg p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_vec_untrimmed(c)
    }

    /// `p(z)` divided by `max(1, |z|)^deg`, evaluated without overflow.
    pub fn scaled_eval(&self, z: C64) -> C64 {
        if z.norm() <= 1.0 {
            self.eval(z)
        } else {
            let w = z.inv();
            self.coeffs
                .iter()
                .fold(C64::new(0.0, 0.0), |acc, &c| acc * w + c)
        }
    }

    /// Newton correction `p(z)/p'(z)`; for `|z| > 1` it is computed on the
    /// reversed polynomial to stay clear of overflow.
    pub(crate) fn newton_ratio(&self, dp: &UniPoly, z: C64) -> C64 {
        let n = self.degree() as f64;
        if z.norm() <= 1.0 {
            let d = dp.eval(z);
            if d == C64::new(0.0, 0.0) {
                return C64::new(0.0, 0.0);
            }
            return self.eval(z) / d;
        }
        let w = z.inv();
        // p(z) = z^n q(w), p'(z) = z^(n-1) (n q(w) - w q'(w)) with q = reversed p
        let mut q = C64::new(0.0, 0.0);
        let mut dq = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter() {
            dq = dq * w + q;
            q = q * w + c;
        }
        let denom = q * n - w * dq;
        if denom == C64::new(0.0, 0.0) {
            return C64::new(0.0, 0.0);
        }
        z * q / denom
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6e}{:+.6e}i)t^{}", c.re, c.im, i)?;
        }
        write!(f, ")")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_vec_trimmed((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_vec_trimmed((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_vec_untrimmed(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_vec_trimmed(out)
    }
}

/// `c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0`, the restriction of a quartic
/// form to a parametrized line. Degree collapse is kept as is: a zero `c4`
/// stays in place rather than being trimmed away.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryQuartic {
    /// `c[i]` multiplies `t^i`.
    pub c: [C64; 5],
}

impl BinaryQuartic {
    pub fn new(c: [C64; 5]) -> Result<Self, PolyError> {
        check_finite(&c)?;
        if c.iter().all(|x| x.norm() < DROP_TOL) {
            return Err(PolyError::ZeroQuartic);
        }
        Ok(BinaryQuartic { c })
    }

    /// Builds without the non-zero check; the all-zero restriction means the
    /// line is a component of the curve, which callers report themselves.
    pub fn new_unchecked(c: [C64; 5]) -> Self {
        BinaryQuartic { c }
    }

    pub fn scale(&self) -> f64 {
        max_abs(&self.c)
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::from_vec_untrimmed(self.c.to_vec())
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.c
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// Coefficients of `t^4 p(1/t)`.
    pub fn flipped(&self) -> Self {
        let c = self.c;
        BinaryQuartic {
            c: [c[4], c[3], c[2], c[1], c[0]],
        }
    }

    pub fn is_all_finite(&self) -> bool {
        self.c.iter().all(|z| z.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn difference_of_squares() {
        let p = UniPoly::from_real(&[1.0, 1.0]);
        let q = UniPoly::from_real(&[-1.0, 1.0]);
        let r = &p * &q;
        assert_eq!(r.coeffs(), &[c(-1.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn derivative_of_quartic_monomial() {
        let p = UniPoly::from_real(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[c(0.0), c(0.0), c(0.0), c(4.0)]);
    }

    #[test]
    fn rejects_nan() {
        assert_eq!(
            UniPoly::new(vec![c(1.0), C64::new(f64::NAN, 0.0)]),
            Err(PolyError::NonFinite(1))
        );
    }

    #[test]
    fn newton_ratio_agrees_inside_and_outside_unit_disk() {
        let p = UniPoly::from_roots(&[c(0.5), C64::new(2.0, 1.0), c(-3.0)]);
        let dp = p.derivative();
        for z in [C64::new(0.3, 0.2), C64::new(5.0, -4.0), C64::new(-1.5, 0.7)] {
            let direct = p.eval(z) / dp.eval(z);
            let r = p.newton_ratio(&dp, z);
            assert!((direct - r).norm() < 1e-12 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn zero_binary_quartic_is_rejected() {
        assert_eq!(BinaryQuartic::new([c(0.0); 5]), Err(PolyError::ZeroQuartic));
    }
}
