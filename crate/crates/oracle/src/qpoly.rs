use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Univariate polynomial over the rationals, coefficients in ascending
/// order with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly(Vec<Q>);

impl QPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn sub(&self, other: &QPoly) -> Self {
        let n = self.0.len().max(other.0.len());
        let at = |p: &QPoly, k: usize| p.0.get(k).cloned().unwrap_or_else(Q::zero);
        QPoly::new((0..n).map(|k| at(self, k) - at(other, k)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (QPoly::zero(), self.clone());
        };
        let mut quot = vec![Q::zero(); n - dd + 1];
        let inv = d.lead().recip();
        for k in (0..=n - dd).rev() {
            let f = &r[k + dd] * &inv;
            if !f.is_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    r[k + j] -= &f * c;
                }
            }
            quot[k] = f;
        }
        r.truncate(dd);
        (QPoly::new(quot), QPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn square_free_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Divides out every root shared with `other`.
    pub fn without_roots_of(&self, other: &QPoly) -> QPoly {
        let mut p = self.clone();
        loop {
            let g = p.gcd(other);
            if g.degree().unwrap_or(0) == 0 {
                return p;
            }
            p = p.div_rem(&g).0;
        }
    }

    /// Newton-form interpolation through `(x_k, y_k)`.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> QPoly {
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
            }
        }
        let mut p = QPoly::new(vec![dd[n - 1].clone()]);
        for k in (0..n - 1).rev() {
            p = p
                .mul(&QPoly::new(vec![-xs[k].clone(), Q::one()]))
                .sub(&QPoly::new(vec![-dd[k].clone()]));
        }
        p
    }
}

/// Determinant by elimination with rational pivots.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        let pivot = m[col][col].clone();
        d *= &pivot;
        let (top, below) = m.split_at_mut(col + 1);
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, y) in row[col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Sylvester matrix of two polynomials given with their formal degrees
/// (ascending coefficients, possibly with zero leading terms).
pub fn sylvester(a: &[Q], b: &[Q]) -> Vec<Vec<Q>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Q::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Q::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}
