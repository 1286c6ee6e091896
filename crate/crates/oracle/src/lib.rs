//! Exact-arithmetic bitangents of a plane quartic with rational
//! coefficients, kept free of the main solver's code.
//!
//! In an integer change of coordinates, a line `z = u x + v y` is a
//! bitangent when the restricted binary quartic `c0 x^4 + ... + c4 y^4` is
//! `c0` times a square. With `c0 ≠ 0` that means
//!
//! ```text
//! 8 c0^2 c3 - 4 c0 c1 c2 + c1^3 = 0
//! 64 c0^3 c4 - (4 c0 c2 - c1^2)^2 = 0
//! ```
//!
//! The Sylvester resultant in `v` is computed exactly over the rationals
//! by evaluation at integer `u` and interpolation. Its square-free part,
//! cleared of the roots of `c0` and of common leading coefficients, has
//! one root per bitangent. Those roots are isolated by certified
//! inclusion discs, and `v` is recovered from the cubic condition.

mod bivar;
mod isolate;
mod qpoly;

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use bivar::{BiQ, BinaryForm};
pub use isolate::{durand_kerner, isolate, IsolatedRoot};
pub use qpoly::{q, QPoly, Q};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("term x^{0:?} is not of degree four")]
    NotQuartic([u32; 3]),
    #[error("no coordinate frame separated 28 bitangents (eliminant degrees {0:?})")]
    NoGenericFrame(Vec<Option<usize>>),
}

/// Integer coordinate changes tried in order.
const FRAMES: [[[i64; 3]; 3]; 4] = [
    [[1, 2, 3], [-2, 1, 1], [3, -1, 2]],
    [[2, -1, 1], [1, 3, -2], [1, 1, 4]],
    [[3, 1, -2], [1, -2, 1], [2, 1, 3]],
    [[1, -3, 2], [4, 1, -1], [-1, 2, 5]],
];

#[derive(Debug, Clone)]
pub struct OracleSolution {
    /// Dual coordinates scaled so the largest entry is 1.
    pub lines: Vec<[Complex64; 3]>,
    /// Square-free eliminant in `u` after removing spurious factors.
    pub eliminant: QPoly,
    pub frame: [[i64; 3]; 3],
    /// Largest inclusion radius of an eliminant root.
    pub max_radius: f64,
}

/// The 28 bitangents of `Σ coef · x^e`.
pub fn bitangents(terms: &[(Q, [u32; 3])]) -> Result<OracleSolution, OracleError> {
    if let Some((_, e)) = terms.iter().find(|(_, e)| e.iter().sum::<u32>() != 4) {
        return Err(OracleError::NotQuartic(*e));
    }
    let mut degrees = Vec::new();
    for frame in FRAMES {
        match in_frame(terms, frame) {
            Ok(s) => return Ok(s),
            Err(d) => degrees.push(d),
        }
    }
    Err(OracleError::NoGenericFrame(degrees))
}

pub fn from_integers(terms: &[(i64, [u32; 3])]) -> Vec<(Q, [u32; 3])> {
    terms.iter().map(|&(c, e)| (q(c), e)).collect()
}

fn linear(c: i64, u_coef: i64, var: u32) -> BiQ {
    let (i, j) = if var == 0 { (1, 0) } else { (0, 1) };
    BiQ::constant(q(c)).add(&BiQ::monomial(q(u_coef), i, j))
}

/// Coefficients `c0..c4` of the quartic restricted to `z' = u x' + v y'`
/// where the original coordinates are `m · (x', y', z')`.
fn restricted(terms: &[(Q, [u32; 3])], m: [[i64; 3]; 3]) -> Vec<BiQ> {
    let forms: Vec<BinaryForm> = (0..3)
        .map(|i| BinaryForm::linear(linear(m[i][0], m[i][2], 0), linear(m[i][1], m[i][2], 1)))
        .collect();
    let mut total = BinaryForm(vec![BiQ::default(); 5]);
    for (c, e) in terms {
        let t = forms[0]
            .pow(e[0])
            .mul(&forms[1].pow(e[1]))
            .mul(&forms[2].pow(e[2]));
        total = total.add(&t.scale(c));
    }
    total.0
}

fn conditions(c: &[BiQ]) -> (BiQ, BiQ) {
    let k = |n: i64| q(n);
    let c0c0 = c[0].mul(&c[0]);
    let e1 = c0c0
        .mul(&c[3])
        .scale(&k(8))
        .sub(&c[0].mul(&c[1]).mul(&c[2]).scale(&k(4)))
        .add(&c[1].mul(&c[1]).mul(&c[1]));
    let h = c[0].mul(&c[2]).scale(&k(4)).sub(&c[1].mul(&c[1]));
    let e2 = c0c0.mul(&c[0]).mul(&c[4]).scale(&k(64)).sub(&h.mul(&h));
    (e1, e2)
}

/// `Res_v(e1, e2)` as a polynomial in `u`.
fn resultant_in_v(e1: &BiQ, e2: &BiQ) -> QPoly {
    let bound = e2.degree_v() * e1.degree_u() + e1.degree_v() * e2.degree_u();
    let xs: Vec<Q> = (0..=bound as i64)
        .map(|k| q(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }))
        .collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|x| qpoly::det(qpoly::sylvester(&e1.in_v_at(x), &e2.in_v_at(x))))
        .collect();
    QPoly::interpolate(&xs, &ys)
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

fn scale_max(l: [Complex64; 3]) -> [Complex64; 3] {
    let k = (0..3)
        .max_by(|&a, &b| l[a].norm().total_cmp(&l[b].norm()))
        .unwrap_or(0);
    let s = l[k];
    l.map(|x| x / s)
}

fn cofactors(m: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            *x = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    out
}

fn in_frame(
    terms: &[(Q, [u32; 3])],
    frame: [[i64; 3]; 3],
) -> Result<OracleSolution, Option<usize>> {
    let cof = cofactors(frame);
    if (0..3).map(|j| frame[0][j] * cof[0][j]).sum::<i64>() == 0 {
        return Err(None);
    }
    let c = restricted(terms, frame);
    let (e1, e2) = conditions(&c);
    let r = resultant_in_v(&e1, &e2);
    if r.is_zero() {
        return Err(None);
    }
    let leading = e1
        .v_coefficient(e1.degree_v() as u32)
        .gcd(&e2.v_coefficient(e2.degree_v() as u32));
    let eliminant = r
        .square_free_part()
        .without_roots_of(&c[0].v_coefficient(0))
        .without_roots_of(&leading);
    if eliminant.degree() != Some(28) {
        return Err(eliminant.degree());
    }
    let roots = isolate(&eliminant).ok_or(Some(28))?;
    let mut lines = Vec::with_capacity(28);
    for root in &roots {
        let u = root.value;
        let cubic = e1.in_v_at_complex(u);
        let quartic = e2.in_v_at_complex(u);
        let scale = quartic
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(1e-300);
        let v = durand_kerner(&cubic)
            .into_iter()
            .min_by(|a, b| {
                horner(&quartic, *a)
                    .norm()
                    .total_cmp(&horner(&quartic, *b).norm())
            })
            .ok_or(Some(28))?;
        let dcubic: Vec<Complex64> = cubic
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * k as f64)
            .collect();
        let mut v = v;
        for _ in 0..4 {
            let d = horner(&dcubic, v);
            if d.norm() == 0.0 {
                break;
            }
            v -= horner(&cubic, v) / d;
        }
        if horner(&quartic, v).norm() > 1e-6 * scale * (1.0 + v.norm()).powi(4) {
            return Err(Some(28));
        }
        let local = [u, v, Complex64::new(-1.0, 0.0)];
        let line: [Complex64; 3] = std::array::from_fn(|i| {
            (0..3)
                .map(|j| local[j] * cof[i][j] as f64)
                .sum::<Complex64>()
        });
        lines.push(scale_max(line));
    }
    let max_radius = roots.iter().map(|r| r.radius).fold(0.0, f64::max);
    Ok(OracleSolution {
        lines,
        eliminant,
        frame,
        max_radius,
    })
}

/// Sine of the angle between two dual vectors.
pub fn projective_distance(a: &[Complex64; 3], b: &[Complex64; 3]) -> f64 {
    let n = |x: &[Complex64; 3]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    n(&cross) / (n(a) * n(b))
}
