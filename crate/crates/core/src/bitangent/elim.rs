//! The two-parameter line family of a dual chart and the conditions for the
//! restricted quartic to be a perfect square.

use crate::polynum::{BiPoly, BinaryQuartic, C64};
use crate::projgeom::{monomials, TernaryQuartic};

/// `(G1, G2)`: both vanish exactly when the quartic (with nonzero leading
/// coefficient) is a constant times the square of a quadratic.
pub fn perfect_square_conditions(c: &BinaryQuartic) -> (C64, C64) {
    let [c0, c1, c2, c3, c4] = c.c;
    let g1 = c3 * c3 * c3 - c4 * c3 * c2 * 4.0 + c4 * c4 * c1 * 8.0;
    let h = c4 * c2 * 4.0 - c3 * c3;
    let g2 = h * h - c4 * c4 * c4 * c0 * 64.0;
    (g1, g2)
}

/// Coordinate indices `(i, j)` left free in chart `k`, in increasing order.
pub fn free_indices(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients `c_0 .. c_4` in `t` of `f` restricted to the line
/// `u x_i + v x_j + x_k = 0`, parametrized by `x_i = 1, x_j = t,
/// x_k = -u - v t`, as polynomials in `(u, v)`.
pub fn chart_restriction(f: &TernaryQuartic, chart: usize) -> [BiPoly; 5] {
    let (_, j) = free_indices(chart);
    let k = chart;
    let mut terms: [Vec<(C64, usize, usize)>; 5] = Default::default();
    for (e, &a) in monomials(4).iter().zip(f.coeffs()) {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        let (b, c) = (e[j], e[k]);
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        for r in 0..=c {
            let coef = a * binomial(c, r) * sign;
            terms[(b + r) as usize].push((coef, (c - r) as usize, r as usize));
        }
    }
    terms.map(|t| BiPoly::from_terms(&t).expect("coefficients of a valid quartic are finite"))
}

/// `G1` and `G2` of [`perfect_square_conditions`] over the chart family.
pub fn chart_conditions(c: &[BiPoly; 5]) -> (BiPoly, BiPoly) {
    let [c0, c1, c2, c3, c4] = c;
    let k = |x: f64| BiPoly::constant(C64::new(x, 0.0));
    let c3sq = c3 * c3;
    let g1 = &(&(&c3sq * c3) - &(&(&k(4.0) * c4) * &(c3 * c2))) + &(&(&k(8.0) * &(c4 * c4)) * c1);
    let h = &(&(&k(4.0) * c4) * c2) - &c3sq;
    let c4cube = &(c4 * c4) * c4;
    let g2 = &(&h * &h) - &(&(&k(64.0) * &c4cube) * c0);
    (g1, g2)
}
