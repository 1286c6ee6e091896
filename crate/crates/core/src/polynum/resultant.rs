//! Sylvester resultants of bivariate polynomials by evaluation and
//! interpolation on a scaled circle of roots of unity.

use std::f64::consts::PI;

use super::{det, BiPoly, PolyError, UniPoly, Var, C64};

/// Relative size below which interpolated resultant coefficients are noise.
const INTERP_DROP: f64 = 1e-11;

/// Relative size of coefficients above the expected degree that still
/// counts as an exact division.
const QUOTIENT_SLACK: f64 = 1e-7;

/// Determinant of the Sylvester matrix of `p` and `q` viewed as polynomials
/// in `var`, as a polynomial in the other variable.
///
/// Rows of `p` come first, so `Res(v - a, v - b) = a - b`.
pub fn resultant_wrt(p: &BiPoly, q: &BiPoly, var: Var) -> Result<UniPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::DegenerateElimination);
    }
    let pc = trim_top(p.coefficients_in(var));
    let qc = trim_top(q.coefficients_in(var));
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m + n == 0 {
        return Ok(UniPoly::constant(C64::new(1.0, 0.0)));
    }
    let dp = pc.iter().map(UniPoly::degree).max().unwrap_or(0);
    let dq = qc.iter().map(UniPoly::degree).max().unwrap_or(0);
    let bound = n * dp + m * dq;

    let first = interpolate(&pc, &qc, bound, 1.0, None);
    let rho = balancing_radius(&first);
    let scaled = if (0.5..=2.0).contains(&rho) {
        first
    } else {
        interpolate(&pc, &qc, bound, rho, None)
    };
    finish(scaled)
}

/// `Res(p, q) / d^e` for the largest `e <= max_power` at which the quotient
/// is still a polynomial, together with that `e`.
///
/// The division happens at the sample points before interpolating, so a
/// high-multiplicity factor known in advance never reaches the root finder.
/// A power is accepted when the interpolated quotient has no significant
/// coefficient above the degree bound it must respect.
pub fn resultant_quotient(
    p: &BiPoly,
    q: &BiPoly,
    var: Var,
    divisor: &UniPoly,
    max_power: u32,
) -> Result<(UniPoly, u32), PolyError> {
    if p.is_zero() || q.is_zero() || divisor.is_zero() {
        return Err(PolyError::DegenerateElimination);
    }
    let pc = trim_top(p.coefficients_in(var));
    let qc = trim_top(q.coefficients_in(var));
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m + n == 0 {
        return Ok((UniPoly::constant(C64::new(1.0, 0.0)), 0));
    }
    let dp = pc.iter().map(UniPoly::degree).max().unwrap_or(0);
    let dq = qc.iter().map(UniPoly::degree).max().unwrap_or(0);
    let bound = n * dp + m * dq;
    let dd = divisor.degree();
    for e in (0..=max_power).rev() {
        let Some(reduced) = bound.checked_sub(e as usize * dd) else {
            continue;
        };
        let d = Some((divisor, e));
        let first = interpolate(&pc, &qc, bound, 1.0, d);
        if !is_polynomial_below(&first.coeffs, reduced) {
            continue;
        }
        let rho = balancing_radius(&Scaled {
            coeffs: first.coeffs[..=reduced].to_vec(),
            radius: 1.0,
        });
        let mut scaled = if (0.5..=2.0).contains(&rho) {
            first
        } else {
            interpolate(&pc, &qc, bound, rho, d)
        };
        scaled.coeffs.truncate(reduced + 1);
        return Ok((finish(scaled)?, e));
    }
    Err(PolyError::DegenerateElimination)
}

fn is_polynomial_below(coeffs: &[C64], degree: usize) -> bool {
    let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if !top.is_finite() || top == 0.0 {
        return false;
    }
    coeffs[degree + 1..]
        .iter()
        .all(|c| c.norm() <= QUOTIENT_SLACK * top)
}

fn finish(scaled: Scaled) -> Result<UniPoly, PolyError> {
    let rho = scaled.radius;
    let top = scaled.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(UniPoly::zero());
    }
    let mut coeffs = scaled.coeffs;
    while coeffs.len() > 1 && coeffs[coeffs.len() - 1].norm() <= INTERP_DROP * top {
        coeffs.pop();
    }
    let unscaled = coeffs
        .iter()
        .enumerate()
        .map(|(j, &b)| b / C64::from_polar(rho, SAMPLE_ANGLE).powi(j as i32))
        .collect();
    UniPoly::new(unscaled)
}

fn trim_top(mut c: Vec<UniPoly>) -> Vec<UniPoly> {
    while c.len() > 1 && c.last().is_some_and(UniPoly::is_zero) {
        c.pop();
    }
    c
}

struct Scaled {
    /// Coefficients of `R(radius * e^(i SAMPLE_ANGLE) * w)` in `w`.
    coeffs: Vec<C64>,
    radius: f64,
}

/// Rotation of the sample circle, keeping samples off roots of small
/// integer polynomials such as `v - 1`.
const SAMPLE_ANGLE: f64 = std::f64::consts::FRAC_1_PI;

fn interpolate(
    pc: &[UniPoly],
    qc: &[UniPoly],
    bound: usize,
    radius: f64,
    divisor: Option<(&UniPoly, u32)>,
) -> Scaled {
    let samples = bound + 1;
    let values: Vec<C64> = (0..samples)
        .map(|k| {
            let w = C64::from_polar(radius, SAMPLE_ANGLE + 2.0 * PI * k as f64 / samples as f64);
            let pv: Vec<C64> = pc.iter().map(|c| c.eval(w)).collect();
            let qv: Vec<C64> = qc.iter().map(|c| c.eval(w)).collect();
            let r = det(sylvester(&pv, &qv));
            match divisor {
                Some((d, e)) => r / d.eval(w).powu(e),
                None => r,
            }
        })
        .collect();
    let coeffs = (0..samples)
        .map(|j| {
            let s: C64 = values
                .iter()
                .enumerate()
                .map(|(k, &val)| {
                    val * C64::from_polar(
                        1.0,
                        -2.0 * PI * ((j * k) % samples) as f64 / samples as f64,
                    )
                })
                .sum();
            s / samples as f64
        })
        .collect();
    Scaled { coeffs, radius }
}

/// Sylvester matrix from coefficient vectors indexed by ascending power.
pub(crate) fn sylvester(p: &[C64], q: &[C64]) -> Vec<Vec<C64>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![C64::new(0.0, 0.0); size];
        for (k, &c) in p.iter().rev().enumerate() {
            row[shift + k] = c;
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![C64::new(0.0, 0.0); size];
        for (k, &c) in q.iter().rev().enumerate() {
            row[shift + k] = c;
        }
        rows.push(row);
    }
    rows
}

/// Radius that balances the outermost significant coefficients.
fn balancing_radius(s: &Scaled) -> f64 {
    let top = s.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return 1.0;
    }
    let sig: Vec<usize> = s
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > INTERP_DROP * top)
        .map(|(i, _)| i)
        .collect();
    let (lo, hi) = match (sig.first(), sig.last()) {
        (Some(&lo), Some(&hi)) if hi > lo => (lo, hi),
        _ => return 1.0,
    };
    let ratio = s.coeffs[lo].norm() / s.coeffs[hi].norm();
    ratio.powf(1.0 / (hi - lo) as f64).clamp(1e-3, 1e3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn linear_pair_gives_difference() {
        let (a, b) = (2.5, -0.75);
        let p = BiPoly::from_terms(&[(r(1.0), 0, 1), (r(-a), 0, 0)]).unwrap();
        let q = BiPoly::from_terms(&[(r(1.0), 0, 1), (r(-b), 0, 0)]).unwrap();
        let res = resultant_wrt(&p, &q, Var::V).unwrap();
        assert_eq!(res.degree(), 0);
        assert!((res.coeff(0) - r(a - b)).norm() < 1e-12);
    }

    #[test]
    fn square_root_pair() {
        // Res_v(v^2 - u, v - 1) = 1 - u
        let p = BiPoly::from_terms(&[(r(1.0), 0, 2), (r(-1.0), 1, 0)]).unwrap();
        let q = BiPoly::from_terms(&[(r(1.0), 0, 1), (r(-1.0), 0, 0)]).unwrap();
        let res = resultant_wrt(&p, &q, Var::V).unwrap();
        assert_eq!(res.degree(), 1);
        assert!((res.coeff(0) - r(1.0)).norm() < 1e-12);
        assert!((res.coeff(1) - r(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn self_resultant_vanishes() {
        let p = BiPoly::from_terms(&[(r(1.0), 0, 2), (r(-1.0), 1, 0), (r(0.5), 1, 1)]).unwrap();
        let res = resultant_wrt(&p, &p, Var::V).unwrap();
        assert!(res.max_abs() < 1e-12);
    }

    #[test]
    fn zero_input_is_degenerate() {
        let p = BiPoly::zero();
        let q = BiPoly::from_terms(&[(r(1.0), 0, 1)]).unwrap();
        assert_eq!(
            resultant_wrt(&p, &q, Var::V),
            Err(PolyError::DegenerateElimination)
        );
    }

    #[test]
    fn known_factor_is_divided_out() {
        // p = u^2 - v^2 (v - 1)^2, q = u - v (v - 1) + (v - 1)^3 share u only where v = 1
        let vm1 = |k: u32| -> Vec<(C64, usize)> {
            // coefficients of (v - 1)^k
            let mut c = vec![r(1.0)];
            for _ in 0..k {
                let mut n = vec![r(0.0); c.len() + 1];
                for (i, &a) in c.iter().enumerate() {
                    n[i + 1] += a;
                    n[i] -= a;
                }
                c = n;
            }
            c.into_iter().enumerate().map(|(j, x)| (x, j)).collect()
        };
        let mut pt = vec![(r(1.0), 2, 0)];
        for (x, j) in vm1(2) {
            pt.push((-x, 0, j + 2));
        }
        let mut qt = vec![(r(1.0), 1, 0)];
        for (x, j) in vm1(1) {
            qt.push((-x, 0, j + 1));
        }
        for (x, j) in vm1(3) {
            qt.push((x, 0, j));
        }
        let p = BiPoly::from_terms(&pt).unwrap();
        let q = BiPoly::from_terms(&qt).unwrap();
        let full = resultant_wrt(&p, &q, Var::U).unwrap();
        let divisor = UniPoly::from_real(&[-1.0, 1.0]);
        let (quot, e) = resultant_quotient(&p, &q, Var::U, &divisor, 10).unwrap();
        assert!(e >= 3, "power {e}");
        let w = r(0.37);
        let expect = full.eval(w) / divisor.eval(w).powu(e);
        assert!((quot.eval(w) - expect).norm() < 1e-8 * expect.norm().max(1.0));
        assert_eq!(quot.degree() + e as usize, full.degree());
    }

    #[test]
    fn eliminating_u_matches_eliminating_v_roots() {
        // circle u^2 + v^2 = 4 and line u - v = 0 meet at v = +-sqrt(2)
        let p = BiPoly::from_terms(&[(r(1.0), 2, 0), (r(1.0), 0, 2), (r(-4.0), 0, 0)]).unwrap();
        let q = BiPoly::from_terms(&[(r(1.0), 1, 0), (r(-1.0), 0, 1)]).unwrap();
        let res = resultant_wrt(&p, &q, Var::U).unwrap();
        let s2 = 2f64.sqrt();
        assert!(res.eval(r(s2)).norm() < 1e-10);
        assert!(res.eval(r(-s2)).norm() < 1e-10);
        assert!(res.eval(r(0.3)).norm() > 1e-3);
    }

    fn bipoly_strategy() -> impl proptest::strategy::Strategy<Value = BiPoly> {
        use proptest::prelude::*;
        proptest::collection::vec(((-1.0f64..1.0, -1.0f64..1.0), 0usize..=3, 0usize..=3), 2..8)
            .prop_filter_map("needs v", |terms| {
                let terms: Vec<(C64, usize, usize)> = terms
                    .into_iter()
                    .filter(|t| t.1 + t.2 <= 3)
                    .map(|(c, i, j)| (C64::new(c.0, c.1), i, j))
                    .collect();
                let p = BiPoly::from_terms(&terms).ok()?;
                (p.degree_in(Var::V) >= 1).then_some(p)
            })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn resultant_is_multiplicative(p in bipoly_strategy(), q in bipoly_strategy(), s in bipoly_strategy()) {
            let pq = &p * &q;
            let whole = resultant_wrt(&pq, &s, Var::V).unwrap();
            let a = resultant_wrt(&p, &s, Var::V).unwrap();
            let b = resultant_wrt(&q, &s, Var::V).unwrap();
            for u in [C64::new(0.3, 0.2), C64::new(-0.7, 0.1), C64::new(0.05, -0.9)] {
                let lhs = whole.eval(u);
                let rhs = a.eval(u) * b.eval(u);
                let scale = lhs.norm().max(rhs.norm()).max(1e-3);
                proptest::prop_assert!((lhs - rhs).norm() <= 1e-6 * scale, "{lhs} vs {rhs}");
            }
        }
    }
}
