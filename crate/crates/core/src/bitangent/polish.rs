//! Newton refinement of a candidate bitangent on the coefficient-matching
//! system `f(A + tB) = α q(t)²` with `q` monic.

use crate::polynum::{solve_square, UniPoly, C64};
use crate::projgeom::{pivot_index, LineParametrization, ProjLine, ProjPoint, TernaryQuartic};

use super::{Bitangent, PolishError, SolverConfig};

const POLISH_ITERATIONS: usize = 50;

/// Offsets tried when mixing the two chart points of the line.
const MIX: [f64; 6] = [0.0, 0.37, -0.61, 1.13, -1.29, 0.5];

/// Smallest `|∇f(p)| / (|p|^3 max|f|)` accepted at a tangency point.
const GRADIENT_FLOOR: f64 = 1e-6;

fn unit(i: usize) -> [C64; 3] {
    let mut e = [C64::new(0.0, 0.0); 3];
    e[i] = C64::new(1.0, 0.0);
    e
}

fn vnorm(p: &[C64; 3]) -> f64 {
    p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn combine(a: &[C64; 3], b: &[C64; 3], s: f64) -> [C64; 3] {
    [0, 1, 2].map(|k| a[k] + b[k] * s)
}

/// Relative size of `f` at `p`.
fn relative_value(f: &TernaryQuartic, p: &[C64; 3]) -> f64 {
    f.eval(p).norm() / vnorm(p).powi(4)
}

/// Working-chart description of a line near `(u, v)`: the points
/// `A = P0 + s P1` and `B = P1 + r P0` with `P0 = e_i - u e_w` and
/// `P1 = e_j - v e_w`.
struct Frame {
    w: usize,
    i: usize,
    j: usize,
    r: f64,
    s: f64,
}

impl Frame {
    fn points(&self, u: C64, v: C64) -> ([C64; 3], [C64; 3]) {
        let mut p0 = unit(self.i);
        p0[self.w] = -u;
        let mut p1 = unit(self.j);
        p1[self.w] = -v;
        (combine(&p0, &p1, self.s), combine(&p1, &p0, self.r))
    }

    fn line(&self, u: C64, v: C64) -> [C64; 3] {
        let mut l = [C64::new(0.0, 0.0); 3];
        l[self.w] = C64::new(1.0, 0.0);
        l[self.i] = u;
        l[self.j] = v;
        l
    }
}

fn choose_frame(f: &TernaryQuartic, line: &ProjLine) -> (Frame, C64, C64) {
    let l = line.coords();
    let w = pivot_index(l).expect("canonical line is nonzero");
    let (i, j) = match w {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (u, v) = (l[i] / l[w], l[j] / l[w]);
    let probe = Frame {
        w,
        i,
        j,
        r: 0.0,
        s: 0.0,
    };
    let (p0, p1) = probe.points(u, v);
    let best = |cands: &mut dyn Iterator<Item = f64>, point: &dyn Fn(f64) -> [C64; 3]| -> f64 {
        cands
            .map(|x| (x, relative_value(f, &point(x))))
            .fold(
                (0.0, -1.0),
                |acc, (x, val)| if val > acc.1 { (x, val) } else { acc },
            )
            .0
    };
    let s = best(&mut MIX.iter().copied(), &|s| combine(&p0, &p1, s));
    let r = best(
        &mut MIX.iter().copied().filter(|r| (1.0 - r * s).abs() >= 0.5),
        &|r| combine(&p1, &p0, r),
    );
    (Frame { w, i, j, r, s }, u, v)
}

fn square_coeffs(q0: C64, q1: C64) -> [C64; 5] {
    let two = 2.0;
    [
        q0 * q0,
        q0 * q1 * two,
        q1 * q1 + q0 * two,
        q1 * two,
        C64::new(1.0, 0.0),
    ]
}

fn poly_times_linear(d: &[C64], c0: C64, c1: C64) -> [C64; 5] {
    let mut out = [C64::new(0.0, 0.0); 5];
    for (k, &x) in d.iter().enumerate() {
        out[k] += x * c0;
        out[k + 1] += x * c1;
    }
    out
}

/// Refines `candidate` into a bitangent of `f`.
pub fn polish(
    f: &TernaryQuartic,
    candidate: &ProjLine,
    cfg: &SolverConfig,
) -> Result<Bitangent, PolishError> {
    let (frame, mut u, mut v) = choose_frame(f, candidate);
    let form = f.form();
    let dform = form.partial(frame.w);

    let restrict = |u: C64, v: C64| {
        let (a, b) = frame.points(u, v);
        form.restrict(&a, &b)
    };
    let c = restrict(u, v);
    if c[4].norm() == 0.0 {
        return Err(PolishError::NonConvergence {
            residual: f64::INFINITY,
            iterations: 0,
        });
    }
    let mut alpha = c[4];
    let mut q1 = c[3] / (c[4] * 2.0);
    let mut q0 = (c[2] / c[4] - q1 * q1) / 2.0;

    let residual_of = |c: &[C64], alpha: C64, q0: C64, q1: C64| -> (Vec<C64>, f64) {
        let sq = square_coeffs(q0, q1);
        let eqs: Vec<C64> = (0..5).map(|m| c[m] - alpha * sq[m]).collect();
        let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let norm = eqs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (
            eqs,
            if scale > 0.0 {
                norm / scale
            } else {
                f64::INFINITY
            },
        )
    };

    let (mut eqs, mut residual) = residual_of(&c, alpha, q0, q1);
    let mut iterations = 0;
    while iterations < POLISH_ITERATIONS {
        iterations += 1;
        let (a, b) = frame.points(u, v);
        let d = dform.restrict(&a, &b);
        let du = poly_times_linear(&d, C64::new(-1.0, 0.0), C64::new(-frame.r, 0.0));
        let dv = poly_times_linear(&d, C64::new(-frame.s, 0.0), C64::new(-1.0, 0.0));
        let sq = square_coeffs(q0, q1);
        let dq0 = [
            q0 * 2.0,
            q1 * 2.0,
            C64::new(2.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let dq1 = [
            C64::new(0.0, 0.0),
            q0 * 2.0,
            q1 * 2.0,
            C64::new(2.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let jac: Vec<Vec<C64>> = (0..5)
            .map(|m| vec![du[m], dv[m], -sq[m], -alpha * dq0[m], -alpha * dq1[m]])
            .collect();
        let Some(step) = solve_square(jac, eqs.iter().map(|z| -z).collect()) else {
            break;
        };
        if step.iter().any(|z| !z.is_finite()) {
            break;
        }
        let mut accepted = None;
        let mut lambda = 1.0;
        for _ in 0..7 {
            let (nu, nv) = (u + step[0] * lambda, v + step[1] * lambda);
            let (na, nq0, nq1) = (
                alpha + step[2] * lambda,
                q0 + step[3] * lambda,
                q1 + step[4] * lambda,
            );
            let (eqs_new, res_new) = residual_of(&restrict(nu, nv), na, nq0, nq1);
            if res_new < residual {
                accepted = Some((nu, nv, na, nq0, nq1, eqs_new, res_new));
                break;
            }
            lambda *= 0.5;
        }
        let Some(next) = accepted else { break };
        let small = step.iter().map(|z| z.norm()).fold(0.0, f64::max)
            <= 1e-15 * (1.0 + u.norm() + v.norm());
        (u, v, alpha, q0, q1, eqs, residual) = next;
        if small || residual <= 1e-15 {
            break;
        }
    }
    if residual.is_nan() || residual > cfg.accept_tol || u.norm() > 1e8 || v.norm() > 1e8 {
        return Err(PolishError::NonConvergence {
            residual,
            iterations,
        });
    }

    let line = ProjLine::new(frame.line(u, v)).map_err(|_| PolishError::NonConvergence {
        residual,
        iterations,
    })?;
    let (a, b) = frame.points(u, v);
    let param = LineParametrization::new_unchecked(a, b);
    let disc = q1 * q1 - q0 * 4.0;
    let qscale = 1f64.max(q0.norm()).max(q1.norm());
    let is_hyperflex = disc.norm() / (qscale * qscale) < cfg.hyperflex_tol;
    let root = disc.sqrt();
    let taus = [(-q1 + root) / 2.0, (-q1 - root) / 2.0];
    let fscale = f.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut points = Vec::with_capacity(2);
    for tau in taus {
        let p = param.point_at(tau);
        let g = f.gradient(&p);
        if vnorm(&g) <= GRADIENT_FLOOR * fscale * vnorm(&p).powi(3) {
            return Err(PolishError::SingularTangency);
        }
        points.push(ProjPoint::new(p).map_err(|_| PolishError::SingularTangency)?);
    }
    let tangency_quadratic = UniPoly::new(vec![q0, q1, C64::new(1.0, 0.0)]).map_err(|_| {
        PolishError::NonConvergence {
            residual,
            iterations,
        }
    })?;
    Ok(Bitangent {
        is_real: line.is_real(cfg.real_tol),
        line,
        tangency_quadratic,
        tangency_points: [points[0], points[1]],
        scale: alpha,
        parametrization: param,
        residual,
        is_hyperflex,
    })
}
