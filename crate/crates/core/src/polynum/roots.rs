//! Simultaneous root finding (Aberth–Ehrlich) with Newton polishing, and
//! clustering of numerically repeated roots.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, UniPoly, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Residual bound: `|p(r)| <= tol * max|a_i| * max(1, |r|)^deg`.
    pub tol: f64,
    pub max_iter: usize,
    /// Seeds the perturbation of the starting circle.
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-9,
            max_iter: 200,
            seed: 0x5eed,
        }
    }
}

/// A group of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub value: C64,
    pub multiplicity: usize,
}

impl UniPoly {
    /// All `deg` roots, repeated roots returned as clusters of nearby values.
    pub fn roots_all(&self, tol: f64) -> Result<Vec<C64>, PolyError> {
        self.roots_with(&RootOptions {
            tol,
            ..RootOptions::default()
        })
    }

    pub fn roots_with(&self, opts: &RootOptions) -> Result<Vec<C64>, PolyError> {
        let zero = C64::new(0.0, 0.0);
        let n_zero = self.coeffs().iter().take_while(|c| **c == zero).count();
        if n_zero >= self.coeffs().len() {
            return Ok(Vec::new());
        }
        let reduced = UniPoly::from_vec_untrimmed(self.coeffs()[n_zero..].to_vec());
        let mut roots = vec![zero; n_zero];
        roots.extend(aberth(&reduced, opts)?);
        Ok(roots)
    }

    /// Monic polynomial with one root per cluster of `roots_all`.
    pub fn square_free_part(&self, cluster_tol: f64) -> Result<UniPoly, PolyError> {
        let clusters = distinct_roots(self, cluster_tol, &RootOptions::default())?;
        let reps: Vec<C64> = clusters.iter().map(|c| c.value).collect();
        Ok(UniPoly::from_roots(&reps))
    }
}

fn aberth(p: &UniPoly, opts: &RootOptions) -> Result<Vec<C64>, PolyError> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic = p.monic();
    if n == 1 {
        return Ok(vec![-monic.coeff(0)]);
    }
    let dp = monic.derivative();
    let radius = fujiwara_bound(&monic);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let offset: f64 = rng.random_range(0.0..2.0 * PI);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.random_range(0.0..0.25);
            let r = radius * (1.0 + 0.01 * rng.random_range(-1.0..1.0));
            C64::from_polar(r, offset + 2.0 * PI * (k as f64 + jitter) / n as f64)
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..opts.max_iter {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ratio = monic.newton_ratio(&dp, z[i]);
            if ratio == C64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == C64::new(0.0, 0.0) {
                        C64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * eps * z[i].norm().max(eps) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    newton_polish(&monic, &dp, &mut z);

    let scale = monic.max_abs();
    for (index, r) in z.iter().enumerate() {
        if !r.is_finite() || monic.scaled_eval(*r).norm() > opts.tol * scale {
            return Err(PolyError::NonConvergence {
                index,
                iterations: opts.max_iter,
            });
        }
    }
    Ok(z)
}

/// A few Newton steps per root, accepted only while the residual drops and
/// the step stays well inside the gap to the nearest other approximation.
fn newton_polish(p: &UniPoly, dp: &UniPoly, z: &mut [C64]) {
    for i in 0..z.len() {
        let gap = (0..z.len())
            .filter(|&j| j != i)
            .map(|j| (z[i] - z[j]).norm())
            .fold(f64::INFINITY, f64::min);
        for _ in 0..4 {
            let step = p.newton_ratio(dp, z[i]);
            if step.norm() == 0.0 || !step.is_finite() || step.norm() > 0.25 * gap {
                break;
            }
            let candidate = z[i] - step;
            if p.scaled_eval(candidate).norm() < p.scaled_eval(z[i]).norm() {
                z[i] = candidate;
            } else {
                break;
            }
        }
    }
}

/// `2 max |a_{n-k}/a_n|^{1/k}` with the constant term halved.
fn fujiwara_bound(p: &UniPoly) -> f64 {
    let n = p.degree();
    let lead = p.leading().norm();
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let mut c = p.coeff(n - k).norm() / lead;
        if k == n {
            c /= 2.0;
        }
        bound = bound.max(c.powf(1.0 / k as f64));
    }
    if bound == 0.0 {
        1.0
    } else {
        2.0 * bound
    }
}

/// Roots of `p` grouped into clusters.
///
/// Two approximations join a cluster when they lie within `cluster_tol`
/// (relative to `max(1, |r|)`) of each other or when their Gerschgorin
/// inclusion disks overlap. Each representative is the cluster
/// centroid refined by Newton on the `(m-1)`-th derivative, which has a
/// simple root at an `m`-fold root of `p`.
pub fn distinct_roots(
    p: &UniPoly,
    cluster_tol: f64,
    opts: &RootOptions,
) -> Result<Vec<RootCluster>, PolyError> {
    let roots = p.roots_with(opts)?;
    let n = roots.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let radii = inclusion_radii(p, &roots);

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (roots[i] - roots[j]).norm();
            let tol = cluster_tol * roots[i].norm().max(roots[j].norm()).max(1.0);
            if d <= tol || d <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(_, members)| {
            let m = members.len();
            let centroid = members.iter().map(|&i| roots[i]).sum::<C64>() / m as f64;
            RootCluster {
                value: refine_multiple(p, centroid, m),
                multiplicity: m,
            }
        })
        .collect())
}

/// Radii `n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|`, with `|p(z_i)|`
/// enlarged by a bound on the rounding error of its evaluation. A connected
/// union of `k` such disks holds exactly `k` roots.
fn inclusion_radii(p: &UniPoly, roots: &[C64]) -> Vec<f64> {
    let n = roots.len();
    let lead = p.leading().norm();
    roots
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let big = z.norm().max(1.0);
            let abs_eval = if z.norm() <= 1.0 {
                p.coeffs()
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * z.norm() + c.norm())
            } else {
                p.coeffs()
                    .iter()
                    .fold(0.0, |acc, c| acc / z.norm() + c.norm())
            };
            let residual =
                p.scaled_eval(z).norm() + 4.0 * (n as f64 + 1.0) * f64::EPSILON * abs_eval;
            // p(z) = scaled * big^n, so carry one factor of big per other root plus one spare
            let mut log_r = (n as f64).ln() + residual.ln() - lead.ln() + big.ln();
            for (j, &w) in roots.iter().enumerate() {
                let d = (z - w).norm();
                if j != i && d > 0.0 {
                    log_r += big.ln() - d.ln();
                }
            }
            log_r.exp()
        })
        .collect()
}

fn refine_multiple(p: &UniPoly, start: C64, multiplicity: usize) -> C64 {
    if multiplicity <= 1 {
        return start;
    }
    let q = p.nth_derivative(multiplicity - 1);
    if q.degree() == 0 {
        return start;
    }
    let dq = q.derivative();
    let mut z = start;
    for _ in 0..8 {
        let step = q.newton_ratio(&dq, z);
        if !step.is_finite() || step.norm() > 1e-2 * z.norm().max(1.0) {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}
