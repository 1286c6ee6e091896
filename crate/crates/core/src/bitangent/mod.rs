//! The 28 bitangents of a smooth plane quartic.
//!
//! Each dual chart `L_k = 1` gives a two-parameter family of lines. The
//! restricted quartic is a square exactly where `G1 = G2 = 0`; eliminating
//! one line coordinate with a resultant leaves a univariate polynomial whose
//! roots are back-substituted and then refined by Newton's method on the
//! original curve. The candidates of all charts are merged.
//!
//! The eliminant always carries a high power of the leading coefficient
//! `c4(v)`, which is divided out at the interpolation samples. Charts are
//! taken in a seeded unitary frame so that distinct bitangents have distinct
//! chart coordinates.

mod elim;
mod polish;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grp::ProjTransform;
use crate::polynum::{
    distinct_roots, resultant_quotient, PolyError, RootOptions, UniPoly, Var, C64, CLUSTER_TOL,
};
use crate::projgeom::{
    act_on_line, act_on_quartic, LineParametrization, ProjLine, ProjPoint, TernaryQuartic,
};

pub use elim::{chart_conditions, chart_restriction, free_indices, perfect_square_conditions};
pub use polish::polish;

pub const BITANGENT_COUNT: usize = 28;

/// Largest power of `c4` tried when dividing the eliminant.
const MAX_C4_POWER: u32 = 32;

/// Chart coordinates beyond this size are left to another chart.
const COORD_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub accept_tol: f64,
    pub match_tol: f64,
    pub hyperflex_tol: f64,
    pub real_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Dual charts to sweep, as coordinate indices.
    pub charts: Vec<usize>,
    /// Solve in a seeded random unitary frame instead of the given one.
    pub generic_frame: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            accept_tol: 1e-8,
            match_tol: 1e-6,
            hyperflex_tol: 1e-7,
            real_tol: 1e-6,
            max_iter: 200,
            seed: 7,
            charts: vec![0, 1, 2],
            generic_frame: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let tols = [
            self.accept_tol,
            self.match_tol,
            self.hyperflex_tol,
            self.real_tol,
        ];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(SolveError::InvalidConfig(
                "tolerances must be positive and finite".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(SolveError::InvalidConfig(
                "max_iter must be positive".into(),
            ));
        }
        if self.charts.is_empty() || self.charts.iter().any(|&c| c > 2) {
            return Err(SolveError::InvalidConfig(
                "charts must be a nonempty subset of 0, 1, 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolishError {
    #[error("polishing stalled at relative residual {residual:e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("curve gradient vanishes at a tangency point")]
    SingularTangency,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("found {found} bitangents instead of 28")]
    WrongCount {
        found: usize,
        diagnostics: Box<SolverDiagnostics>,
    },
    #[error("curve is singular: gradient vanishes at a tangency point")]
    SingularCurve { diagnostics: Box<SolverDiagnostics> },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A bitangent line with its tangency data. The restriction of the curve
/// to `parametrization` is `scale * tangency_quadratic^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bitangent {
    pub line: ProjLine,
    pub tangency_quadratic: UniPoly,
    pub tangency_points: [ProjPoint; 2],
    pub scale: C64,
    pub parametrization: LineParametrization,
    pub residual: f64,
    pub is_real: bool,
    pub is_hyperflex: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ChartDiagnostics {
    pub chart: usize,
    /// Power of `c4` divided out of the eliminant.
    pub divided_power: u32,
    pub eliminant_degree: usize,
    pub distinct_roots: usize,
    pub candidates: usize,
    pub accepted: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub charts: Vec<ChartDiagnostics>,
    pub generic_frame: bool,
    pub discarded: usize,
    pub singular_tangencies: usize,
    pub max_residual: f64,
    pub hyperflex_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitangentSet {
    pub items: Vec<Bitangent>,
    pub source: TernaryQuartic,
    pub diagnostics: SolverDiagnostics,
}

impl BitangentSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn lines(&self) -> Vec<ProjLine> {
        self.items.iter().map(|b| b.line).collect()
    }

    /// Index of the bitangent matching `line`, if any.
    pub fn find(&self, line: &ProjLine, tol: f64) -> Option<usize> {
        let (best, d) = self
            .items
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.line.distance(line)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        (d < tol).then_some(best)
    }
}

pub fn count_real(s: &BitangentSet) -> usize {
    s.items.iter().filter(|b| b.is_real).count()
}

/// Unitary matrix from Gram–Schmidt on seeded random rows.
fn random_frame(seed: u64) -> ProjTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut rows: Vec<[C64; 3]> = Vec::with_capacity(3);
        for _ in 0..3 {
            let mut r = [0, 1, 2]
                .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            for q in &rows {
                let dot: C64 = (0..3).map(|k| q[k].conj() * r[k]).sum();
                for k in 0..3 {
                    r[k] -= dot * q[k];
                }
            }
            let n = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 0.1 {
                break;
            }
            rows.push(r.map(|z| z / n));
        }
        if rows.len() == 3 {
            if let Ok(m) = ProjTransform::new([rows[0], rows[1], rows[2]]) {
                return m;
            }
        }
    }
}

struct ChartOutcome {
    diagnostics: ChartDiagnostics,
    accepted: Vec<Bitangent>,
    discarded: usize,
    singular: usize,
}

fn chart_candidates(
    g: &TernaryQuartic,
    chart: usize,
    cfg: &SolverConfig,
) -> Result<(ChartDiagnostics, Vec<ProjLine>), PolyError> {
    let mut diag = ChartDiagnostics {
        chart,
        ..Default::default()
    };
    let c = chart_restriction(g, chart);
    let (g1, g2) = chart_conditions(&c);
    let c4 = c[4].partial_eval(Var::U, C64::new(0.0, 0.0));
    let max_power = if c4.degree() == 0 { 0 } else { MAX_C4_POWER };
    let (eliminant, power) = resultant_quotient(&g1, &g2, Var::U, &c4, max_power)?;
    diag.divided_power = power;
    diag.eliminant_degree = eliminant.degree();
    let opts = RootOptions {
        tol: 1e-6,
        max_iter: cfg.max_iter,
        seed: cfg.seed,
    };
    let clusters = distinct_roots(&eliminant, CLUSTER_TOL, &opts)?;
    diag.distinct_roots = clusters.len();
    // where c4 vanishes both conditions reduce to powers of c3
    let c4_roots = if c4.degree() == 0 {
        Vec::new()
    } else {
        c4.roots_with(&opts).unwrap_or_default()
    };
    let sources = clusters
        .iter()
        .map(|cl| (cl.value, vec![&g1, &g2]))
        .chain(c4_roots.iter().map(|&v| (v, vec![&c[3]])));
    let (i, j) = free_indices(chart);
    let mut lines = Vec::new();
    for (v, conditions) in sources {
        if v.norm() > COORD_LIMIT {
            continue;
        }
        let mut us = Vec::new();
        for g in conditions {
            let in_u: UniPoly = g.partial_eval(Var::V, v);
            if in_u.degree() > 0 {
                us.extend(
                    in_u.roots_with(&RootOptions { tol: 1e-6, ..opts })
                        .unwrap_or_default(),
                );
            }
        }
        for u in us {
            if u.norm() > COORD_LIMIT {
                continue;
            }
            let mut l = [C64::new(1.0, 0.0); 3];
            l[i] = u;
            l[j] = v;
            if let Ok(line) = ProjLine::new(l) {
                lines.push(line);
            }
        }
    }
    diag.candidates = lines.len();
    Ok((diag, lines))
}

fn solve_chart(
    f: &TernaryQuartic,
    g: &TernaryQuartic,
    frame: &ProjTransform,
    chart: usize,
    cfg: &SolverConfig,
) -> ChartOutcome {
    let (mut diagnostics, lines) = match chart_candidates(g, chart, cfg) {
        Ok(x) => x,
        Err(e) => {
            let diagnostics = ChartDiagnostics {
                chart,
                error: Some(e.to_string()),
                ..Default::default()
            };
            return ChartOutcome {
                diagnostics,
                accepted: Vec::new(),
                discarded: 0,
                singular: 0,
            };
        }
    };
    // back to the original frame: L = L' M
    let back = frame.inverse();
    let results: Vec<Result<Bitangent, PolishError>> = lines
        .par_iter()
        .map(|l| polish(f, &act_on_line(&back, l), cfg))
        .collect();
    let mut accepted = Vec::new();
    let (mut discarded, mut singular) = (0, 0);
    for r in results {
        match r {
            Ok(b) => accepted.push(b),
            Err(PolishError::SingularTangency) => singular += 1,
            Err(PolishError::NonConvergence { .. }) => discarded += 1,
        }
    }
    diagnostics.accepted = accepted.len();
    ChartOutcome {
        diagnostics,
        accepted,
        discarded,
        singular,
    }
}

fn canonical_key(l: &ProjLine) -> [f64; 6] {
    let c = l.coords();
    [c[0].re, c[0].im, c[1].re, c[1].im, c[2].re, c[2].im]
}

/// All 28 bitangents of `f`, sorted by canonical coordinates.
pub fn solve_all(f: &TernaryQuartic, cfg: &SolverConfig) -> Result<BitangentSet, SolveError> {
    cfg.validate()?;
    let frame = if cfg.generic_frame {
        random_frame(cfg.seed)
    } else {
        ProjTransform::identity()
    };
    let g = act_on_quartic(&frame, f);
    let mut charts = cfg.charts.clone();
    charts.sort_unstable();
    charts.dedup();
    let outcomes: Vec<ChartOutcome> = charts
        .par_iter()
        .map(|&k| solve_chart(f, &g, &frame, k, cfg))
        .collect();

    let mut diagnostics = SolverDiagnostics {
        generic_frame: cfg.generic_frame,
        ..Default::default()
    };
    let mut all = Vec::new();
    for o in outcomes {
        diagnostics.discarded += o.discarded;
        diagnostics.singular_tangencies += o.singular;
        diagnostics.charts.push(o.diagnostics);
        all.extend(o.accepted);
    }
    all.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    let mut items: Vec<Bitangent> = Vec::with_capacity(BITANGENT_COUNT);
    for b in all {
        if !items.iter().any(|k| k.line.matches(&b.line, cfg.match_tol)) {
            items.push(b);
        }
    }
    items.sort_by(|a, b| {
        let (ka, kb) = (canonical_key(&a.line), canonical_key(&b.line));
        ka.iter()
            .zip(&kb)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    diagnostics.max_residual = items.iter().map(|b| b.residual).fold(0.0, f64::max);
    diagnostics.hyperflex_count = items.iter().filter(|b| b.is_hyperflex).count();
    if diagnostics.singular_tangencies > 0 {
        return Err(SolveError::SingularCurve {
            diagnostics: Box::new(diagnostics),
        });
    }
    if items.len() != BITANGENT_COUNT {
        return Err(SolveError::WrongCount {
            found: items.len(),
            diagnostics: Box::new(diagnostics),
        });
    }
    Ok(BitangentSet {
        items,
        source: f.clone(),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::restrict_to_line;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn klein() -> TernaryQuartic {
        TernaryQuartic::from_terms(&[
            (r(1.0), [3, 1, 0]),
            (r(1.0), [0, 3, 1]),
            (r(1.0), [1, 0, 3]),
        ])
        .unwrap()
    }

    fn check_sound(set: &BitangentSet) {
        let f = &set.source;
        for b in &set.items {
            let c = restrict_to_line(f, &b.parametrization).c;
            let q = &b.tangency_quadratic;
            let sq = &(q * q).scale(b.scale);
            let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let err = (0..5)
                .map(|m| (c[m] - sq.coeff(m)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-6 * scale);
            for p in &b.tangency_points {
                let pn = p.coords().iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(b.line.incidence(p.coords()).norm() < 1e-6 * pn);
                assert!(f.eval(p.coords()).norm() < 1e-6 * pn.powi(4));
            }
        }
    }

    #[test]
    fn fermat_has_28_with_four_real() {
        let set = solve_all(&TernaryQuartic::fermat(), &SolverConfig::default()).unwrap();
        assert_eq!(set.len(), 28);
        assert_eq!(count_real(&set), 4);
        check_sound(&set);
        for (a, b, c) in [
            (1.0, -1.0, -1.0),
            (1.0, 1.0, -1.0),
            (1.0, -1.0, 1.0),
            (1.0, 1.0, 1.0),
        ] {
            let want = ProjLine::from_real(a, b, c).unwrap();
            let i = set.find(&want, 1e-6).expect("x ± y ± z is a bitangent");
            assert!(set.items[i].is_real);
        }
    }

    #[test]
    fn klein_has_28_with_four_real() {
        let set = solve_all(&klein(), &SolverConfig::default()).unwrap();
        assert_eq!(set.len(), 28);
        assert_eq!(count_real(&set), 4);
        check_sound(&set);
    }

    #[test]
    fn raw_frame_also_works() {
        let cfg = SolverConfig {
            generic_frame: false,
            ..SolverConfig::default()
        };
        for f in [TernaryQuartic::fermat(), klein()] {
            let set = solve_all(&f, &cfg).unwrap();
            assert_eq!(set.len(), 28);
            check_sound(&set);
        }
    }

    #[test]
    fn perturbed_fermat_bitangent_is_recovered() {
        let f = TernaryQuartic::fermat();
        let exact = ProjLine::from_real(1.0, 1.0, 1.0).unwrap();
        let nudged = ProjLine::new([r(1.0), C64::new(1.0 + 1e-4, -1e-4), r(1.0 - 1e-4)]).unwrap();
        let b = polish(&f, &nudged, &SolverConfig::default()).unwrap();
        assert!(b.line.distance(&exact) < 1e-10);
        assert!(!b.is_hyperflex);
    }

    #[test]
    fn random_line_is_rejected() {
        let f = TernaryQuartic::fermat();
        let l = ProjLine::new([r(0.3), C64::new(1.0, 0.2), r(-0.7)]).unwrap();
        assert!(matches!(
            polish(&f, &l, &SolverConfig::default()),
            Err(PolishError::NonConvergence { .. })
        ));
    }

    #[test]
    fn hyperflex_is_flagged() {
        // y^4 + z^4 - x^3 z has z = 0 meeting the curve only at (1:0:0)
        let f = TernaryQuartic::from_terms(&[
            (r(1.0), [0, 4, 0]),
            (r(1.0), [0, 0, 4]),
            (r(-1.0), [3, 0, 1]),
            (r(0.3), [2, 1, 1]),
            (r(0.2), [1, 1, 2]),
        ])
        .unwrap();
        let z0 = ProjLine::from_real(0.0, 0.0, 1.0).unwrap();
        let b = polish(&f, &z0, &SolverConfig::default()).unwrap();
        assert!(b.is_hyperflex);
        assert!(b.line.distance(&z0) < 1e-10);
    }

    #[test]
    fn singular_quartic_does_not_yield_28() {
        // (x^2 + y^2 - z^2)^2 is a doubled conic
        let f = TernaryQuartic::from_terms(&[
            (r(1.0), [4, 0, 0]),
            (r(2.0), [2, 2, 0]),
            (r(-2.0), [2, 0, 2]),
            (r(1.0), [0, 4, 0]),
            (r(-2.0), [0, 2, 2]),
            (r(1.0), [0, 0, 4]),
        ])
        .unwrap();
        assert!(solve_all(&f, &SolverConfig::default()).is_err());
    }

    #[test]
    fn bad_config_is_rejected() {
        let cfg = SolverConfig {
            accept_tol: -1.0,
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_all(&TernaryQuartic::fermat(), &cfg),
            Err(SolveError::InvalidConfig(_))
        ));
    }
}
