//! Quartic forms, points and lines of the complex projective plane, with
//! canonical scaling and the projective group actions on each.
//!
//! Convention: a transformation `g` sends a form `f` to `f ∘ g⁻¹`, a point
//! `p` to `g p`, and a line (row vector) `L` to `L g⁻¹`. Zero sets and
//! incidence are then carried along covariantly.

pub(crate) mod form;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grp::ProjTransform;
use crate::polynum::{BinaryQuartic, C64};
pub(crate) use form::Form;
pub use form::{monomial_index, monomials};

/// Relative slack when two entries compete for the canonical pivot.
const PIVOT_TIE: f64 = 1e-9;

pub const DEFAULT_MATCH_TOL: f64 = 1e-6;
pub const DEFAULT_REAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("parametrization points are not on the line or not distinct")]
    BadParametrization,
}

/// Index of the entry used as the canonical pivot: the first entry whose
/// modulus is within `PIVOT_TIE` of the largest.
pub(crate) fn pivot_index(v: &[C64]) -> Option<usize> {
    let top = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return None;
    }
    v.iter().position(|z| z.norm() >= top * (1.0 - PIVOT_TIE))
}

pub(crate) fn canonicalize(v: &mut [C64]) -> Result<(), GeomError> {
    if let Some(i) = v.iter().position(|z| !z.is_finite()) {
        return Err(GeomError::NonFinite(i));
    }
    let p = pivot_index(v).ok_or(GeomError::ZeroVector)?;
    let s = v[p].inv();
    for z in v.iter_mut() {
        *z *= s;
    }
    v[p] = C64::new(1.0, 0.0);
    Ok(())
}

/// Entrywise distance after rescaling `b` to agree with `a` at the pivot of
/// `a`, minimized over the pivots of both. Unlike a plain comparison of
/// canonical forms this does not jump when two entries tie for the pivot.
pub(crate) fn projective_distance(a: &[C64], b: &[C64]) -> f64 {
    let one_way = |x: &[C64], y: &[C64]| -> f64 {
        let Some(p) = pivot_index(x) else {
            return f64::INFINITY;
        };
        if y[p] == C64::new(0.0, 0.0) {
            return f64::INFINITY;
        }
        let sx = x[p].inv();
        let sy = y[p].inv();
        x.iter()
            .zip(y)
            .map(|(&u, &w)| (u * sx - w * sy).norm())
            .fold(0.0, f64::max)
    };
    one_way(a, b).min(one_way(b, a))
}

/// A quartic form in canonical scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TernaryQuartic {
    coeffs: [C64; 15],
}

impl TernaryQuartic {
    /// Coefficients are ordered as in [`monomials(4)`](monomials).
    pub fn new(mut coeffs: [C64; 15]) -> Result<Self, GeomError> {
        canonicalize(&mut coeffs)?;
        Ok(TernaryQuartic { coeffs })
    }

    pub fn from_terms(terms: &[(C64, [u32; 3])]) -> Result<Self, GeomError> {
        let mut c = [C64::new(0.0, 0.0); 15];
        for &(coef, e) in terms {
            assert_eq!(
                e.iter().sum::<u32>(),
                4,
                "quartic monomial must have degree 4"
            );
            c[monomial_index(e)] += coef;
        }
        Self::new(c)
    }

    pub fn fermat() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_terms(&[(one, [4, 0, 0]), (one, [0, 4, 0]), (one, [0, 0, 4])])
            .expect("nonzero form")
    }

    pub fn coeffs(&self) -> &[C64; 15] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> C64 {
        self.coeffs[monomial_index(e)]
    }

    pub(crate) fn form(&self) -> Form {
        Form {
            degree: 4,
            c: self.coeffs.to_vec(),
        }
    }

    pub fn eval(&self, p: &[C64; 3]) -> C64 {
        self.form().eval(p)
    }

    pub fn gradient(&self, p: &[C64; 3]) -> [C64; 3] {
        let f = self.form();
        [
            f.partial(0).eval(p),
            f.partial(1).eval(p),
            f.partial(2).eval(p),
        ]
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn distance(&self, other: &TernaryQuartic) -> f64 {
        projective_distance(&self.coeffs, &other.coeffs)
    }
}

/// A point of the plane in canonical scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint(pub(crate) [C64; 3]);

impl ProjPoint {
    pub fn new(mut v: [C64; 3]) -> Result<Self, GeomError> {
        canonicalize(&mut v)?;
        Ok(ProjPoint(v))
    }

    pub fn coords(&self) -> &[C64; 3] {
        &self.0
    }

    pub fn distance(&self, other: &ProjPoint) -> f64 {
        projective_distance(&self.0, &other.0)
    }
}

/// The line `a x + b y + c z = 0`, stored as `(a, b, c)` in canonical scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjLine(pub(crate) [C64; 3]);

impl ProjLine {
    pub fn new(mut v: [C64; 3]) -> Result<Self, GeomError> {
        canonicalize(&mut v)?;
        Ok(ProjLine(v))
    }

    pub fn from_real(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        Self::new([C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0)])
    }

    pub fn coords(&self) -> &[C64; 3] {
        &self.0
    }

    pub fn distance(&self, other: &ProjLine) -> f64 {
        projective_distance(&self.0, &other.0)
    }

    pub fn matches(&self, other: &ProjLine, tol: f64) -> bool {
        self.distance(other) < tol
    }

    pub fn incidence(&self, p: &[C64; 3]) -> C64 {
        self.0.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    /// Projects the two standard basis vectors least aligned with the
    /// normal onto the line.
    pub fn parametrization(&self) -> LineParametrization {
        let l = self.0;
        let norm2: f64 = l.iter().map(|z| z.norm_sqr()).sum();
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| l[a].norm().total_cmp(&l[b].norm()).then(a.cmp(&b)));
        let project = |i: usize| -> [C64; 3] {
            let mut e = [C64::new(0.0, 0.0); 3];
            e[i] = C64::new(1.0, 0.0);
            for (k, ek) in e.iter_mut().enumerate() {
                *ek -= l[i] * l[k].conj() / norm2;
            }
            e
        };
        let (i, j) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
        LineParametrization {
            base: project(i),
            direction: project(j),
        }
    }

    /// True when some rescaling of the coordinates is real, tested through
    /// the 2×2 minors of `[v; conj v]` with `v` of unit length.
    pub fn is_real(&self, tol: f64) -> bool {
        let n = self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<C64> = self.0.iter().map(|z| z / n).collect();
        (0..3).all(|i| (i + 1..3).all(|j| (v[i] * v[j].conj() - v[j] * v[i].conj()).norm() < tol))
    }
}

/// `t ↦ base + t·direction`, with `direction` itself at `t = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineParametrization {
    base: [C64; 3],
    direction: [C64; 3],
}

impl LineParametrization {
    pub fn new(line: &ProjLine, base: [C64; 3], direction: [C64; 3]) -> Result<Self, GeomError> {
        let on_line = |p: &[C64; 3]| {
            let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
            scale > 0.0 && line.incidence(p).norm() < 1e-10 * scale
        };
        let minors = [
            base[0] * direction[1] - base[1] * direction[0],
            base[0] * direction[2] - base[2] * direction[0],
            base[1] * direction[2] - base[2] * direction[1],
        ];
        let size = base
            .iter()
            .chain(&direction)
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let distinct = minors.iter().any(|m| m.norm() > 1e-10 * size * size);
        if !(on_line(&base) && on_line(&direction) && distinct) {
            return Err(GeomError::BadParametrization);
        }
        Ok(LineParametrization { base, direction })
    }

    pub(crate) fn new_unchecked(base: [C64; 3], direction: [C64; 3]) -> Self {
        LineParametrization { base, direction }
    }

    pub fn base(&self) -> &[C64; 3] {
        &self.base
    }

    pub fn direction(&self) -> &[C64; 3] {
        &self.direction
    }

    pub fn point_at(&self, t: C64) -> [C64; 3] {
        [0, 1, 2].map(|i| self.base[i] + t * self.direction[i])
    }

    pub fn transported(&self, g: &ProjTransform) -> LineParametrization {
        LineParametrization {
            base: g.apply(&self.base),
            direction: g.apply(&self.direction),
        }
    }
}

/// `f(base + t·direction)` as a binary quartic in `t`. An all-zero result
/// (the line lies on the curve) is returned as is.
pub fn restrict_to_line(f: &TernaryQuartic, p: &LineParametrization) -> BinaryQuartic {
    let c = f.form().restrict(&p.base, &p.direction);
    BinaryQuartic::new_unchecked([c[0], c[1], c[2], c[3], c[4]])
}

pub fn act_on_quartic(g: &ProjTransform, f: &TernaryQuartic) -> TernaryQuartic {
    let image = f.form().substitute(g.inverse_matrix());
    let mut c = [C64::new(0.0, 0.0); 15];
    c.copy_from_slice(&image.c);
    TernaryQuartic::new(c).expect("image of a nonzero form under an invertible map is nonzero")
}

pub fn act_on_line(g: &ProjTransform, l: &ProjLine) -> ProjLine {
    ProjLine::new(g.pull_line(&l.0)).expect("invertible image of a nonzero covector")
}

pub fn act_on_point(g: &ProjTransform, p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(g.apply(&p.0)).expect("invertible image of a nonzero vector")
}

pub fn line_is_real(l: &ProjLine, tol: f64) -> bool {
    l.is_real(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, proptest, ProptestConfig};

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

    fn z_axis_line() -> LineParametrization {
        LineParametrization::new(
            &ProjLine::from_real(0.0, 0.0, 1.0).unwrap(),
            [r(1.0), r(0.0), r(0.0)],
            [r(0.0), r(1.0), r(0.0)],
        )
        .unwrap()
    }

    #[test]
    fn fermat_on_z_zero() {
        let b = restrict_to_line(&TernaryQuartic::fermat(), &z_axis_line());
        assert_eq!(b.c, [r(1.0), r(0.0), r(0.0), r(0.0), r(1.0)]);
    }

    #[test]
    fn klein_on_z_zero_keeps_degree_collapse() {
        let b = restrict_to_line(&klein(), &z_axis_line());
        assert_eq!(b.c, [r(0.0), r(1.0), r(0.0), r(0.0), r(0.0)]);
    }

    #[test]
    fn restriction_matches_exact_integer_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let ints: Vec<i64> = (0..15).map(|_| rng.random_range(-9..=9)).collect();
            let p0: [i64; 3] = [0, 1, 2].map(|_| rng.random_range(-5..=5));
            let p1: [i64; 3] = [0, 1, 2].map(|_| rng.random_range(-5..=5));
            // exact expansion of prod (p0_r + t p1_r)^e_r in i128
            let mut exact = [0i128; 5];
            for (e, &c) in monomials(4).iter().zip(&ints) {
                let mut poly = vec![c as i128];
                for r in 0..3 {
                    for _ in 0..e[r] {
                        let mut next = vec![0i128; poly.len() + 1];
                        for (i, &a) in poly.iter().enumerate() {
                            next[i] += a * p0[r] as i128;
                            next[i + 1] += a * p1[r] as i128;
                        }
                        poly = next;
                    }
                }
                for (k, v) in poly.into_iter().enumerate() {
                    exact[k] += v;
                }
            }
            let form = Form {
                degree: 4,
                c: ints.iter().map(|&c| r(c as f64)).collect(),
            };
            let got = form.restrict(&p0.map(|x| r(x as f64)), &p1.map(|x| r(x as f64)));
            for k in 0..5 {
                assert!(
                    (got[k] - r(exact[k] as f64)).norm()
                        <= 1e-10 * (exact[k] as f64).abs().max(1.0)
                );
            }
        }
    }

    #[test]
    fn identity_and_permutation_fix_fermat() {
        let f = TernaryQuartic::fermat();
        assert!(act_on_quartic(&ProjTransform::identity(), &f).distance(&f) < 1e-14);
        let cycle =
            ProjTransform::from_rows([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]).unwrap();
        assert!(act_on_quartic(&cycle, &f).distance(&f) < 1e-14);
    }

    #[test]
    fn parity_fixes_the_xii_family() {
        let (a, b, c, d) = (r(0.7), r(-1.3), r(2.1), r(0.4));
        let f = TernaryQuartic::from_terms(&[
            (r(1.0), [4, 0, 0]),
            (r(1.0), [0, 4, 0]),
            (r(1.0), [0, 0, 4]),
            (a, [2, 2, 0]),
            (b, [2, 1, 1]),
            (c, [2, 0, 2]),
            (d, [0, 2, 2]),
        ])
        .unwrap();
        let g =
            ProjTransform::from_rows([[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        assert!(act_on_quartic(&g, &f).distance(&f) < 1e-14);
    }

    #[test]
    fn cycle_moves_coordinate_line() {
        // g: (x, y, z) -> (z, x, y) sends the line x = 0 to y = 0
        let g =
            ProjTransform::from_rows([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let image = act_on_line(&g, &ProjLine::from_real(1.0, 0.0, 0.0).unwrap());
        assert!(image.distance(&ProjLine::from_real(0.0, 1.0, 0.0).unwrap()) < 1e-15);
        let p = act_on_point(&g, &ProjPoint::new([r(0.0), r(1.0), r(2.0)]).unwrap());
        assert!(image.incidence(p.coords()).norm() < 1e-15);
    }

    #[test]
    fn diagonal_action_on_point() {
        let z3 = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let g = ProjTransform::diagonal([z3, z3 * z3, r(1.0)]).unwrap();
        let p = act_on_point(&g, &ProjPoint::new([r(1.0); 3]).unwrap());
        let want = ProjPoint::new([z3, z3 * z3, r(1.0)]).unwrap();
        assert!(p.distance(&want) < 1e-14);
    }

    #[test]
    fn realness_examples() {
        assert!(ProjLine::from_real(1.0, 1.0, 1.0)
            .unwrap()
            .is_real(DEFAULT_REAL_TOL));
        let i = C64::new(0.0, 1.0);
        assert!(ProjLine::new([i, i, i]).unwrap().is_real(DEFAULT_REAL_TOL));
        assert!(!ProjLine::new([r(1.0), i, r(0.0)])
            .unwrap()
            .is_real(DEFAULT_REAL_TOL));
    }

    #[test]
    fn canonical_parametrization_lies_on_line() {
        let l = ProjLine::new([C64::new(0.2, 1.0), r(-3.0), C64::new(0.0, 0.5)]).unwrap();
        let p = l.parametrization();
        assert!(LineParametrization::new(&l, *p.base(), *p.direction()).is_ok());
    }

    fn c64_from(v: (f64, f64)) -> C64 {
        C64::new(v.0, v.1)
    }

    fn random_transform(e: &[(f64, f64)]) -> Option<ProjTransform> {
        let m = [[0, 1, 2], [3, 4, 5], [6, 7, 8]].map(|row| row.map(|k| c64_from(e[k])));
        ProjTransform::new(m).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn canonical_scale_is_projective_invariant(
            v in proptest::array::uniform3((-5.0f64..5.0, -5.0f64..5.0)),
            lam in (0.01f64..10.0, -3.2f64..3.2),
        ) {
            let v = v.map(c64_from);
            if let Ok(a) = ProjPoint::new(v) {
                let l = C64::from_polar(lam.0, lam.1);
                let b = ProjPoint::new(v.map(|z| z * l)).unwrap();
                prop_assert!(a.distance(&b) < 1e-10);
                let again = ProjPoint::new(a.0).unwrap();
                prop_assert!(again.distance(&a) < 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn incidence_is_preserved(
            e in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9),
            l in proptest::array::uniform3((-2.0f64..2.0, -2.0f64..2.0)),
            t in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let Some(g) = random_transform(&e) else { return Ok(()) };
            let Ok(line) = ProjLine::new(l.map(c64_from)) else { return Ok(()) };
            let par = line.parametrization();
            let p = ProjPoint::new(par.point_at(c64_from(t))).unwrap();
            let gl = act_on_line(&g, &line);
            let gp = act_on_point(&g, &p);
            let cond = g.condition();
            prop_assert!(gl.incidence(gp.coords()).norm() < 1e-8 * cond.max(1.0));
        }

        #[test]
        fn restriction_is_transported_up_to_scale(
            e in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 9),
            fc in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 15),
            l in proptest::array::uniform3((-2.0f64..2.0, -2.0f64..2.0)),
        ) {
            let Some(g) = random_transform(&e) else { return Ok(()) };
            if g.condition() > 1e4 { return Ok(()) }
            let Ok(line) = ProjLine::new(l.map(c64_from)) else { return Ok(()) };
            let mut c = [C64::new(0.0, 0.0); 15];
            for (k, v) in fc.iter().enumerate() { c[k] = c64_from(*v); }
            let Ok(f) = TernaryQuartic::new(c) else { return Ok(()) };
            let par = line.parametrization();
            let before = restrict_to_line(&f, &par);
            let after = restrict_to_line(&act_on_quartic(&g, &f), &par.transported(&g));
            prop_assert!(projective_distance(&before.c, &after.c) < 1e-7);
        }
    }
}
