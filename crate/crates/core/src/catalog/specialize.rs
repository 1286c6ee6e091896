use serde::{Deserialize, Serialize};

use super::{entry, CatalogError, ParametricQuartic, TypeId};
use crate::grp::{Mat3, ProjTransform};
use crate::polynum::{distinct_roots, RootOptions, UniPoly, C64};

/// Relative rank and consistency threshold.
const RANK_TOL: f64 = 1e-9;

/// Parameters `offset + Σ t_j basis[j]`, together with the scalar each
/// generator multiplies the quartic by.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSolution {
    pub lambdas: Vec<C64>,
    pub offset: Vec<C64>,
    pub basis: Vec<Vec<C64>>,
}

impl AffineSolution {
    /// Whether `w · p = c` holds on the whole solution space.
    pub fn satisfies(&self, w: &[C64], c: C64, tol: f64) -> bool {
        let dot = |v: &[C64]| v.iter().zip(w).map(|(a, b)| a * b).sum::<C64>();
        (dot(&self.offset) - c).norm() <= tol * c.norm().max(1.0)
            && self.basis.iter().all(|b| dot(b).norm() <= tol)
    }

    /// The value of parameter `k` if the solution space fixes it.
    pub fn pinned(&self, k: usize, tol: f64) -> Option<C64> {
        self.basis
            .iter()
            .all(|b| b[k].norm() <= tol)
            .then_some(self.offset[k])
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SpecializationResult {
    Infeasible,
    Solutions(Vec<AffineSolution>),
}

impl SpecializationResult {
    pub fn solutions(&self) -> &[AffineSolution] {
        match self {
            SpecializationResult::Infeasible => &[],
            SpecializationResult::Solutions(s) => s,
        }
    }
}

/// Particular solution and null-space basis of `a x = b`, by complete
/// pivoting; `None` if inconsistent.
fn solve_affine(
    mut a: Vec<Vec<C64>>,
    mut b: Vec<C64>,
    n: usize,
) -> Option<(Vec<C64>, Vec<Vec<C64>>)> {
    let m = a.len();
    let scale = a
        .iter()
        .flatten()
        .chain(&b)
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = RANK_TOL * scale;
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while rank < m.min(n) {
        let mut best = (rank, rank, 0.0);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, &c) in cols.iter().enumerate().skip(rank) {
                if row[c].norm() > best.2 {
                    best = (i, j, row[c].norm());
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        a.swap(rank, best.0);
        b.swap(rank, best.0);
        cols.swap(rank, best.1);
        let pc = cols[rank];
        let inv = a[rank][pc].inv();
        for x in a[rank].iter_mut() {
            *x *= inv;
        }
        b[rank] *= inv;
        let (pivot_row, pivot_rhs) = (a[rank].clone(), b[rank]);
        for (i, (row, rhs)) in a.iter_mut().zip(b.iter_mut()).enumerate() {
            let f = row[pc];
            if i != rank && f != C64::new(0.0, 0.0) {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= y * f;
                }
                *rhs -= pivot_rhs * f;
            }
        }
        rank += 1;
    }
    if b.iter().skip(rank).any(|z| z.norm() > tol) {
        return None;
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for k in 0..rank {
        x[cols[k]] = b[k];
    }
    let basis = (rank..n)
        .map(|f| {
            let mut v = vec![C64::new(0.0, 0.0); n];
            v[cols[f]] = C64::new(1.0, 0.0);
            for k in 0..rank {
                v[cols[k]] = -a[k][cols[f]];
            }
            v
        })
        .collect();
    Some((x, basis))
}

fn eigenvalues(m: &Mat3) -> Vec<C64> {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = crate::polynum::det(m.iter().map(|r| r.to_vec()).collect());
    let one = C64::new(1.0, 0.0);
    let p = UniPoly::new(vec![-det, minors, -tr, one]).expect("finite matrix entries");
    distinct_roots(&p, 1e-6, &RootOptions::default())
        .expect("cubic with unit leading coefficient")
        .into_iter()
        .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
        .collect()
}

/// Scalars `λ` with `f∘m = λ f` possible: products of four eigenvalues
/// of `m`.
fn lambda_candidates(m: &Mat3) -> Vec<C64> {
    let mu = eigenvalues(m);
    let mut out: Vec<C64> = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 - a {
            let c = 4 - a - b;
            let l = mu[0].powu(a as u32) * mu[1].powu(b as u32) * mu[2].powu(c as u32);
            if !out
                .iter()
                .any(|x| (x - l).norm() <= 1e-7 * l.norm().max(1.0))
            {
                out.push(l);
            }
        }
    }
    out
}

fn compose(
    offset: &[C64],
    basis: &[Vec<C64>],
    x: &[C64],
    null: &[Vec<C64>],
) -> (Vec<C64>, Vec<Vec<C64>>) {
    let n = offset.len();
    let apply = |t: &[C64]| -> Vec<C64> {
        (0..n)
            .map(|k| basis.iter().zip(t).map(|(b, ti)| b[k] * ti).sum())
            .collect()
    };
    let lin = apply(x);
    let new_offset = offset.iter().zip(&lin).map(|(o, l)| o + l).collect();
    let new_basis = null.iter().map(|v| apply(v)).collect();
    (new_offset, new_basis)
}

fn search(
    family: &ParametricQuartic,
    gens: &[Mat3],
    offset: Vec<C64>,
    basis: Vec<Vec<C64>>,
    lambdas: Vec<C64>,
    out: &mut Vec<AffineSolution>,
) {
    let Some((m, rest)) = gens.split_first() else {
        out.push(AffineSolution {
            lambdas,
            offset,
            basis,
        });
        return;
    };
    let image = family.substituted(m);
    let n = family.arity();
    for lambda in lambda_candidates(m) {
        let rows: Vec<Vec<C64>> = (0..15)
            .map(|k| {
                (0..n)
                    .map(|j| image.linear_part(j)[k] - lambda * family.linear_part(j)[k])
                    .collect()
            })
            .collect();
        let rhs: Vec<C64> = (0..15)
            .map(|k| lambda * family.constant_part()[k] - image.constant_part()[k])
            .collect();
        let Some((x, null)) = solve_affine(rows, rhs, n) else {
            continue;
        };
        let next = family.restricted(&x, &null);
        if next.constant_part().iter().all(|z| z.norm() <= RANK_TOL) && next.is_constant() {
            continue;
        }
        let (o, b) = compose(&offset, &basis, &x, &null);
        let mut l = lambdas.clone();
        l.push(lambda);
        search(&next, rest, o, b, l, out);
    }
}

/// Parameter values at which every generator maps the family's quartic to
/// a multiple of itself.
pub fn specialize(
    family: &ParametricQuartic,
    generators: &[ProjTransform],
) -> Result<SpecializationResult, CatalogError> {
    if family.arity() == 0 || family.is_constant() {
        return Err(CatalogError::DegenerateFamily);
    }
    let n = family.arity();
    let identity: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| C64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mats: Vec<Mat3> = generators.iter().map(|g| *g.inverse_matrix()).collect();
    let mut out = Vec::new();
    search(
        family,
        &mats,
        vec![C64::new(0.0, 0.0); n],
        identity,
        Vec::new(),
        &mut out,
    );
    Ok(if out.is_empty() {
        SpecializationResult::Infeasible
    } else {
        SpecializationResult::Solutions(out)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Solid,
    Dashed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EdgeOutcome {
    Confirmed,
    Failed(String),
    NotChecked(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeEdge {
    pub from: TypeId,
    pub to: TypeId,
    pub kind: EdgeKind,
    pub label: String,
    pub method: String,
    pub results: Vec<SpecializationResult>,
    pub outcome: EdgeOutcome,
}

const CHECK_TOL: f64 = 1e-9;

fn c(x: f64, y: f64) -> C64 {
    C64::new(x, y)
}

fn unit(n: usize, k: usize) -> Vec<C64> {
    (0..n)
        .map(|j| c(if j == k { 1.0 } else { 0.0 }, 0.0))
        .collect()
}

/// Some solution pins parameter `k` to `value`.
fn pins(r: &SpecializationResult, k: usize, value: C64) -> bool {
    r.solutions().iter().any(|s| {
        s.pinned(k, CHECK_TOL)
            .is_some_and(|v| (v - value).norm() <= CHECK_TOL * value.norm().max(1.0))
    })
}

fn outcome(ok: bool, what: impl Into<String>) -> EdgeOutcome {
    if ok {
        EdgeOutcome::Confirmed
    } else {
        EdgeOutcome::Failed(what.into())
    }
}

fn run(family: &ParametricQuartic, gens: &[ProjTransform]) -> SpecializationResult {
    specialize(family, gens).unwrap_or(SpecializationResult::Infeasible)
}

/// Change of basis taking the Type V family towards the Fermat quartic:
/// rows `(1, 1, 0), (s, -s, 0), (0, 0, 8^(1/4))`.
pub fn type_v_conjugator(s: C64) -> Mat3 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    [[o, o, z], [s, -s, z], [z, z, c(8f64.powf(0.25), 0.0)]]
}

fn edge(from: TypeId, to: TypeId, kind: EdgeKind, label: &str, method: &str) -> LatticeEdge {
    LatticeEdge {
        from,
        to,
        kind,
        label: label.into(),
        method: method.into(),
        results: Vec::new(),
        outcome: EdgeOutcome::NotChecked(String::new()),
    }
}

fn not_checked(from: TypeId, to: TypeId, label: &str, why: &str) -> LatticeEdge {
    let mut e = edge(from, to, EdgeKind::Solid, label, "none");
    e.outcome = EdgeOutcome::NotChecked(why.into());
    e
}

/// Runs the specializations behind the subgroup lattice edges.
pub fn lattice_report() -> Vec<LatticeEdge> {
    let gens = |id: TypeId| entry(id).generators.clone();
    let fam = |id: TypeId| entry(id).family.clone();
    let real = |x: f64| c(x, 0.0);
    let mut edges = Vec::new();

    edges.push(not_checked(
        TypeId::IV,
        TypeId::I,
        "a = 3(-1 ± √-7)/2",
        "needs a change of basis to the Klein coordinates",
    ));

    let mut e = edge(
        TypeId::IV,
        TypeId::II,
        EdgeKind::Solid,
        "a = 0",
        "Type IV family against the Type II generators",
    );
    let r = run(&fam(TypeId::IV), &gens(TypeId::II));
    e.outcome = outcome(pins(&r, 0, real(0.0)), "no solution with a = 0");
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::V,
        TypeId::II,
        EdgeKind::Solid,
        "a = 0, ±6",
        "Type V family directly and after the changes of basis with s = 1 and s = i, against the Type II generators",
    );
    let direct = run(&fam(TypeId::V), &gens(TypeId::II));
    let plus = run(
        &fam(TypeId::V).substituted(&type_v_conjugator(real(1.0))),
        &gens(TypeId::II),
    );
    let minus = run(
        &fam(TypeId::V).substituted(&type_v_conjugator(c(0.0, 1.0))),
        &gens(TypeId::II),
    );
    let ok =
        pins(&direct, 0, real(0.0)) && pins(&plus, 0, real(6.0)) && pins(&minus, 0, real(-6.0));
    e.outcome = outcome(ok, "expected a = 0, 6 and -6 respectively");
    e.results = vec![direct, plus, minus];
    edges.push(e);

    let mut e = edge(
        TypeId::V,
        TypeId::III,
        EdgeKind::Solid,
        "a = ±2√-3",
        "Type V family against the Type III generators",
    );
    let r = run(&fam(TypeId::V), &gens(TypeId::III));
    let s = c(0.0, 2.0 * 3f64.sqrt());
    e.outcome = outcome(
        pins(&r, 0, s) || pins(&r, 0, -s),
        "no solution with a = ±2√-3",
    );
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::VIII,
        TypeId::III,
        EdgeKind::Solid,
        "a = 0",
        "Type VIII family against its generator and the extra automorphism diag(i, 1, 1)",
    );
    let mut g = gens(TypeId::VIII);
    g.push(ProjTransform::diagonal([c(0.0, 1.0), real(1.0), real(1.0)]).expect("invertible"));
    let r = run(&fam(TypeId::VIII), &g);
    e.outcome = outcome(pins(&r, 0, real(0.0)), "no solution with a = 0");
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::IX,
        TypeId::IV,
        EdgeKind::Solid,
        "a = 0",
        "Type IX family against the Type IV generators",
    );
    let r = run(&fam(TypeId::IX), &gens(TypeId::IV));
    e.outcome = outcome(pins(&r, 0, real(0.0)), "no solution with a = 0");
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::VII,
        TypeId::V,
        EdgeKind::Solid,
        "b = 0",
        "Type VII family against the Type V generators",
    );
    let r = run(&fam(TypeId::VII), &gens(TypeId::V));
    let ok = !r.solutions().is_empty()
        && r.solutions().iter().all(|s| {
            s.pinned(1, CHECK_TOL)
                .is_some_and(|v| v.norm() <= CHECK_TOL)
        });
    e.outcome = outcome(ok, "solutions do not all have b = 0");
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::VII,
        TypeId::IV,
        EdgeKind::Dashed,
        "",
        "Type VII family against the Type IV generators",
    );
    let r = run(&fam(TypeId::VII), &gens(TypeId::IV));
    let vii = entry(TypeId::VII);
    let ok = r
        .solutions()
        .iter()
        .all(|s| s.dimension() == 0 && vii.excluded_by(&s.offset).is_some());
    e.outcome = outcome(ok, "a solution lies off the excluded locus");
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::X,
        TypeId::VII,
        EdgeKind::Solid,
        "{±a, ±b, ±c} not all distinct",
        "Type X family against its generators and the extra automorphism swapping x and z",
    );
    let mut g = gens(TypeId::X);
    g.push(
        ProjTransform::from_rows([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
            .expect("invertible"),
    );
    let r = run(&fam(TypeId::X), &g);
    let w: Vec<C64> = unit(3, 0)
        .iter()
        .zip(unit(3, 1))
        .map(|(a, b)| a - b)
        .collect();
    e.outcome = outcome(
        r.solutions()
            .iter()
            .any(|s| s.satisfies(&w, real(0.0), CHECK_TOL)),
        "no solution with a = b",
    );
    e.results.push(r);
    edges.push(e);

    let mut e = edge(
        TypeId::XII,
        TypeId::X,
        EdgeKind::Solid,
        "b = 0",
        "Type XII family against the Type X generators",
    );
    let r = run(&fam(TypeId::XII), &gens(TypeId::X));
    e.outcome = outcome(pins(&r, 1, real(0.0)), "no solution with b = 0");
    e.results.push(r);
    edges.push(e);

    edges.push(not_checked(
        TypeId::XII,
        TypeId::IX,
        "a = -2, b = 0, c = -d",
        "needs a change of basis to the Type IX coordinates",
    ));
    edges.push(not_checked(
        TypeId::XI,
        TypeId::VIII,
        "a = -1 or b = -1",
        "needs a change of basis to the Type VIII coordinates",
    ));
    edges.push(not_checked(
        TypeId::XI,
        TypeId::VI,
        "a = ζ3 or b = ζ3",
        "needs a change of basis to the Type VI coordinates",
    ));

    let mut e = edge(
        TypeId::XII,
        TypeId::VIII,
        EdgeKind::Dashed,
        "",
        "Type XII family against the Type VIII generator",
    );
    let r = run(&fam(TypeId::XII), &gens(TypeId::VIII));
    e.outcome = outcome(r == SpecializationResult::Infeasible, "a solution exists");
    e.results.push(r);
    edges.push(e);

    edges
}
