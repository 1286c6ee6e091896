use std::sync::OnceLock;

use super::{
    near, zeta, CurveTypeEntry, Exclusion, FigureExample, ParametricQuartic, RealClaim, TypeId,
};
use crate::equivariant::ExpectedPattern;
use crate::grp::{IsoLabel, ProjTransform};
use crate::polynum::C64;
use crate::projgeom::TernaryQuartic;

const E: IsoLabel = IsoLabel::Cyclic(1);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn mat(rows: [[C64; 3]; 3]) -> ProjTransform {
    ProjTransform::new(rows).expect("catalog generators are invertible")
}

fn real_mat(rows: [[f64; 3]; 3]) -> ProjTransform {
    ProjTransform::from_rows(rows).expect("catalog generators are invertible")
}

fn diag(d: [C64; 3]) -> ProjTransform {
    ProjTransform::diagonal(d).expect("catalog generators are invertible")
}

fn identity_params(p: &[C64]) -> Vec<C64> {
    p.to_vec()
}

/// `x(x - y)(x - ay)(x - by)` is affine in `a + b` and `ab`.
fn xi_family_params(p: &[C64]) -> Vec<C64> {
    vec![p[0] + p[1], p[0] * p[1]]
}

const FERMAT: [[u32; 3]; 3] = [[4, 0, 0], [0, 4, 0], [0, 0, 4]];

fn fermat_family(names: &[&str]) -> ParametricQuartic {
    FERMAT
        .iter()
        .fold(ParametricQuartic::new(names), |f, &e| f.real(1.0, e, None))
}

fn cycle() -> ProjTransform {
    real_mat([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
}

fn swap_xy() -> ProjTransform {
    real_mat([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
}

fn quarter_turn() -> ProjTransform {
    real_mat([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
}

fn flip_x() -> ProjTransform {
    real_mat([[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: TypeId,
    group_name: &'static str,
    group_order: usize,
    gap_id: &'static str,
    param_names: Vec<&'static str>,
    family: ParametricQuartic,
    generators: Vec<ProjTransform>,
    exclusions: Vec<Exclusion>,
    expected: ExpectedPattern,
    figure: FigureExample,
) -> CurveTypeEntry {
    CurveTypeEntry {
        id,
        group_name,
        group_order,
        gap_id,
        param_names,
        family,
        to_family: identity_params,
        generators,
        exclusions,
        expected,
        figure,
        group: OnceLock::new(),
    }
}

fn figure(params: &[f64], real_count: usize, claims: Vec<RealClaim>) -> FigureExample {
    FigureExample {
        params: params.iter().map(|&x| re(x)).collect(),
        literal: None,
        real_count,
        claims,
    }
}

pub(super) fn build() -> Vec<CurveTypeEntry> {
    let i = C64::new(0.0, 1.0);
    let one = re(1.0);
    let zero = re(0.0);
    let w = zeta(3, 1);
    let sqrt_m7 = C64::new(0.0, 7f64.sqrt());
    let z7 = |k| zeta(7, k);
    let alpha = (z7(5) - z7(2)) / sqrt_m7;
    let beta = (z7(6) - z7(1)) / sqrt_m7;
    let gamma = (z7(3) - z7(4)) / sqrt_m7;
    let h = |a: f64, b: f64| C64::new(a, b) / 2.0;

    let klein = entry(
        TypeId::I,
        "PSL2(7)",
        168,
        "[168,42]",
        vec![],
        ParametricQuartic::new(&[])
            .real(1.0, [3, 1, 0], None)
            .real(1.0, [0, 3, 1], None)
            .real(1.0, [1, 0, 3], None),
        vec![
            diag([z7(4), z7(2), z7(1)]),
            real_mat([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]),
            mat([
                [alpha, gamma, beta],
                [gamma, beta, alpha],
                [beta, alpha, gamma],
            ]),
        ],
        vec![],
        ExpectedPattern::new("PSL2(7)", 168).term(1, "S3", IsoLabel::S3, 6),
        figure(&[], 4, vec![]),
    );

    let dyck = entry(
        TypeId::II,
        "C4^2:S3",
        96,
        "[96,64]",
        vec![],
        fermat_family(&[]),
        vec![
            cycle(),
            mat([[-i, zero, zero], [zero, zero, one], [zero, i, zero]]),
        ],
        vec![],
        ExpectedPattern::new("C4^2:S3", 96)
            .term(1, "C6", IsoLabel::Cyclic(6), 6)
            .term(1, "C8", IsoLabel::Cyclic(8), 8),
        figure(
            &[],
            4,
            vec![RealClaim::Lines(vec![
                [1.0, -1.0, -1.0],
                [1.0, 1.0, -1.0],
                [1.0, -1.0, 1.0],
                [1.0, 1.0, 1.0],
            ])],
        ),
    );

    let iii = entry(
        TypeId::III,
        "C4oA4",
        48,
        "[48,33]",
        vec![],
        fermat_family(&[]).term(w * 4.0 + 2.0, [2, 2, 0], None),
        vec![
            mat([
                [h(1.0, 1.0), h(-1.0, 1.0), zero],
                [h(1.0, 1.0), h(1.0, -1.0), zero],
                [zero, zero, w * w],
            ]),
            mat([
                [h(1.0, 1.0), h(-1.0, -1.0), zero],
                [h(-1.0, 1.0), h(-1.0, 1.0), zero],
                [zero, zero, w],
            ]),
        ],
        vec![],
        ExpectedPattern::new("C4oA4", 48)
            .term(1, "C2", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(1, "C12", IsoLabel::Cyclic(12), 12),
        figure(&[], 0, vec![]),
    );

    let iv = entry(
        TypeId::IV,
        "S4",
        24,
        "[24,12]",
        vec!["a"],
        fermat_family(&["a"])
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [0, 2, 2], Some(0))
            .real(1.0, [2, 0, 2], Some(0)),
        vec![cycle(), quarter_turn()],
        vec![
            Exclusion {
                rule: "a = 0",
                promoted: Some(TypeId::II),
                holds: |p| near(p[0], C64::new(0.0, 0.0)),
            },
            Exclusion {
                rule: "a = 3(-1 ± √-7)/2",
                promoted: Some(TypeId::I),
                holds: |p| {
                    let s = C64::new(0.0, 7f64.sqrt());
                    near(p[0], (s - 1.0) * 1.5) || near(p[0], (-s - 1.0) * 1.5)
                },
            },
        ],
        ExpectedPattern::new("S4", 24)
            .term(1, "C2^o", IsoLabel::Cyclic(2), 2)
            .generator_class(6)
            .term(1, "C2^e", IsoLabel::Cyclic(2), 2)
            .generator_class(3)
            .term(1, "S3", IsoLabel::S3, 6),
        figure(&[-3.0], 16, vec![RealClaim::Orbits(vec![(2, 12), (6, 4)])]),
    );

    let v = entry(
        TypeId::V,
        "P",
        16,
        "[16,13]",
        vec!["a"],
        fermat_family(&["a"]).real(1.0, [2, 2, 0], Some(0)),
        vec![flip_x(), diag([i, -i, one]), quarter_turn()],
        vec![
            Exclusion {
                rule: "a ∈ {0, ±6}",
                promoted: Some(TypeId::II),
                holds: |p| {
                    [0.0, 6.0, -6.0]
                        .iter()
                        .any(|&v| near(p[0], C64::new(v, 0.0)))
                },
            },
            Exclusion {
                rule: "a = ±2√-3",
                promoted: Some(TypeId::III),
                holds: |p| {
                    let s = C64::new(0.0, 2.0 * 3f64.sqrt());
                    near(p[0], s) || near(p[0], -s)
                },
            },
        ],
        ExpectedPattern::new("P", 16)
            .term(1, "C2^(1)", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(1, "C2^(2)", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(1, "C2^(3)", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(1, "C4^Z", IsoLabel::Cyclic(4), 4)
            .central(true),
        figure(&[-4.0], 8, vec![RealClaim::Orbits(vec![(2, 4), (4, 4)])]),
    );

    let vi = entry(
        TypeId::VI,
        "C9",
        9,
        "[9,1]",
        vec![],
        ParametricQuartic::new(&[])
            .real(1.0, [4, 0, 0], None)
            .real(1.0, [1, 3, 0], None)
            .real(1.0, [0, 1, 3], None),
        vec![diag([w, one, zeta(9, 1)])],
        vec![],
        ExpectedPattern::new("C9", 9)
            .term(3, "e", E, 1)
            .term(1, "C9", IsoLabel::Cyclic(9), 9),
        figure(
            &[],
            4,
            vec![RealClaim::Orbits(vec![(1, 1), (1, 1), (1, 1), (9, 1)])],
        ),
    );

    let vii = entry(
        TypeId::VII,
        "D8",
        8,
        "[8,3]",
        vec!["a", "b"],
        fermat_family(&["a", "b"])
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [1, 1, 2], Some(1)),
        vec![diag([i, -i, one]), swap_xy()],
        vec![Exclusion {
            rule: "b = 0",
            promoted: Some(TypeId::V),
            holds: |p| near(p[1], C64::new(0.0, 0.0)),
        }],
        ExpectedPattern::new("D8", 8)
            .term(1, "e", E, 1)
            .term(2, "C2^(1)", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(2, "C2^(2)", IsoLabel::Cyclic(2), 2)
            .central(false)
            .term(1, "C2^Z", IsoLabel::Cyclic(2), 2)
            .central(true),
        figure(&[-3.0, 1.0], 8, vec![]),
    );

    let viii = entry(
        TypeId::VIII,
        "C6",
        6,
        "[6,2]",
        vec!["a"],
        ParametricQuartic::new(&["a"])
            .real(1.0, [4, 0, 0], None)
            .real(1.0, [0, 4, 0], None)
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [0, 1, 3], None),
        vec![diag([re(-1.0), one, w])],
        vec![Exclusion {
            rule: "a = 0",
            promoted: Some(TypeId::III),
            holds: |p| near(p[0], C64::new(0.0, 0.0)),
        }],
        ExpectedPattern::new("C6", 6)
            .term(4, "e", E, 1)
            .term(1, "C2", IsoLabel::Cyclic(2), 2)
            .term(1, "C6", IsoLabel::Cyclic(6), 6),
        figure(
            &[-3.0],
            4,
            vec![RealClaim::Orbits(vec![(1, 2), (2, 1), (6, 1)])],
        ),
    );

    let ix = entry(
        TypeId::IX,
        "S3",
        6,
        "[6,1]",
        vec!["a", "b"],
        ParametricQuartic::new(&["a", "b"])
            .real(1.0, [3, 0, 1], None)
            .real(1.0, [0, 3, 1], None)
            .real(1.0, [2, 2, 0], None)
            .real(1.0, [1, 1, 2], Some(0))
            .real(1.0, [0, 0, 4], Some(1)),
        vec![diag([w, w * w, one]), swap_xy()],
        vec![Exclusion {
            rule: "a = 0",
            promoted: Some(TypeId::IV),
            holds: |p| near(p[0], C64::new(0.0, 0.0)),
        }],
        ExpectedPattern::new("S3", 6)
            .term(3, "e", E, 1)
            .term(3, "C2", IsoLabel::Cyclic(2), 2)
            .term(1, "S3", IsoLabel::S3, 6),
        figure(&[-25.0, 10.0], 8, vec![]),
    );

    let x = entry(
        TypeId::X,
        "K4",
        4,
        "[4,2]",
        vec!["a", "b", "c"],
        fermat_family(&["a", "b", "c"])
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [0, 2, 2], Some(1))
            .real(1.0, [2, 0, 2], Some(2)),
        vec![
            flip_x(),
            real_mat([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]),
        ],
        vec![Exclusion {
            rule: "{±a, ±b, ±c} not all distinct",
            promoted: Some(TypeId::VII),
            holds: |p| {
                let vals: Vec<C64> = p.iter().flat_map(|&v| [v, -v]).collect();
                (0..6).any(|j| (j + 1..6).any(|k| near(vals[j], vals[k])))
            },
        }],
        ExpectedPattern::new("K4", 4)
            .term(5, "e", E, 1)
            .term(2, "C2^L", IsoLabel::Cyclic(2), 2)
            .term(2, "C2^R", IsoLabel::Cyclic(2), 2),
        figure(
            &[-9.0, -3.0, -8.0],
            16,
            vec![RealClaim::Orbits(vec![(1, 4); 4])],
        ),
    );

    // x(x-y)(x-ay)(x-by) = x^4 - (1+s)x^3y + (s+p)x^2y^2 - p xy^3 with s = a+b, p = ab
    let mut xi = entry(
        TypeId::XI,
        "C3",
        3,
        "[3,1]",
        vec!["a", "b"],
        ParametricQuartic::new(&["a+b", "ab"])
            .real(1.0, [4, 0, 0], None)
            .real(-1.0, [3, 1, 0], None)
            .real(-1.0, [3, 1, 0], Some(0))
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [2, 2, 0], Some(1))
            .real(-1.0, [1, 3, 0], Some(1))
            .real(1.0, [0, 1, 3], None),
        vec![diag([one, one, w])],
        vec![
            Exclusion {
                rule: "a = ζ3 or b = ζ3",
                promoted: Some(TypeId::VI),
                holds: |p| p.iter().any(|&v| near(v, zeta(3, 1))),
            },
            Exclusion {
                rule: "a = -1 or b = -1",
                promoted: Some(TypeId::VIII),
                holds: |p| p.iter().any(|&v| near(v, C64::new(-1.0, 0.0))),
            },
            Exclusion {
                rule: "a = 1",
                promoted: None,
                holds: |p| near(p[0], C64::new(1.0, 0.0)),
            },
            Exclusion {
                rule: "b = 1 - a",
                promoted: None,
                holds: |p| near(p[1], C64::new(1.0, 0.0) - p[0]),
            },
            Exclusion {
                rule: "(x - a)(x - b) = x^2 + x + 1",
                promoted: Some(TypeId::VI),
                holds: |p| {
                    near(p[0] + p[1], C64::new(-1.0, 0.0)) && near(p[0] * p[1], C64::new(1.0, 0.0))
                },
            },
        ],
        ExpectedPattern::new("C3", 3)
            .term(9, "e", E, 1)
            .term(1, "C3", IsoLabel::Cyclic(3), 3),
        figure(&[2.0, 3.0], 4, vec![RealClaim::Fixed(1)]),
    );
    xi.to_family = xi_family_params;

    let mut xii = entry(
        TypeId::XII,
        "C2",
        2,
        "[2,1]",
        vec!["a", "b", "c", "d"],
        fermat_family(&["a", "b", "c", "d"])
            .real(1.0, [2, 2, 0], Some(0))
            .real(1.0, [2, 1, 1], Some(1))
            .real(1.0, [2, 0, 2], Some(2))
            .real(1.0, [0, 2, 2], Some(3)),
        vec![flip_x()],
        vec![
            Exclusion {
                rule: "a = -2, b = 0, c = -d",
                promoted: Some(TypeId::IX),
                holds: |p| {
                    near(p[0], C64::new(-2.0, 0.0))
                        && near(p[1], C64::new(0.0, 0.0))
                        && near(p[2], -p[3])
                },
            },
            Exclusion {
                rule: "b = 0",
                promoted: Some(TypeId::X),
                holds: |p| near(p[1], C64::new(0.0, 0.0)),
            },
        ],
        ExpectedPattern::new("C2", 2)
            .term(12, "e", E, 1)
            .term(4, "C2", IsoLabel::Cyclic(2), 2),
        figure(
            &[],
            4,
            vec![RealClaim::Orbits(vec![(1, 2), (2, 1), (2, 1)])],
        ),
    );
    xii.figure.literal = Some(
        TernaryQuartic::from_terms(&[
            (one, [4, 0, 0]),
            (re(-1.0), [2, 2, 0]),
            (re(-4.0), [2, 0, 2]),
            (one, [0, 4, 0]),
            (re(-1.0), [0, 2, 2]),
            (re(-1.0), [0, 0, 4]),
        ])
        .expect("nonzero quartic"),
    );

    vec![klein, dyck, iii, iv, v, vi, vii, viii, ix, x, xi, xii]
}
