use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{entry, instantiate, CatalogError, RealClaim, TypeId, INVARIANCE_TOL};
use crate::bitangent::{count_real, solve_all, BitangentSet, SolverConfig};
use crate::equivariant::{
    all_equal, compute_orbits, match_expected, to_burnside, BurnsideElement, MatchReport,
    OrbitDecomposition,
};
use crate::polynum::C64;
use crate::projgeom::{ProjLine, TernaryQuartic, DEFAULT_MATCH_TOL};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verification {
    pub id: TypeId,
    pub params: Vec<C64>,
    /// Whether the figure curve was used.
    pub figure: bool,
    pub quartic: TernaryQuartic,
    pub bitangents: BitangentSet,
    pub decomposition: OrbitDecomposition,
    pub burnside: BurnsideElement,
    pub report: MatchReport,
    pub real_count: usize,
    pub expected_real: Option<usize>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Instantiates, solves, checks invariance of the curve and of its
/// bitangents, decomposes and compares with the expected pattern. Without
/// `params` the figure curve is used and its real count is compared too.
pub fn verify_type(
    id: TypeId,
    params: Option<&[C64]>,
    cfg: &SolverConfig,
) -> Result<Verification, CatalogError> {
    run(id, params, cfg).map_err(|e| e.tagged(id))
}

fn run(
    id: TypeId,
    params: Option<&[C64]>,
    cfg: &SolverConfig,
) -> Result<Verification, CatalogError> {
    let e = entry(id);
    let group = e.group()?;
    let (quartic, used, figure) = match params {
        Some(p) => (
            instantiate(id, p)?.quartic,
            p.to_vec(),
            e.figure.literal.is_none() && p == e.figure.params.as_slice(),
        ),
        None => (e.figure_quartic()?, e.figure.params.clone(), true),
    };
    let (generator, distance) = e.invariance_defect(&quartic);
    if distance > INVARIANCE_TOL {
        return Err(CatalogError::NotInvariant {
            generator,
            distance,
        });
    }
    let bitangents = solve_all(&quartic, cfg)?;
    let decomposition = compute_orbits(group, &bitangents)?;
    let burnside = to_burnside(group, &decomposition);
    let mut report = match_expected(id.roman(), &burnside, &e.expected);
    let real_count = count_real(&bitangents);
    let expected_real = figure.then_some(e.figure.real_count);
    if let Some(n) = expected_real {
        if n != real_count {
            report.mismatches.push(format!(
                "real bitangents: computed {real_count}, expected {n}"
            ));
        }
        report.mismatches.extend(claim_failures(
            &e.figure.claims,
            &bitangents,
            &decomposition,
        ));
    }
    Ok(Verification {
        id,
        params: used,
        figure,
        quartic,
        bitangents,
        decomposition,
        burnside,
        report,
        real_count,
        expected_real,
    })
}

/// Descriptions of the real-line claims that the computed lines and
/// orbits contradict.
pub fn claim_failures(
    claims: &[RealClaim],
    set: &BitangentSet,
    d: &OrbitDecomposition,
) -> Vec<String> {
    let mut out = Vec::new();
    for claim in claims {
        match claim {
            RealClaim::Lines(lines) => {
                for l in lines {
                    let found = ProjLine::from_real(l[0], l[1], l[2])
                        .ok()
                        .and_then(|l| set.find(&l, DEFAULT_MATCH_TOL));
                    if found.is_none() {
                        out.push(format!("real line {l:?} is not a bitangent"));
                    }
                }
            }
            RealClaim::Orbits(expected) => {
                let mut want = expected.clone();
                let mut got: Vec<(usize, usize)> = d
                    .orbits
                    .iter()
                    .filter(|o| o.real_count > 0)
                    .map(|o| (o.stabilizer.order(), o.real_count))
                    .collect();
                want.sort_unstable();
                got.sort_unstable();
                if want != got {
                    out.push(format!("real lines per orbit (stabilizer order, count): computed {got:?}, expected {want:?}"));
                }
            }
            RealClaim::Fixed(n) => {
                let got: usize = d
                    .orbits
                    .iter()
                    .filter(|o| o.size() == 1)
                    .map(|o| o.real_count)
                    .sum();
                if got != *n {
                    out.push(format!(
                        "real lines fixed by the group: computed {got}, expected {n}"
                    ));
                }
            }
        }
    }
    out
}

/// `count` seeded parameter tuples off the excluded loci, with real parts
/// in `[-6, 6]`.
pub fn sample_params(id: TypeId, seed: u64, count: usize) -> Vec<Vec<C64>> {
    let e = entry(id);
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (id.index() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: Vec<C64> = e
            .param_names
            .iter()
            .map(|_| C64::new(rng.random_range(-6.0..6.0), 0.0))
            .collect();
        if e.excluded_by(&p).is_none() {
            out.push(p);
        }
    }
    out
}

/// Runs the pipeline on every sample and reports whether all
/// decompositions agree.
pub fn independence_check(
    id: TypeId,
    samples: &[Vec<C64>],
    cfg: &SolverConfig,
) -> Result<(bool, Vec<BurnsideElement>), CatalogError> {
    let group = entry(id)
        .group()
        .map_err(|e| CatalogError::from(e).tagged(id))?;
    let results: Vec<Result<BurnsideElement, CatalogError>> = samples
        .par_iter()
        .map(|p| verify_type(id, Some(p), cfg).map(|v| v.burnside))
        .collect();
    let mut out = Vec::with_capacity(results.len());
    for (index, r) in results.into_iter().enumerate() {
        out.push(r.map_err(|e| CatalogError::Sample {
            index,
            params: samples[index].clone(),
            source: Box::new(e),
        })?);
    }
    Ok((all_equal(group, &out), out))
}
