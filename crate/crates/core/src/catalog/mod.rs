//! The twelve automorphism types of smooth plane quartics: normal forms,
//! generators, excluded parameters, expected bitangent decompositions and
//! the parameters used for the figures.
//!
//! The third Type I generator is the circulant with rows `(α, γ, β),
//! (γ, β, α), (β, α, γ)`, and the Type III generators carry `ζ3²` and `ζ3`
//! in their last entries, in that order. The other arrangements of these
//! entries do not preserve the quartics.

mod entries;
mod family;
mod specialize;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitangent::SolveError;
use crate::equivariant::{EquivariantError, ExpectedPattern};
use crate::grp::{FiniteProjGroup, GroupError, ProjTransform, DEFAULT_CAP};
use crate::polynum::C64;
use crate::projgeom::{GeomError, TernaryQuartic, DEFAULT_MATCH_TOL};

pub use family::ParametricQuartic;
pub use specialize::{
    lattice_report, specialize, AffineSolution, EdgeKind, EdgeOutcome, LatticeEdge,
    SpecializationResult,
};
pub use verify::{claim_failures, independence_check, sample_params, verify_type, Verification};

/// Tolerance for exclusion predicates.
pub const EXCLUSION_TOL: f64 = 1e-9;

/// Tolerance for `g·f = f` in canonical scale.
pub const INVARIANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
}

impl TypeId {
    pub const ALL: [TypeId; 12] = [
        TypeId::I,
        TypeId::II,
        TypeId::III,
        TypeId::IV,
        TypeId::V,
        TypeId::VI,
        TypeId::VII,
        TypeId::VIII,
        TypeId::IX,
        TypeId::X,
        TypeId::XI,
        TypeId::XII,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn roman(self) -> &'static str {
        [
            "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
        ][self.index()]
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl FromStr for TypeId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(n) = t.parse::<usize>() {
            if (1..=12).contains(&n) {
                return Ok(TypeId::ALL[n - 1]);
            }
        }
        TypeId::ALL
            .into_iter()
            .find(|id| id.roman().eq_ignore_ascii_case(t))
            .ok_or_else(|| CatalogError::UnknownType(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown type {0:?}")]
    UnknownType(String),
    #[error("type {id} takes {expected} parameters, got {found}")]
    ArityMismatch {
        id: TypeId,
        expected: usize,
        found: usize,
    },
    #[error("parameters excluded for type {id} ({rule}){}", promoted.map(|p| format!(": the curve is of type {p}")).unwrap_or_default())]
    ExcludedParameter {
        id: TypeId,
        promoted: Option<TypeId>,
        rule: String,
    },
    #[error("generator {generator} moves the quartic by {distance:e}")]
    NotInvariant { generator: usize, distance: f64 },
    #[error("family has no parameters")]
    DegenerateFamily,
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("sample {index} {params:?}: {source}")]
    Sample {
        index: usize,
        params: Vec<C64>,
        source: Box<CatalogError>,
    },
    #[error("type {id}: {source}")]
    Pipeline {
        id: TypeId,
        source: Box<CatalogError>,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
}

impl CatalogError {
    pub(crate) fn tagged(self, id: TypeId) -> Self {
        match self {
            e @ CatalogError::Pipeline { .. } => e,
            e => CatalogError::Pipeline {
                id,
                source: Box::new(e),
            },
        }
    }
}

/// A parameter locus where the curve acquires more symmetry (or stops
/// being smooth).
pub struct Exclusion {
    pub rule: &'static str,
    /// Type reached on the locus, if the rule names one.
    pub promoted: Option<TypeId>,
    pub(crate) holds: fn(&[C64]) -> bool,
}

impl Exclusion {
    pub fn holds(&self, params: &[C64]) -> bool {
        (self.holds)(params)
    }
}

impl fmt::Debug for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Exclusion")
            .field("rule", &self.rule)
            .field("promoted", &self.promoted)
            .finish()
    }
}

pub(crate) fn near(x: C64, v: C64) -> bool {
    (x - v).norm() <= EXCLUSION_TOL * v.norm().max(1.0)
}

/// Real-line facts stated for a figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RealClaim {
    /// These real lines are bitangents.
    Lines(Vec<[f64; 3]>),
    /// Over orbits containing real lines, the multiset of
    /// `(stabilizer order, real lines in the orbit)`.
    Orbits(Vec<(usize, usize)>),
    /// Number of real lines fixed by the whole group.
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureExample {
    pub params: Vec<C64>,
    /// A quartic printed outside the normal form, used instead of `params`.
    pub literal: Option<TernaryQuartic>,
    pub real_count: usize,
    pub claims: Vec<RealClaim>,
}

pub struct CurveTypeEntry {
    pub id: TypeId,
    pub group_name: &'static str,
    pub group_order: usize,
    pub gap_id: &'static str,
    pub param_names: Vec<&'static str>,
    /// Normal form, possibly in other coordinates than `param_names`.
    pub family: ParametricQuartic,
    pub(crate) to_family: fn(&[C64]) -> Vec<C64>,
    pub generators: Vec<ProjTransform>,
    pub exclusions: Vec<Exclusion>,
    pub expected: ExpectedPattern,
    pub figure: FigureExample,
    group: OnceLock<Result<FiniteProjGroup, GroupError>>,
}

impl fmt::Debug for CurveTypeEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveTypeEntry")
            .field("id", &self.id)
            .field("group", &self.group_name)
            .finish_non_exhaustive()
    }
}

impl CurveTypeEntry {
    /// Closure of the generators, built on first use.
    pub fn group(&self) -> Result<&FiniteProjGroup, GroupError> {
        self.group
            .get_or_init(|| {
                FiniteProjGroup::closure(&self.generators, DEFAULT_CAP, DEFAULT_MATCH_TOL)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_parametric(&self) -> bool {
        !self.param_names.is_empty()
    }

    /// The first exclusion rule met by `params`.
    pub fn excluded_by(&self, params: &[C64]) -> Option<&Exclusion> {
        self.exclusions.iter().find(|e| e.holds(params))
    }

    /// Every exclusion rule met by `params`.
    pub fn all_exclusions(&self, params: &[C64]) -> Vec<&Exclusion> {
        self.exclusions.iter().filter(|e| e.holds(params)).collect()
    }

    pub fn check_params(&self, params: &[C64]) -> Result<(), CatalogError> {
        if params.len() != self.param_names.len() {
            return Err(CatalogError::ArityMismatch {
                id: self.id,
                expected: self.param_names.len(),
                found: params.len(),
            });
        }
        match self.excluded_by(params) {
            Some(e) => Err(CatalogError::ExcludedParameter {
                id: self.id,
                promoted: e.promoted,
                rule: e.rule.into(),
            }),
            None => Ok(()),
        }
    }

    /// The quartic at `params`, without exclusion checks.
    pub fn equation(&self, params: &[C64]) -> Result<TernaryQuartic, CatalogError> {
        if params.len() != self.param_names.len() {
            return Err(CatalogError::ArityMismatch {
                id: self.id,
                expected: self.param_names.len(),
                found: params.len(),
            });
        }
        Ok(self.family.eval(&(self.to_family)(params))?)
    }

    /// The figure quartic: the printed literal if there is one.
    pub fn figure_quartic(&self) -> Result<TernaryQuartic, CatalogError> {
        match &self.figure.literal {
            Some(q) => Ok(q.clone()),
            None => self.equation(&self.figure.params),
        }
    }

    /// Parameters by name, e.g. `[("a", -3)]`, in any order.
    pub fn params_by_name(&self, named: &[(String, C64)]) -> Result<Vec<C64>, CatalogError> {
        for (k, _) in named {
            if !self.param_names.contains(&k.as_str()) {
                return Err(CatalogError::UnknownParameter(k.clone()));
            }
        }
        let found: Vec<C64> = self
            .param_names
            .iter()
            .filter_map(|n| named.iter().find(|(k, _)| k == n).map(|(_, v)| *v))
            .collect();
        if found.len() != self.param_names.len() || named.len() != found.len() {
            return Err(CatalogError::ArityMismatch {
                id: self.id,
                expected: self.param_names.len(),
                found: named.len(),
            });
        }
        Ok(found)
    }

    /// Largest canonical-scale displacement of `f` by a generator, with
    /// the generator's index.
    pub fn invariance_defect(&self, f: &TernaryQuartic) -> (usize, f64) {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| (k, crate::projgeom::act_on_quartic(g, f).distance(f)))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }
}

pub fn entries() -> &'static [CurveTypeEntry] {
    static ENTRIES: OnceLock<Vec<CurveTypeEntry>> = OnceLock::new();
    ENTRIES.get_or_init(entries::build)
}

pub fn entry(id: TypeId) -> &'static CurveTypeEntry {
    &entries()[id.index()]
}

pub struct Instance {
    pub quartic: TernaryQuartic,
    pub group: &'static FiniteProjGroup,
    pub expected: &'static ExpectedPattern,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("quartic", &self.quartic)
            .field("order", &self.group.order())
            .finish_non_exhaustive()
    }
}

pub fn instantiate(id: TypeId, params: &[C64]) -> Result<Instance, CatalogError> {
    let e = entry(id);
    e.check_params(params)?;
    Ok(Instance {
        quartic: e.equation(params)?,
        group: e.group()?,
        expected: &e.expected,
    })
}

/// `exp(2πik/n)`.
pub fn zeta(n: u32, k: u32) -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}
