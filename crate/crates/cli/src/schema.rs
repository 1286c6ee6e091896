//! JSON documents written by the commands. Every document has a top-level
//! `"schemaVersion": 1`; complex numbers are `[re, im]` pairs and lines are
//! in canonical scale (first entry of maximal modulus equal to 1).
//!
//! - `solve`: `{schemaVersion, type?, params, quartic: [15 complex],
//!   bitangents: [{line, real, hyperflex, residual, tangencyPoints}],
//!   diagnostics}`
//! - `orbits`: `{schemaVersion, type, params, groupOrder, decomposition,
//!   orbits: [{members, representative, size, stabilizerOrder, label,
//!   stabClass, central, realCount}]}`
//! - `verify`: `{schemaVersion, passed, realCount, expectedReal?, report}`
//!   where `report` is `{type, groupOrder, computed, expected, mismatches}`
//! - `verify-all`: `{schemaVersion, passed, types: [verify document]}`
//! - `restrict`: `{schemaVersion, type, params, subgroups: [{order, label,
//!   members, decomposition, matches}]}`
//! - `specialize`: `{schemaVersion, from, to, familyParams, result}` where
//!   `result` is `"Infeasible"` or `{"Solutions": [{lambdas, offset, basis}]}`
//! - `lattice`: `{schemaVersion, edges: [{from, to, kind, label, method,
//!   results, outcome}]}`
//! - errors (stderr): `{schemaVersion, error: {kind, message, details?}}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use bitangent_core::bitangent::{BitangentSet, SolverDiagnostics};
use bitangent_core::catalog::{LatticeEdge, SpecializationResult};
use bitangent_core::equivariant::MatchReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LineDoc {
    pub line: [Complex64; 3],
    pub real: bool,
    pub hyperflex: bool,
    pub residual: f64,
    pub tangency_points: [[Complex64; 3]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveDoc {
    pub schema_version: u32,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub type_id: Option<String>,
    #[serde(default)]
    pub params: Vec<Complex64>,
    pub quartic: Vec<Complex64>,
    pub bitangents: Vec<LineDoc>,
    #[serde(default)]
    pub diagnostics: SolverDiagnostics,
}

impl SolveDoc {
    pub fn new(type_id: Option<String>, params: Vec<Complex64>, set: &BitangentSet) -> Self {
        let bitangents = set
            .items
            .iter()
            .map(|b| LineDoc {
                line: *b.line.coords(),
                real: b.is_real,
                hyperflex: b.is_hyperflex,
                residual: b.residual,
                tangency_points: [
                    *b.tangency_points[0].coords(),
                    *b.tangency_points[1].coords(),
                ],
            })
            .collect();
        SolveDoc {
            schema_version: SCHEMA_VERSION,
            type_id,
            params,
            quartic: set.source.coeffs().to_vec(),
            bitangents,
            diagnostics: set.diagnostics.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitDoc {
    pub members: Vec<usize>,
    pub representative: usize,
    pub size: usize,
    pub stabilizer_order: usize,
    pub label: String,
    pub stab_class: usize,
    pub central: bool,
    pub real_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitsDoc {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub type_id: String,
    pub params: Vec<Complex64>,
    pub group_order: usize,
    pub decomposition: String,
    pub orbits: Vec<OrbitDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyDoc {
    pub schema_version: u32,
    pub passed: bool,
    pub params: Vec<Complex64>,
    pub real_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_real: Option<usize>,
    pub report: MatchReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyAllDoc {
    pub schema_version: u32,
    pub passed: bool,
    pub types: Vec<VerifyDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupDoc {
    pub order: usize,
    pub label: String,
    /// Indices into the closure of the type's generators.
    pub members: Vec<usize>,
    pub decomposition: String,
    /// Catalog types whose expected pattern this restriction matches.
    pub matches: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RestrictDoc {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub type_id: String,
    pub params: Vec<Complex64>,
    pub subgroups: Vec<SubgroupDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpecializeDoc {
    pub schema_version: u32,
    pub from: String,
    pub to: String,
    pub family_params: Vec<String>,
    pub result: SpecializationResult,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeDoc {
    pub schema_version: u32,
    pub edges: Vec<LatticeEdge>,
}
