//! Dense complex polynomials in one and two variables, resultants and
//! simultaneous root finding.
//!
//! Everything works in double precision. Coefficients are checked for
//! finiteness when a polynomial is built.

mod bi;
mod linalg;
mod resultant;
mod roots;
mod uni;

pub use bi::{BiPoly, Var};
pub use linalg::{det, solve_square};
pub use resultant::{resultant_quotient, resultant_wrt};
pub use roots::{distinct_roots, RootCluster, RootOptions};
pub use uni::{BinaryQuartic, UniPoly};

use num_complex::Complex64;
use thiserror::Error;

/// The scalar field for every curve, line and group element in the crate.
pub type C64 = Complex64;

/// Relative magnitude below which a leading coefficient is treated as zero.
pub const DROP_TOL: f64 = 1e-14;

/// Default relative tolerance used when grouping nearly equal roots.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("elimination is degenerate: an input polynomial is identically zero")]
    DegenerateElimination,
    #[error("root {index} failed the residual bound after {iterations} iterations")]
    NonConvergence { index: usize, iterations: usize },
    #[error("binary quartic has all coefficients below the drop tolerance")]
    ZeroQuartic,
}

pub(crate) fn check_finite(coeffs: &[C64]) -> Result<(), PolyError> {
    match coeffs
        .iter()
        .position(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        Some(i) => Err(PolyError::NonFinite(i)),
        None => Ok(()),
    }
}

pub(crate) fn max_abs(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}
