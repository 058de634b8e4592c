//! Pencil synthesis: linear-term extraction, multiaffinization, Darlington
//! steps, assembly and verification.

mod criterion;
mod darlington;
mod extract;
mod pipeline;

use serde::Serialize;

use crate::polarize::Pencil;
use crate::polycore::{CRational, RatFn, SymMatrix};
use crate::reduce::MultiaffinizationMap;
use crate::sos::{FeasibilityStatus, SosOptions};

pub use criterion::{
    check_positive_real, positivity_criterion, positivity_criterion_with, PositivityCheck, PositivityVerdict,
    WronskianReport,
};
pub use darlington::{check_next_wronskian_identity, darlington_step, darlington_step_with, eliminate_variable};
pub use extract::extract_linear_terms;
pub use pipeline::{assemble_pencil, synthesize, synthesize_with, verification_points, verify_realization};

/// What a single variable elimination did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Schur-complement step through an SOS factor of the Wronskian.
    Darlington,
    /// The function is linear in the variable with a constant coefficient.
    Linear,
    /// The variable does not occur.
    Skip,
}

/// Elimination of one fresh variable.
#[derive(Clone, Debug)]
pub struct DarlingtonStep {
    pub kind: StepKind,
    pub variable: usize,
    /// Size of the function before the step.
    pub offset: usize,
    pub r_j: usize,
    /// Pencil coefficient of the variable, of size `offset + r_j`: the
    /// inverse weights on the new block for a Darlington step, the constant
    /// coefficient on the leading block for a linear one.
    pub coefficient: SymMatrix,
    pub g_next: RatFn,
    pub status: Option<FeasibilityStatus>,
}

/// Result of one reconstruction check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationPoint {
    pub point: Vec<CRational>,
    /// Largest entry of the difference between the Schur complement and `f`.
    pub residual: f64,
}

/// Pencil whose leading-block Schur complement is `f`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub pencil: Pencil,
    pub m: usize,
    pub block_split: (usize, usize),
    pub map: MultiaffinizationMap,
    pub extraction_terms: Vec<(usize, SymMatrix)>,
    pub steps: Vec<DarlingtonStep>,
    /// Some certificate was numeric; reconstruction holds to relative 1e-8.
    pub numeric: bool,
    pub exact_psd: bool,
    pub verification: Vec<VerificationPoint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthOptions {
    pub sos: SosOptions,
    pub seed: u64,
    pub points: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            sos: SosOptions::default(),
            seed: 42,
            points: 20,
        }
    }
}

/// Numeric PSD tolerance on pencil coefficients.
pub const PSD_TOLERANCE: f64 = -1e-9;
/// Relative reconstruction tolerance when a certificate is numeric.
pub const NUMERIC_TOLERANCE: f64 = 1e-8;
