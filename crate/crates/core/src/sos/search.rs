use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::facial::{forced_kernel, Face};
use super::space::{gram_classes, project_exact, GramClass};
use crate::gram::GramSpace;
use crate::linalg::{clip_eigenvalues, ldl_psd};
use crate::polycore::{rationalize, SymMatrix};

/// Knobs of the alternating-projection search.
#[derive(Clone, Debug, PartialEq)]
pub struct SosOptions {
    /// Convergence threshold on successive iterates (max-entry norm).
    pub tol: f64,
    pub max_iters: usize,
    /// Largest denominator tried when rationalizing.
    pub max_denominator: u64,
    /// Distance to the PSD cone below which a point counts as feasible.
    pub feasibility_tol: f64,
    /// Distance above which a stalled search reports infeasibility evidence.
    pub infeasibility_gap: f64,
}

impl Default for SosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iters: 10_000,
            max_denominator: 1_000_000,
            feasibility_tol: 1e-9,
            infeasibility_gap: 1e-4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityStatus {
    SosExact,
    SosNumeric,
    NotSosEvidence,
    Inconclusive,
}

impl FeasibilityStatus {
    pub fn is_feasible(self) -> bool {
        matches!(self, Self::SosExact | Self::SosNumeric)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SosExact => "sos_exact",
            Self::SosNumeric => "sos_numeric",
            Self::NotSosEvidence => "not_sos_evidence",
            Self::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub status: FeasibilityStatus,
    pub iterations: usize,
    /// Frobenius distance from the last affine iterate to the PSD cone.
    pub final_distance: f64,
    /// Rational Gram matrix in the affine space: exactly PSD for
    /// `SosExact`, the rounded numeric point for `SosNumeric`.
    pub gram: Option<SymMatrix>,
}

pub fn find_psd_gram(space: &GramSpace) -> FeasibilityReport {
    find_psd_gram_with(space, &SosOptions::default())
}

fn project_f64(x: &DMatrix<f64>, classes: &[GramClass], targets: &[f64]) -> DMatrix<f64> {
    let mut out = x.clone();
    for (c, &t) in classes.iter().zip(targets) {
        let sum: f64 = c.positions.iter().map(|&(r, s)| x[(r, s)]).sum();
        let shift = (t - sum) / c.positions.len() as f64;
        for &(r, s) in &c.positions {
            out[(r, s)] += shift;
        }
    }
    out
}

fn negative_part_norm(x: &DMatrix<f64>) -> f64 {
    x.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|l| l * l)
        .sum::<f64>()
        .sqrt()
}

fn rationalized(x: &DMatrix<f64>, max_den: u64) -> SymMatrix {
    let n = x.nrows();
    let mut s = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            s.set(i, j, rationalize(0.5 * (x[(i, j)] + x[(j, i)]), max_den));
        }
    }
    s
}

/// Affine set of Gram matrices searched by alternating projections.
trait AffineGram {
    /// Exact member used as the starting point.
    fn particular(&self) -> SymMatrix;
    fn start(&self) -> DMatrix<f64>;
    fn project(&self, x: &DMatrix<f64>) -> DMatrix<f64>;
    /// Exact member near `x`, rounded with denominators up to `den`.
    fn round(&self, x: &DMatrix<f64>, den: u64) -> SymMatrix;
}

/// Full Gram space, projected class by class.
struct Classes<'a> {
    space: &'a GramSpace,
    classes: Vec<GramClass>,
    targets: Vec<f64>,
}

impl AffineGram for Classes<'_> {
    fn particular(&self) -> SymMatrix {
        self.space.particular.clone()
    }

    fn start(&self) -> DMatrix<f64> {
        self.space.particular.to_f64()
    }

    fn project(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        project_f64(x, &self.classes, &self.targets)
    }

    fn round(&self, x: &DMatrix<f64>, den: u64) -> SymMatrix {
        project_exact(&rationalized(x, den), &self.classes)
    }
}

impl AffineGram for Face {
    fn particular(&self) -> SymMatrix {
        Face::particular(self)
    }

    fn start(&self) -> DMatrix<f64> {
        Face::start(self)
    }

    fn project(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        Face::project(self, x)
    }

    fn round(&self, x: &DMatrix<f64>, den: u64) -> SymMatrix {
        Face::round(self, x, den)
    }
}

/// Rounds `x` with growing denominators and keeps the first exactly PSD
/// member of the affine set.
fn exact_round(set: &dyn AffineGram, x: &DMatrix<f64>, max_den: u64) -> Option<SymMatrix> {
    let mut den = 10u64;
    loop {
        let g = set.round(x, den);
        if ldl_psd(&g).is_ok() {
            return Some(g);
        }
        if den >= max_den {
            return None;
        }
        den = (den * 10).min(max_den);
    }
}

/// Alternating projections between the PSD cone and the affine Gram space,
/// followed by exact rounding. When the target is singular along a family of
/// points the search runs on the face cut out by the forced kernel.
pub fn find_psd_gram_with(space: &GramSpace, opts: &SosOptions) -> FeasibilityReport {
    if !space.uncovered.is_zero() {
        return report(
            FeasibilityStatus::NotSosEvidence,
            0,
            space.uncovered.to_f64().unwrap_or(f64::INFINITY),
            None,
        );
    }
    if ldl_psd(&space.particular).is_ok() {
        return report(FeasibilityStatus::SosExact, 0, 0.0, Some(space.particular.clone()));
    }
    let classes = gram_classes(&space.basis, space.m, &space.target);
    let kernel = forced_kernel(&space.basis, space.m, &space.target);
    if kernel.is_empty() {
        let targets = classes.iter().map(|c| c.target.to_f64().unwrap_or(0.0)).collect();
        search(
            &Classes {
                space,
                classes,
                targets,
            },
            opts,
        )
    } else {
        match Face::new(&kernel, space.size(), &classes) {
            Some(face) if face.freedom() > 0 => search(&face, opts),
            Some(face) => {
                let g = face.particular();
                if ldl_psd(&g).is_ok() {
                    report(FeasibilityStatus::SosExact, 0, 0.0, Some(g))
                } else {
                    report(FeasibilityStatus::NotSosEvidence, 0, f64::INFINITY, None)
                }
            }
            None => report(FeasibilityStatus::NotSosEvidence, 0, f64::INFINITY, None),
        }
    }
}

fn report(
    status: FeasibilityStatus,
    iterations: usize,
    final_distance: f64,
    gram: Option<SymMatrix>,
) -> FeasibilityReport {
    FeasibilityReport {
        status,
        iterations,
        final_distance,
        gram,
    }
}

fn search(set: &dyn AffineGram, opts: &SosOptions) -> FeasibilityReport {
    let particular = set.particular();
    if ldl_psd(&particular).is_ok() {
        return report(FeasibilityStatus::SosExact, 0, 0.0, Some(particular));
    }
    let mut x = set.start();
    let mut iterations = 0;
    while iterations < opts.max_iters {
        iterations += 1;
        let next = set.project(&clip_eigenvalues(&x, 0.0));
        let diff = (&next - &x).amax();
        x = next;
        if diff < opts.tol {
            break;
        }
        if iterations % 50 == 0 && negative_part_norm(&x) <= opts.feasibility_tol {
            if let Some(g) = exact_round(set, &x, opts.max_denominator) {
                return report(FeasibilityStatus::SosExact, iterations, 0.0, Some(g));
            }
        }
    }
    let distance = negative_part_norm(&x);
    if distance <= opts.feasibility_tol {
        if let Some(g) = exact_round(set, &x, opts.max_denominator) {
            return report(FeasibilityStatus::SosExact, iterations, 0.0, Some(g));
        }
        // push towards the interior, then round again
        for floor in [1e-3, 1e-5, 1e-7] {
            let mut z = x.clone();
            for _ in 0..200 {
                z = set.project(&clip_eigenvalues(&z, floor));
            }
            if negative_part_norm(&z) <= opts.feasibility_tol {
                if let Some(g) = exact_round(set, &z, opts.max_denominator) {
                    return report(FeasibilityStatus::SosExact, iterations, 0.0, Some(g));
                }
            }
        }
        return report(
            FeasibilityStatus::SosNumeric,
            iterations,
            distance,
            Some(set.round(&x, opts.max_denominator)),
        );
    }
    let status = if distance > opts.infeasibility_gap {
        FeasibilityStatus::NotSosEvidence
    } else {
        FeasibilityStatus::Inconclusive
    };
    report(status, iterations, distance, None)
}
