use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::darlington::eliminate_variable;
use super::extract::extract_linear_terms;
use super::{DarlingtonStep, Realization, StepKind, SynthOptions, VerificationPoint, NUMERIC_TOLERANCE, PSD_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::schur_complement;
use crate::polarize::Pencil;
use crate::polycore::{ratio, CRational, RatFn, SymMatrix};
use crate::reduce::{multiaffinize, MultiaffinizationMap};
use crate::sos::FeasibilityStatus;

/// Attempts per requested verification point before giving up.
const MAX_ATTEMPTS: usize = 100;

/// Sums the step coefficients (padded to the final size) within each group
/// of fresh variables, then adds `z_k A_k` on the leading block for every
/// extracted term.
pub fn assemble_pencil(
    m: usize,
    steps: &[DarlingtonStep],
    map: &MultiaffinizationMap,
    extraction_terms: &[(usize, SymMatrix)],
) -> Result<Pencil> {
    let n = m + steps.iter().map(|s| s.r_j).sum::<usize>();
    let mut coeffs = vec![SymMatrix::zeros(n); map.original_nvars()];
    for s in steps {
        let k = map.owner(s.variable);
        coeffs[k] = coeffs[k].add(&s.coefficient.padded(n));
    }
    for (k, a) in extraction_terms {
        if a.size() != m {
            return Err(Error::SizeMismatch(format!(
                "extracted coefficient of size {} for m = {m}",
                a.size()
            )));
        }
        coeffs[*k] = coeffs[*k].add(&a.padded(n));
    }
    Pencil::new(coeffs)
}

pub fn synthesize(f: &RatFn) -> Result<Realization> {
    synthesize_with(f, &SynthOptions::default())
}

/// Full pipeline. Any failure that signals a non-positive-real input is
/// wrapped in `NotPositiveReal`.
pub fn synthesize_with(f: &RatFn, opts: &SynthOptions) -> Result<Realization> {
    let m = f.size();
    let (extraction_terms, f1) = extract_linear_terms(f).map_err(not_positive_real)?;
    let (mut g, map) = if f1.numerator().is_zero() {
        (f1, MultiaffinizationMap::identity(f.nvars()))
    } else {
        multiaffinize(&f1)?
    };
    let mut steps = Vec::new();
    for j in 0..map.fresh_nvars() {
        if g.numerator().is_zero() {
            break;
        }
        let step = eliminate_variable(&g, j, &opts.sos).map_err(not_positive_real)?;
        g = step.g_next.clone();
        steps.push(step);
    }
    if !g.numerator().is_zero() {
        return Err(Error::BaseNotConstant);
    }
    if let Some(last) = steps.iter().rev().find(|s| s.kind != StepKind::Skip) {
        if last.kind == StepKind::Linear && last.coefficient.min_eigenvalue() < PSD_TOLERANCE {
            return Err(not_positive_real(Error::BaseNotPsd));
        }
    }
    let pencil = assemble_pencil(m, &steps, &map, &extraction_terms)?;
    let numeric = steps
        .iter()
        .any(|s| matches!(s.status, Some(st) if st != FeasibilityStatus::SosExact));
    let min = pencil.min_eigenvalue();
    if min < PSD_TOLERANCE {
        return Err(Error::Verification(format!(
            "pencil coefficient with eigenvalue {min:.3e}"
        )));
    }
    let exact_psd = pencil.coeffs().iter().all(SymMatrix::is_psd_exact);
    let n = pencil.size();
    let mut real = Realization {
        pencil,
        m,
        block_split: (m, n - m),
        map,
        extraction_terms,
        steps,
        numeric,
        exact_psd,
        verification: Vec::new(),
    };
    real.verification = verify_realization(f, &real, opts.points, opts.seed)?;
    Ok(real)
}

fn not_positive_real(e: Error) -> Error {
    match e {
        Error::NotSos(_)
        | Error::NotPsd(_)
        | Error::NotConstantResidue { .. }
        | Error::BaseNotPsd
        | Error::BaseNotConstant => Error::NotPositiveReal(Box::new(e)),
        other => other,
    }
}

/// Random Gaussian-rational points of the open right poly-halfplane: real
/// parts `1..=1000` over `100`, imaginary parts `-1000..=1000` over `100`.
pub fn verification_points(d: usize, count: usize, seed: u64) -> impl Iterator<Item = Vec<CRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        (0..d)
            .map(|_| {
                let re = ratio(rng.gen_range(1..=1000), 100);
                CRational::new(re, ratio(rng.gen_range(-1000..=1000), 100))
            })
            .collect()
    })
}

fn max_abs(rows: &[Vec<CRational>]) -> f64 {
    rows.iter().flatten().map(CRational::abs_f64).fold(0.0, f64::max)
}

/// Compares the leading-block Schur complement of the pencil with `f` at
/// `count` random positive points where both are defined. Exact equality is
/// required unless the realization is numeric.
pub fn verify_realization(f: &RatFn, real: &Realization, count: usize, seed: u64) -> Result<Vec<VerificationPoint>> {
    let mut out = Vec::new();
    let candidates = verification_points(f.nvars(), count * MAX_ATTEMPTS, seed);
    for point in candidates {
        if out.len() == count {
            break;
        }
        let Some(expected) = f.evaluate(&point) else { continue };
        let Some(schur) = schur_complement(&real.pencil.evaluate(&point), real.m) else {
            continue;
        };
        let diff: Vec<Vec<CRational>> = schur
            .iter()
            .zip(&expected)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        let residual = max_abs(&diff);
        let exact = diff.iter().flatten().all(|v| v.re.is_zero() && v.im.is_zero());
        let ok = if real.numeric {
            let scale = max_abs(&expected);
            residual <= NUMERIC_TOLERANCE * if scale > 0.0 { scale } else { 1.0 }
        } else {
            exact
        };
        if !ok {
            return Err(Error::Verification(format!(
                "Schur complement differs from f by {residual:.3e} at {}",
                point.iter().map(CRational::to_string).collect::<Vec<_>>().join(", ")
            )));
        }
        out.push(VerificationPoint { point, residual });
    }
    if out.len() < count {
        return Err(Error::Verification("too few non-singular verification points".into()));
    }
    Ok(out)
}
