use serde::Serialize;

use super::extract::extract_linear_terms;
use crate::error::{Error, Result};
use crate::polycore::{psd_sample_check, RatFn, Rational, SampleOutcome};
use crate::reduce::multiaffinize;
use crate::sos::{certify, FeasibilityStatus, SosOptions};

/// Samples drawn per Wronskian before the SOS search.
const SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum PositivityVerdict {
    CertifiedPositive,
    Violation {
        variable: usize,
        point: Vec<String>,
        min_eigenvalue: f64,
    },
    Unknown,
}

/// Per-variable outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WronskianReport {
    pub variable: usize,
    pub status: FeasibilityStatus,
    pub final_distance: f64,
}

pub fn positivity_criterion(f: &RatFn) -> Result<(PositivityVerdict, Vec<WronskianReport>)> {
    positivity_criterion_with(f, &SosOptions::default(), 42)
}

/// Positivity test for multiaffine functions: every partial Wronskian must be
/// a PSD form. SOS certificates for all of them prove positivity; a sampled
/// negative eigenvalue disproves it.
pub fn positivity_criterion_with(
    f: &RatFn,
    opts: &SosOptions,
    seed: u64,
) -> Result<(PositivityVerdict, Vec<WronskianReport>)> {
    if !f.is_multiaffine() {
        return Err(Error::NotMultiaffine);
    }
    let mut reports = Vec::new();
    let mut all_certified = true;
    for k in 0..f.nvars() {
        let w = f.wronskian(k);
        if let SampleOutcome::ViolationAt { point, min_eigenvalue } = psd_sample_check(&w, SAMPLES, seed) {
            return Ok((
                PositivityVerdict::Violation {
                    variable: k,
                    point: point.iter().map(Rational::to_string).collect(),
                    min_eigenvalue,
                },
                reports,
            ));
        }
        let (_, report) = certify(&w, None, opts)?;
        all_certified &= report.status.is_feasible();
        reports.push(WronskianReport {
            variable: k,
            status: report.status,
            final_distance: report.final_distance,
        });
    }
    let verdict = if all_certified {
        PositivityVerdict::CertifiedPositive
    } else {
        PositivityVerdict::Unknown
    };
    Ok((verdict, reports))
}

/// Positivity check for any input.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCheck {
    pub verdict: PositivityVerdict,
    /// Reports index fresh variables when `multiaffinized` is set.
    pub wronskians: Vec<WronskianReport>,
    pub multiaffinized: bool,
    /// Variables whose linear term was split off first.
    pub extracted: Vec<usize>,
}

/// Splits off linear terms, multiaffinizes what remains if needed, and runs
/// the Wronskian criterion. A non-constant or indefinite linear term is
/// reported as a `NotPositiveReal` error.
pub fn check_positive_real(f: &RatFn, opts: &SosOptions, seed: u64) -> Result<PositivityCheck> {
    if f.is_multiaffine() {
        let (verdict, wronskians) = positivity_criterion_with(f, opts, seed)?;
        return Ok(PositivityCheck {
            verdict,
            wronskians,
            multiaffinized: false,
            extracted: Vec::new(),
        });
    }
    let (terms, f1) = extract_linear_terms(f).map_err(|e| match e {
        Error::NotPsd(_) | Error::NotConstantResidue { .. } => Error::NotPositiveReal(Box::new(e)),
        other => other,
    })?;
    let extracted = terms.into_iter().map(|(k, _)| k).collect();
    if f1.numerator().is_zero() {
        return Ok(PositivityCheck {
            verdict: PositivityVerdict::CertifiedPositive,
            wronskians: Vec::new(),
            multiaffinized: false,
            extracted,
        });
    }
    let (g, _) = multiaffinize(&f1)?;
    let (verdict, wronskians) = positivity_criterion_with(&g, opts, seed)?;
    Ok(PositivityCheck {
        verdict,
        wronskians,
        multiaffinized: true,
        extracted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_form, Form};

    #[test]
    fn parallel_pair_is_positive() {
        let f = RatFn::scalar(
            parse_form("z1*z2", Some(2)).unwrap(),
            parse_form("z1 + z2", Some(2)).unwrap(),
        )
        .unwrap();
        let (v, reports) = positivity_criterion(&f).unwrap();
        assert_eq!(v, PositivityVerdict::CertifiedPositive);
        assert!(reports.iter().all(|r| r.status == FeasibilityStatus::SosExact));
    }

    #[test]
    fn negative_resistor() {
        let f = RatFn::scalar(parse_form("-z1", Some(1)).unwrap(), Form::one(1)).unwrap();
        let (v, _) = positivity_criterion(&f).unwrap();
        assert!(matches!(v, PositivityVerdict::Violation { variable: 0, .. }));
    }

    #[test]
    fn refuses_non_multiaffine() {
        let f = RatFn::scalar(parse_form("z1^2", Some(1)).unwrap(), parse_form("z1", Some(1)).unwrap()).unwrap();
        assert_eq!(positivity_criterion(&f), Err(Error::NotMultiaffine));
    }
}
