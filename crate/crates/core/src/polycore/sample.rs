use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{MatrixForm, SymMatrix};
use super::rational::{ratio, Rational};

/// Eigenvalues below this count as a sign violation.
pub const VIOLATION_TOLERANCE: f64 = -1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum SampleOutcome {
    NoViolation,
    ViolationAt { point: Vec<Rational>, min_eigenvalue: f64 },
}

impl SampleOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, SampleOutcome::ViolationAt { .. })
    }
}

/// Random rational point in `[-10, 10]^d` with denominators 100.
pub fn random_box_point(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| ratio(rng.gen_range(-1000..=1000), 100)).collect()
}

/// Necessary-condition PSD test: evaluates `F` exactly at `trials` random
/// rational points and eigen-checks each value in floating point.
pub fn psd_sample_check(f: &MatrixForm, trials: usize, seed: u64) -> SampleOutcome {
    assert!(f.is_square(), "sample check needs a square matrix form");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        let point = random_box_point(&mut rng, f.nvars());
        let value = f.evaluate_real(&point);
        let min = match SymMatrix::from_rows(value) {
            Ok(s) => s.min_eigenvalue(),
            Err(_) => f64::NEG_INFINITY,
        };
        if min < VIOLATION_TOLERANCE {
            return SampleOutcome::ViolationAt {
                point,
                min_eigenvalue: min,
            };
        }
    }
    SampleOutcome::NoViolation
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_form;

    #[test]
    fn square_has_no_violation() {
        let f = MatrixForm::scalar(parse_form("z2^2", Some(2)).unwrap());
        assert_eq!(psd_sample_check(&f, 100, 1), SampleOutcome::NoViolation);
    }

    #[test]
    fn product_is_indefinite() {
        let f = MatrixForm::scalar(parse_form("z1*z2", Some(2)).unwrap());
        match psd_sample_check(&f, 100, 7) {
            SampleOutcome::ViolationAt { point, .. } => {
                assert!(&point[0] * &point[1] < Rational::from_integer(0.into()))
            }
            SampleOutcome::NoViolation => panic!("expected a violation"),
        }
    }
}
