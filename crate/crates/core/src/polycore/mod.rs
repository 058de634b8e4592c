//! Exact homogeneous polynomials, matrix forms and rational functions.

pub mod form;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod ratfn;
pub mod rational;
pub mod sample;

pub use form::{form_arith, Form, FormOp};
pub use matrix::{MatrixForm, QMatrix, SymMatrix};
pub use monomial::{all_monomials, monomials_with_caps, Monomial};
pub use parse::parse_form;
pub use ratfn::{wronskian, RatFn};
pub use rational::{fmt_rational, parse_rational, rat, ratio, rationalize, to_f64, CRational, Rational};
pub use sample::{psd_sample_check, SampleOutcome};

/// Evaluates a matrix form at a complex point (convenience alias).
pub fn evaluate(p: &MatrixForm, point: &[CRational]) -> Vec<Vec<CRational>> {
    p.evaluate(point)
}
