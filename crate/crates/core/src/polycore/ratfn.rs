use super::form::Form;
use super::matrix::MatrixForm;
use super::rational::CRational;
use crate::error::{Error, Result};

/// Matrix rational function `f(z) = P(z) / q(z)`, homogeneous of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    p: MatrixForm,
    q: Form,
}

impl RatFn {
    pub fn new(p: MatrixForm, q: Form) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Invariant("denominator is the zero form".into()));
        }
        if p.nvars() != q.nvars() {
            return Err(Error::DimensionMismatch {
                expected: q.nvars(),
                found: p.nvars(),
            });
        }
        if !p.is_symmetric() {
            return Err(Error::Invariant("numerator is not symmetric".into()));
        }
        if p.degree() != q.degree() + 1 {
            if p.is_zero() {
                let p = MatrixForm::zeros(p.rows(), p.cols(), p.nvars(), q.degree() + 1);
                return Ok(Self { p, q });
            }
            return Err(Error::DegreeMismatch(format!(
                "numerator degree {} must be denominator degree {} plus one",
                p.degree(),
                q.degree()
            )));
        }
        Ok(Self { p, q })
    }

    /// Scalar function `p / q`.
    pub fn scalar(p: Form, q: Form) -> Result<Self> {
        Self::new(MatrixForm::scalar(p), q)
    }

    pub fn numerator(&self) -> &MatrixForm {
        &self.p
    }

    pub fn denominator(&self) -> &Form {
        &self.q
    }

    /// Output size `m` of the `m × m` values.
    pub fn size(&self) -> usize {
        self.p.size()
    }

    pub fn nvars(&self) -> usize {
        self.q.nvars()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.p.degree_in(k).max(self.q.degree_in(k))
    }

    pub fn is_multiaffine(&self) -> bool {
        self.p.is_multiaffine() && self.q.is_multiaffine()
    }

    pub fn wronskian(&self, k: usize) -> MatrixForm {
        wronskian(&self.q, &self.p, k).expect("degrees validated at construction")
    }

    /// `P(z)/q(z)` at a point; `None` when `q` vanishes there.
    pub fn evaluate(&self, point: &[CRational]) -> Option<Vec<Vec<CRational>>> {
        let qv = self.q.evaluate(point);
        let inv = qv.inv()?;
        Some(
            self.p
                .evaluate(point)
                .into_iter()
                .map(|row| row.iter().map(|v| v * &inv).collect())
                .collect(),
        )
    }
}

/// Partial Wronskian `q ∂P/∂z_k − P ∂q/∂z_k`.
pub fn wronskian(q: &Form, p: &MatrixForm, k: usize) -> Result<MatrixForm> {
    if p.degree() != q.degree() + 1 && !p.is_zero() {
        return Err(Error::DegreeMismatch(format!(
            "numerator degree {} must be denominator degree {} plus one",
            p.degree(),
            q.degree()
        )));
    }
    if k >= q.nvars() {
        return Err(Error::BadInput(format!("variable index {} out of range", k + 1)));
    }
    let dq = q.partial_derivative(k);
    let degree = 2 * q.degree();
    let left = p.partial_derivative(k).mul_form(q);
    let right = p.mul_form(&dq);
    let entries = left
        .entries()
        .iter()
        .zip(right.entries())
        .map(|(a, b)| {
            a.clone()
                .retagged_if_zero(degree)
                .checked_sub(&b.clone().retagged_if_zero(degree))
        })
        .collect::<Result<Vec<_>>>()?;
    let w = MatrixForm::new(p.rows(), p.cols(), entries)?;
    if w.is_zero() {
        return Ok(MatrixForm::zeros(p.rows(), p.cols(), q.nvars(), degree));
    }
    Ok(w)
}

impl Form {
    pub(crate) fn retagged_if_zero(self, degree: u32) -> Form {
        if self.is_zero() {
            self.retagged(degree)
        } else {
            self
        }
    }
}
