use super::PSD_TOLERANCE;
use crate::error::{Error, Result};
use crate::polycore::{MatrixForm, RatFn, SymMatrix};

/// Splits off `z_k A_k` for every variable in which the numerator has higher
/// degree than the denominator. `A_k` is the limit of `f / z_k`, the ratio of
/// the leading `z_k`-coefficients, which must be a constant PSD matrix.
pub fn extract_linear_terms(f: &RatFn) -> Result<(Vec<(usize, SymMatrix)>, RatFn)> {
    let q = f.denominator();
    let d = f.nvars();
    let mut p = f.numerator().clone();
    let mut terms = Vec::new();
    for k in 0..d {
        if p.is_zero() {
            break;
        }
        let dp = p.degree_in(k);
        let dq = q.degree_in(k);
        if dp <= dq {
            continue;
        }
        if dp > dq + 1 {
            return Err(Error::NotConstantResidue { var: k + 1 });
        }
        let lead_p = p.coefficient_of_power(k, dp);
        let lead_q = q.coefficient_of_power(k, dq);
        let a = lead_p
            .constant_ratio(&lead_q)
            .ok_or(Error::NotConstantResidue { var: k + 1 })?;
        let a = SymMatrix::from_qmatrix(a)?;
        let min = a.min_eigenvalue();
        if min < PSD_TOLERANCE {
            return Err(Error::NotPsd(format!(
                "coefficient of z{} has eigenvalue {min:.3e}",
                k + 1
            )));
        }
        p = p.checked_sub(&MatrixForm::linear(d, k, &a).mul_form(q))?;
        terms.push((k, a));
    }
    if p.is_zero() {
        p = MatrixForm::zeros(p.rows(), p.cols(), d, q.degree() + 1);
    }
    Ok((terms, RatFn::new(p, q.clone())?))
}
