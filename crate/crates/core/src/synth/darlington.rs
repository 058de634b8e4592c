use num_traits::Zero;

use super::{DarlingtonStep, StepKind, PSD_TOLERANCE};
use crate::error::{Error, Result};
use crate::polycore::{Form, MatrixForm, QMatrix, RatFn, Rational, SymMatrix};
use crate::sos::{certify, factor_certificate, FeasibilityStatus, SosOptions};

pub fn darlington_step(g: &RatFn, j: usize) -> Result<DarlingtonStep> {
    darlington_step_with(g, j, &SosOptions::default())
}

/// With `P = ς P₁ + P₂`, `q = ς q₁ + q₂` and `W_ς[q, P] = H D Hᵀ`, returns
/// `g_next = [[P₁, H], [Hᵀ, q₂ D⁻¹]] / q₁`, so that `g` is the Schur
/// complement of `g_next + ς · diag(0, D⁻¹)`.
pub fn darlington_step_with(g: &RatFn, j: usize, opts: &SosOptions) -> Result<DarlingtonStep> {
    if !g.is_multiaffine() {
        return Err(Error::PreconditionViolated(
            "Darlington step needs a multiaffine function".into(),
        ));
    }
    if j >= g.nvars() {
        return Err(Error::BadInput(format!("variable {} out of range", j + 1)));
    }
    let (p, q) = (g.numerator(), g.denominator());
    let q1 = q.coefficient_of_power(j, 1);
    if q1.is_zero() {
        return Err(Error::DenominatorDegenerate { var: j + 1 });
    }
    let q2 = q.coefficient_of_power(j, 0);
    let p1 = p.coefficient_of_power(j, 1);
    let m = g.size();
    let w = g.wronskian(j);
    let trivial = |status| -> Result<DarlingtonStep> {
        Ok(DarlingtonStep {
            kind: StepKind::Darlington,
            variable: j,
            offset: m,
            r_j: 0,
            coefficient: SymMatrix::zeros(m),
            g_next: RatFn::new(p1.clone(), q1.clone())?,
            status: Some(status),
        })
    };
    if w.is_zero() {
        return trivial(FeasibilityStatus::SosExact);
    }
    let (space, report) = certify(&w, None, opts)?;
    if !report.status.is_feasible() {
        return Err(Error::NotSos(format!(
            "Wronskian in fresh variable {} ({}, distance {:.3e})",
            j + 1,
            report.status.as_str(),
            report.final_distance
        )));
    }
    let cert = factor_certificate(&space, &report)?;
    let r = cert.rank();
    if r == 0 {
        return trivial(report.status);
    }
    let inv: Vec<Rational> = cert.weights.iter().map(|w| w.recip()).collect();
    let d = g.nvars();
    let lower = MatrixForm::new(
        r,
        r,
        (0..r * r)
            .map(|i| {
                if i / r == i % r {
                    q2.scale(&inv[i / r])
                } else {
                    Form::zero(d, q.degree())
                }
            })
            .collect(),
    )?;
    let numerator = MatrixForm::blocks(&p1, &cert.h, &cert.h.transpose(), &lower)?;
    let g_next = RatFn::new(numerator, q1.clone())?;
    if cert.exact {
        // q₁ P = q P₁ − W
        if p.mul_form(&q1) != p1.mul_form(q).checked_sub(&cert.product())? {
            return Err(Error::Verification(format!(
                "Schur identity fails in fresh variable {}",
                j + 1
            )));
        }
        for k in (0..d).filter(|&k| k != j) {
            if !check_next_wronskian_identity(g, j, k, &cert.h, &cert.weights)? {
                return Err(Error::Verification(format!(
                    "next Wronskian identity fails for variables {} and {}",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    let mut diag = vec![Rational::zero(); m];
    diag.extend(inv);
    Ok(DarlingtonStep {
        kind: StepKind::Darlington,
        variable: j,
        offset: m,
        r_j: r,
        coefficient: SymMatrix::diagonal(&diag),
        g_next,
        status: Some(report.status),
    })
}

/// Splits a multiaffine form (or matrix form) along `z_j` and `z_k`:
/// `x = z_j z_k x₁ + z_j x₂ + z_k x₃ + x₄`.
fn split4(x: &MatrixForm, j: usize, k: usize) -> [MatrixForm; 4] {
    let hi = x.coefficient_of_power(j, 1);
    let lo = x.coefficient_of_power(j, 0);
    [
        hi.coefficient_of_power(k, 1),
        hi.coefficient_of_power(k, 0),
        lo.coefficient_of_power(k, 1),
        lo.coefficient_of_power(k, 0),
    ]
}

/// Exact check that the off-diagonal block of the next Wronskian in `z_k`
/// factors the product of its diagonal blocks:
/// `(P̂₁q̂₂ − P̂₂q̂₁)(q̂₂q̂₃ − q̂₁q̂₄) = Φ_k D Φ_kᵀ` with
/// `Φ_k = (z_k q̂₁ + q̂₂) ∂H/∂z_k − q̂₁ H`.
pub fn check_next_wronskian_identity(
    g: &RatFn,
    j: usize,
    k: usize,
    h: &MatrixForm,
    weights: &[Rational],
) -> Result<bool> {
    let [p1, p2, _, _] = split4(g.numerator(), j, k);
    let [q1, q2, q3, q4] = split4(&MatrixForm::scalar(g.denominator().clone()), j, k).map(|f| f.get(0, 0).clone());
    let lhs_a = p1.mul_form(&q2).checked_sub(&p2.mul_form(&q1))?;
    let lhs_b = q2.mul(&q3).checked_sub(&q1.mul(&q4))?;
    let lhs = lhs_a.mul_form(&lhs_b);
    let zk_q1 = Form::var(g.nvars(), k).mul(&q1);
    let phi = h
        .partial_derivative(k)
        .mul_form(&zk_q1.checked_add(&q2)?)
        .checked_sub(&h.mul_form(&q1))?;
    let r = weights.len();
    let mut dq = QMatrix::zeros(r, r);
    for (t, w) in weights.iter().enumerate() {
        dq.set(t, t, w.clone());
    }
    let rhs = phi.mul_constant(&dq).mul(&phi.transpose());
    Ok(lhs.checked_sub(&rhs)?.is_zero())
}

/// Removes `ς_j` from `g`: a Darlington step when `q` depends on it, a
/// constant linear coefficient when only `P` does, nothing otherwise.
pub fn eliminate_variable(g: &RatFn, j: usize, opts: &SosOptions) -> Result<DarlingtonStep> {
    let (p, q) = (g.numerator(), g.denominator());
    let m = g.size();
    if q.degree_in(j) == 1 {
        return darlington_step_with(g, j, opts);
    }
    if q.degree_in(j) > 1 || p.degree_in(j) > 1 {
        return Err(Error::PreconditionViolated("function is not multiaffine".into()));
    }
    if p.degree_in(j) == 0 {
        return Ok(DarlingtonStep {
            kind: StepKind::Skip,
            variable: j,
            offset: m,
            r_j: 0,
            coefficient: SymMatrix::zeros(m),
            g_next: g.clone(),
            status: None,
        });
    }
    let a = p
        .coefficient_of_power(j, 1)
        .constant_ratio(q)
        .ok_or(Error::NotConstantResidue { var: j + 1 })?;
    let a = SymMatrix::from_qmatrix(a)?;
    let min = a.min_eigenvalue();
    if min < PSD_TOLERANCE {
        return Err(Error::NotPsd(format!(
            "coefficient of fresh variable {} has eigenvalue {min:.3e}",
            j + 1
        )));
    }
    let mut p2 = p.coefficient_of_power(j, 0);
    if p2.is_zero() {
        p2 = MatrixForm::zeros(m, m, g.nvars(), q.degree() + 1);
    }
    Ok(DarlingtonStep {
        kind: StepKind::Linear,
        variable: j,
        offset: m,
        r_j: 0,
        coefficient: a,
        g_next: RatFn::new(p2, q.clone())?,
        status: None,
    })
}
