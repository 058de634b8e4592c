use num_traits::{One, Zero};

use super::search::{FeasibilityReport, FeasibilityStatus, SosOptions};
use crate::error::{Error, Result};
use crate::gram::GramSpace;
use crate::linalg::ldl_psd;
use crate::polycore::{rationalize, Form, MatrixForm, Rational, SymMatrix};

/// `F = H · diag(weights) · Hᵀ` with `H` an `m × r` matrix of forms.
#[derive(Clone, Debug)]
pub struct SosCertificate {
    pub h: MatrixForm,
    pub weights: Vec<Rational>,
    pub gram: SymMatrix,
    /// Largest coefficient of `F − H·diag(w)·Hᵀ`; zero when `exact`.
    pub residual: f64,
    pub exact: bool,
}

impl SosCertificate {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// `H · diag(w) · Hᵀ`.
    pub fn product(&self) -> MatrixForm {
        let r = self.rank();
        if r == 0 {
            let m = self.h.rows();
            return MatrixForm::zeros(m, m, self.h.nvars(), 2 * self.h.degree());
        }
        let hw = MatrixForm::new(
            self.h.rows(),
            r,
            (0..self.h.rows())
                .flat_map(|a| (0..r).map(move |t| (a, t)))
                .map(|(a, t)| self.h.get(a, t).scale(&self.weights[t]))
                .collect(),
        )
        .expect("shape preserved");
        hw.mul(&self.h.transpose())
    }
}

/// Builds `H` from columns `c_t` of length `N·m`: `H[a][t] = Σ_i c_t[i·m+a] z^{α_i}`.
fn columns_to_h(space: &GramSpace, columns: &[Vec<Rational>]) -> MatrixForm {
    let m = space.m;
    let nvars = space.target.nvars();
    let deg = space.basis.degree();
    let r = columns.len();
    if r == 0 {
        return MatrixForm::zeros(m, 0, nvars, deg);
    }
    let mut entries = vec![Form::zero(nvars, deg); m * r];
    for (t, c) in columns.iter().enumerate() {
        for (i, mono) in space.basis.iter().enumerate() {
            for a in 0..m {
                let v = &c[i * m + a];
                if !v.is_zero() {
                    let term = Form::term(mono.clone(), v.clone());
                    entries[a * r + t] = entries[a * r + t].checked_add(&term).expect("same degree");
                }
            }
        }
    }
    MatrixForm::new(m, r, entries).expect("well-formed factor")
}

fn max_residual(f: &MatrixForm, prod: &MatrixForm) -> f64 {
    match f.checked_sub(prod) {
        Ok(diff) => diff.entries().iter().map(|e| e.max_abs_coeff()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

pub fn factor_certificate(space: &GramSpace, report: &FeasibilityReport) -> Result<SosCertificate> {
    let gram = match (&report.status, &report.gram) {
        (s, Some(g)) if s.is_feasible() => g.clone(),
        (s, _) => return Err(Error::NotCertified(format!("feasibility status is {}", s.as_str()))),
    };
    if report.status == FeasibilityStatus::SosExact {
        let ldl = ldl_psd(&gram)?;
        let cert = SosCertificate {
            h: columns_to_h(space, &ldl.columns),
            weights: ldl.weights,
            gram,
            residual: 0.0,
            exact: true,
        };
        if !certificate_is_exact(&space.target, &cert) {
            return Err(Error::Verification("exact factor does not reproduce the form".into()));
        }
        return Ok(cert);
    }
    let x = gram.to_f64();
    let n = x.nrows();
    let eig = x.symmetric_eigen();
    let clip = SosOptions::default().feasibility_tol;
    let mut columns = Vec::new();
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l < clip {
            continue;
        }
        let s = l.sqrt();
        columns.push(
            (0..n)
                .map(|i| rationalize(eig.eigenvectors[(i, k)] * s, 1_000_000_000))
                .collect::<Vec<_>>(),
        );
    }
    let weights = vec![Rational::one(); columns.len()];
    let mut cert = SosCertificate {
        h: columns_to_h(space, &columns),
        weights,
        gram,
        residual: 0.0,
        exact: false,
    };
    cert.residual = max_residual(&space.target, &cert.product());
    Ok(cert)
}

/// Exact `F − H·diag(w)·Hᵀ ≡ 0`.
pub fn certificate_is_exact(f: &MatrixForm, cert: &SosCertificate) -> bool {
    cert.product() == *f
}
