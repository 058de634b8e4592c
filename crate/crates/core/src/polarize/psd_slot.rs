use super::basis::MonomialBasis;
use super::pencil::Pencil;
use super::product::{check_product_identity, polarize_product, product_caps, Polarization};
use crate::error::{Error, Result};
use crate::gram::defect_solve;
use crate::polycore::{wronskian, Form, MatrixForm, SymMatrix};
use crate::sos::{certify, FeasibilityStatus, SosOptions};

/// Product pencil for `(q s, P s)` whose coefficient at `z_k` is a positive
/// semidefinite Gram matrix of `s² W_{z_k}[q, P]`.
#[derive(Clone, Debug)]
pub struct PsdSlotPolarization {
    pub polarization: Polarization,
    pub slot: usize,
    /// Status of the Gram search; `SosExact` means `A_k` is exactly PSD.
    pub status: FeasibilityStatus,
}

pub fn polarize_with_psd_slot(q: &Form, p: &MatrixForm, k: usize, s: &Form) -> Result<PsdSlotPolarization> {
    polarize_with_psd_slot_opts(q, p, k, s, &SosOptions::default())
}

pub fn polarize_with_psd_slot_opts(
    q: &Form,
    p: &MatrixForm,
    k: usize,
    s: &Form,
    opts: &SosOptions,
) -> Result<PsdSlotPolarization> {
    if k >= q.nvars() {
        return Err(Error::BadInput(format!("variable z{} out of range", k + 1)));
    }
    if p.degree_in(k) != q.degree_in(k) {
        return Err(Error::DegreeMismatch(format!(
            "degree in z{} of numerator ({}) and denominator ({}) differ",
            k + 1,
            p.degree_in(k),
            q.degree_in(k)
        )));
    }
    let qs = q.mul(s);
    let ps = p.mul_form(s);
    let pol = polarize_product(&qs, &ps)?;
    let m = pol.m;
    let caps = product_caps(&qs, &ps);
    let w = wronskian(&qs, &ps, k)?;
    let (space, report) = certify(&w, Some(&caps), opts)?;
    let gram = match (&report.gram, report.status.is_feasible()) {
        (Some(g), true) => g.clone(),
        _ => {
            return Err(Error::NotSos(format!(
                "Wronskian in z{} has no PSD Gram matrix ({})",
                k + 1,
                report.status.as_str()
            )))
        }
    };
    let a_k = embed(&gram, &space.basis, &pol.basis, m)?;
    let b_k = pol.pencil.coeff(k);
    let defect = a_k.sub(b_k);
    let repair = defect_solve(&defect, &pol.basis, &caps, k)?;
    let coeffs: Vec<SymMatrix> = (0..qs.nvars())
        .map(|j| {
            if j == k {
                a_k.clone()
            } else {
                pol.pencil.coeff(j).add(&repair[j])
            }
        })
        .collect();
    let pencil = Pencil::new(coeffs)?;
    if !check_product_identity(&qs, &ps, &pol.basis, &pencil) {
        return Err(Error::Verification("repaired pencil lost the product identity".into()));
    }
    Ok(PsdSlotPolarization {
        polarization: Polarization { pencil, ..pol },
        slot: k,
        status: report.status,
    })
}

/// Places a Gram matrix over `small` into the index layout of `big`.
fn embed(g: &SymMatrix, small: &MonomialBasis, big: &MonomialBasis, m: usize) -> Result<SymMatrix> {
    let map = small
        .iter()
        .map(|a| {
            big.index_of(a)
                .ok_or_else(|| Error::Internal(format!("Gram monomial {a} missing from the pencil basis")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = SymMatrix::zeros(big.len() * m);
    for (i, &bi) in map.iter().enumerate() {
        for (j, &bj) in map.iter().enumerate() {
            for a in 0..m {
                for b in 0..m {
                    let v = g.get(i * m + a, j * m + b);
                    out.set(bi * m + a, bj * m + b, v.clone());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarize::check_wronskian_identity;
    use crate::polycore::parse_form;

    #[test]
    fn parallel_pair_both_slots() {
        let q = parse_form("z1 + z2", Some(2)).unwrap();
        let p = MatrixForm::scalar(parse_form("z1*z2", Some(2)).unwrap());
        for k in 0..2 {
            let r = polarize_with_psd_slot(&q, &p, k, &Form::one(2)).unwrap();
            let pol = &r.polarization;
            assert!(pol.pencil.coeff(k).is_psd_exact());
            assert!(check_wronskian_identity(&q, &p, &pol.basis, &pol.pencil));
        }
    }

    #[test]
    fn degree_mismatch() {
        let q = parse_form("z1", Some(1)).unwrap();
        let p = MatrixForm::scalar(parse_form("z1^2", Some(1)).unwrap());
        assert!(matches!(
            polarize_with_psd_slot(&q, &p, 0, &Form::one(1)),
            Err(Error::DegreeMismatch(_))
        ));
    }
}
