use num_traits::One;

use super::basis::MonomialBasis;
use super::pencil::Pencil;
use crate::error::{Error, Result};
use crate::polycore::{ratio, Monomial, Rational, SymMatrix};

/// Order in which the variables of `β` missing from the slot (odd labels)
/// and those of the slot missing from `β` (even labels) are numbered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainOrder {
    #[default]
    Ascending,
    Descending,
}

/// One symmetric entry of a transfer pencil: coefficient `value` of variable
/// `var` at positions `(i, j)` and `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferEntry {
    pub var: usize,
    pub i: usize,
    pub j: usize,
    pub value: Rational,
}

/// Sparse rank-≤2 pencil `C(z)` with `C(z)Ψᵀ = z^β e_slot`.
pub fn transfer_entries(
    basis: &MonomialBasis,
    beta: &Monomial,
    slot: usize,
    order: ChainOrder,
) -> Result<Vec<TransferEntry>> {
    let n = basis.degree();
    if !beta.is_multiaffine() || beta.degree() != n + 1 || beta.nvars() != basis.nvars() {
        return Err(Error::BadInput(format!(
            "target monomial {beta} must be multiaffine of degree {}",
            n + 1
        )));
    }
    if slot >= basis.len() {
        return Err(Error::BadInput(format!(
            "slot {slot} outside basis of size {}",
            basis.len()
        )));
    }
    let alpha = basis.get(slot);
    if !alpha.is_multiaffine() || alpha.degree() != n {
        return Err(Error::BadInput(format!("basis monomial {alpha} is not multiaffine")));
    }
    let gamma = alpha.gcd(beta);
    let mut odd: Vec<usize> = beta.support().into_iter().filter(|&v| alpha.exp(v) == 0).collect();
    let mut even: Vec<usize> = alpha.support().into_iter().filter(|&v| beta.exp(v) == 0).collect();
    if order == ChainOrder::Descending {
        odd.reverse();
        even.reverse();
    }
    let k = odd.len();
    if k == 1 {
        return Ok(vec![TransferEntry {
            var: odd[0],
            i: slot,
            j: slot,
            value: Rational::one(),
        }]);
    }
    // w[0..2k-1] holds the labels w_1 … w_{2k-1}
    let w: Vec<usize> = (0..2 * k - 1)
        .map(|t| if t % 2 == 0 { odd[t / 2] } else { even[t / 2] })
        .collect();
    let mut alphas: Vec<Monomial> = Vec::with_capacity(2 * k - 1);
    alphas.push(alpha.clone());
    let mut second = gamma.clone();
    for &v in &odd[1..] {
        second = second.times_var(v);
    }
    alphas.push(second);
    for j in 2..2 * k - 1 {
        let prev = &alphas[j - 2];
        let next = prev
            .times_var(w[j - 2])
            .over_var(w[j - 1])
            .ok_or_else(|| Error::Internal("transfer chain left the monomial lattice".into()))?;
        alphas.push(next);
    }
    let idx = alphas
        .iter()
        .map(|a| {
            basis
                .index_of(a)
                .ok_or_else(|| Error::BadInput(format!("chain monomial {a} missing from basis")))
        })
        .collect::<Result<Vec<_>>>()?;
    let half = ratio(1, 2);
    let mut out = Vec::with_capacity(2 * k - 1);
    for t in 0..2 * k - 2 {
        let sign = if t % 2 == 0 { half.clone() } else { -half.clone() };
        out.push(TransferEntry {
            var: w[t],
            i: idx[t],
            j: idx[t + 1],
            value: sign,
        });
    }
    out.push(TransferEntry {
        var: w[2 * k - 2],
        i: idx[0],
        j: idx[2 * k - 2],
        value: half,
    });
    Ok(out)
}

pub fn transfer_pencil(basis: &MonomialBasis, beta: &Monomial, slot: usize) -> Result<Pencil> {
    transfer_pencil_with(basis, beta, slot, ChainOrder::Ascending)
}

pub fn transfer_pencil_with(basis: &MonomialBasis, beta: &Monomial, slot: usize, order: ChainOrder) -> Result<Pencil> {
    let entries = transfer_entries(basis, beta, slot, order)?;
    let mut coeffs = vec![SymMatrix::zeros(basis.len()); basis.nvars()];
    for e in entries {
        coeffs[e.var].add_sym(e.i, e.j, &e.value);
    }
    Pencil::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{Form, MatrixForm};

    fn check(basis: &MonomialBasis, beta: &Monomial, slot: usize, order: ChainOrder) {
        let c = transfer_pencil_with(basis, beta, slot, order).unwrap();
        let lhs = c.as_matrix_form().mul(&basis.psi(1).transpose());
        let mut rhs = vec![Form::zero(basis.nvars(), beta.degree()); basis.len()];
        rhs[slot] = Form::term(beta.clone(), Rational::one());
        assert_eq!(lhs, MatrixForm::new(basis.len(), 1, rhs).unwrap());
        for a in c.coeffs() {
            assert!(a.rank() <= 2);
        }
    }

    #[test]
    fn rank_one_case() {
        let b = MonomialBasis::multiaffine(2, 1);
        check(&b, &Monomial::new(vec![1, 1]), 0, ChainOrder::Ascending);
    }

    #[test]
    fn chain_case_both_orders() {
        let b = MonomialBasis::multiaffine(3, 1);
        let beta = Monomial::new(vec![1, 0, 1]);
        let slot = b.index_of(&Monomial::new(vec![0, 1, 0])).unwrap();
        check(&b, &beta, slot, ChainOrder::Ascending);
        check(&b, &beta, slot, ChainOrder::Descending);
        let b5 = MonomialBasis::multiaffine(6, 2);
        let beta = Monomial::new(vec![1, 0, 1, 0, 1, 0]);
        for slot in 0..b5.len() {
            check(&b5, &beta, slot, ChainOrder::Ascending);
            check(&b5, &beta, slot, ChainOrder::Descending);
        }
    }

    #[test]
    fn rejects_square_target() {
        let b = MonomialBasis::multiaffine(3, 1);
        assert!(matches!(
            transfer_pencil(&b, &Monomial::new(vec![2, 0, 0]), 0),
            Err(Error::BadInput(_))
        ));
    }
}
