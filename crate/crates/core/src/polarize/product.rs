use num_traits::Zero;

use super::basis::MonomialBasis;
use super::pencil::Pencil;
use super::transfer::{transfer_entries, ChainOrder};
use crate::error::{Error, Result};
use crate::polycore::{wronskian, Form, MatrixForm, Monomial, QMatrix, Rational, SymMatrix};
use crate::reduce::{reduce_all, MultiaffinizationMap};

/// Pencil with `q(ζ)P(z) = Ψ(ζ) A(z) Ψ(z)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub basis: MonomialBasis,
    pub pencil: Pencil,
    /// Output block size of `P`.
    pub m: usize,
    /// Pencil size in the multiaffine variables before identification.
    pub multiaffine_size: usize,
}

impl Polarization {
    pub fn size(&self) -> usize {
        self.pencil.size()
    }
}

fn validate(q: &Form, p: &MatrixForm) -> Result<()> {
    if !p.is_symmetric() {
        return Err(Error::Invariant("numerator is not symmetric".into()));
    }
    if q.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: q.nvars(),
            found: p.nvars(),
        });
    }
    if p.degree() != q.degree() + 1 {
        return Err(Error::DegreeMismatch(format!(
            "numerator degree {} must be denominator degree {} plus one",
            p.degree(),
            q.degree()
        )));
    }
    Ok(())
}

/// Per-variable caps `n_k = max(deg_k q, deg_k P)`.
pub fn product_caps(q: &Form, p: &MatrixForm) -> Vec<u32> {
    (0..q.nvars()).map(|k| q.degree_in(k).max(p.degree_in(k))).collect()
}

pub fn polarize_product(q: &Form, p: &MatrixForm) -> Result<Polarization> {
    polarize_product_with(q, p, ChainOrder::Ascending)
}

/// Builds the pencil in multiaffine variables from Kronecker products of
/// transfer pencils with the coefficient matrices of `P`, then identifies the
/// variable groups and merges coinciding basis monomials.
pub fn polarize_product_with(q: &Form, p: &MatrixForm, order: ChainOrder) -> Result<Polarization> {
    validate(q, p)?;
    let d = q.nvars();
    let n = q.degree();
    let m = p.size();
    let caps = product_caps(q, p);
    let basis = MonomialBasis::capped(d, n, &caps);
    let size = basis.len() * m;

    let map = MultiaffinizationMap::consecutive(&caps);
    let qh = reduce_all(q, &map)?;
    let ph = p.map_entries(|e| reduce_all(e, &map).expect("bounds cover every degree"));
    let fresh = MonomialBasis::multiaffine(map.fresh_nvars(), n);

    // fresh basis index -> merged basis index
    let merge: Vec<usize> = fresh
        .iter()
        .map(|mono| {
            let mut exps = vec![0u32; d];
            for v in mono.support() {
                exps[map.owner(v)] += mono.exp(v);
            }
            basis
                .index_of(&Monomial::new(exps))
                .expect("identified monomial respects caps")
        })
        .collect();

    let mut acc: Vec<QMatrix> = vec![QMatrix::zeros(size, size); d];
    let betas = ph.support();
    for (alpha, a) in qh.terms() {
        let slot = fresh.index_of(alpha).expect("multiaffine support");
        for beta in &betas {
            let b = ph.coefficient_matrix(beta);
            if b.is_zero() {
                continue;
            }
            for e in transfer_entries(&fresh, beta, slot, order)? {
                let var = map.owner(e.var);
                let scale = a * &e.value;
                let (ri, rj) = (merge[e.i], merge[e.j]);
                for x in 0..m {
                    for y in 0..m {
                        let bxy = b.get(x, y);
                        if bxy.is_zero() {
                            continue;
                        }
                        let v = &scale * bxy;
                        acc[var].add_at(ri * m + x, rj * m + y, &v);
                        if e.i != e.j {
                            acc[var].add_at(rj * m + x, ri * m + y, &v);
                        }
                    }
                }
            }
        }
    }
    let coeffs = acc
        .into_iter()
        .map(SymMatrix::from_qmatrix)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Internal(format!("assembled pencil lost symmetry: {e}")))?;
    Ok(Polarization {
        basis,
        pencil: Pencil::new(coeffs)?,
        m,
        multiaffine_size: fresh.len() * m,
    })
}

/// Coefficients of `q` in the basis, as a column.
pub fn coefficient_vector(q: &Form, basis: &MonomialBasis) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (mono, c) in q.terms() {
        let i = basis
            .index_of(mono)
            .ok_or_else(|| Error::BadInput(format!("monomial {mono} of q outside the basis")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// Exact check of `A(z)Ψ(z)ᵀ = (q_1 P, …, q_N P)ᵀ`, which is equivalent to
/// the product representation for all `ζ, z`.
pub fn check_product_identity(q: &Form, p: &MatrixForm, basis: &MonomialBasis, pencil: &Pencil) -> bool {
    let m = p.size();
    if pencil.size() != basis.len() * m {
        return false;
    }
    let Ok(qv) = coefficient_vector(q, basis) else {
        return false;
    };
    let lhs = pencil.as_matrix_form().mul(&basis.psi(m).transpose());
    for (i, c) in qv.iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                if lhs.get(i * m + a, b) != &p.get(a, b).scale(c).retagged_if_zero(lhs.degree()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact check of `W_{z_k}[q, P] = Ψ A_k Ψᵀ` for every `k`.
pub fn check_wronskian_identity(q: &Form, p: &MatrixForm, basis: &MonomialBasis, pencil: &Pencil) -> bool {
    let m = p.size();
    let psi = basis.psi(m);
    let psit = psi.transpose();
    (0..q.nvars()).all(|k| {
        let Ok(w) = wronskian(q, p, k) else {
            return false;
        };
        let rep = psi.mul_constant(&pencil.coeff(k).to_qmatrix()).mul(&psit);
        rep == w
    })
}

/// Whether two pencils representing the same product differ by a gauge term:
/// `S(z)Ψᵀ ≡ 0` and `Ψ S_k Ψᵀ ≡ 0` for every `k`.
pub fn gauge_difference_check(p1: &Pencil, p2: &Pencil, basis: &MonomialBasis) -> Result<bool> {
    let s = p1.sub(p2)?;
    if basis.is_empty() || s.size() % basis.len() != 0 {
        return Err(Error::SizeMismatch(format!(
            "pencil size {} is not a multiple of basis size {}",
            s.size(),
            basis.len()
        )));
    }
    let m = s.size() / basis.len();
    let psi = basis.psi(m);
    let psit = psi.transpose();
    if !s.as_matrix_form().mul(&psit).is_zero() {
        return Ok(false);
    }
    Ok(s.coeffs()
        .iter()
        .all(|c| psi.mul_constant(&c.to_qmatrix()).mul(&psit).is_zero()))
}
