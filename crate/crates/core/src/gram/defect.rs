use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use super::pairs::{annihilator_coordinates, single_move, AnnihilatorEdge};
use crate::error::{Error, Result};
use crate::linalg::SparseSystem;
use crate::polarize::MonomialBasis;
use crate::polycore::{Monomial, QMatrix, Rational, SymMatrix};

/// Given `S_d` with `Ψ S_d Ψᵀ ≡ 0` whose rows vanish on monomials carrying
/// `z_d^{caps[d]}`, finds symmetric `S_k` with `(Σ_k z_k S_k) Ψᵀ ≡ 0`.
///
/// `Ψ = (z^{α_1} I_m, …, z^{α_N} I_m)` where `m = size / N`. The result has
/// one matrix per variable, `S_d` itself at index `d`.
pub fn defect_solve(s_d: &SymMatrix, basis: &MonomialBasis, caps: &[u32], d: usize) -> Result<Vec<SymMatrix>> {
    let nb = basis.len();
    let nvars = basis.nvars();
    if nb == 0 || !s_d.size().is_multiple_of(nb) {
        return Err(Error::SizeMismatch(format!(
            "matrix of size {} does not fit basis of size {nb}",
            s_d.size()
        )));
    }
    if d >= nvars {
        return Err(Error::BadInput(format!("variable z{} out of range", d + 1)));
    }
    let m = s_d.size() / nb;
    let top: Vec<bool> = basis.iter().map(|a| a.exp(d) >= caps[d]).collect();
    for i in 0..nb {
        for a in 0..m {
            if top[i] && (0..s_d.size()).any(|c| !s_d.get(i * m + a, c).is_zero()) {
                return Err(Error::PreconditionViolated(format!(
                    "row of {} with full power of z{} is nonzero",
                    basis.get(i),
                    d + 1
                )));
            }
        }
    }

    let hat_idx: Vec<usize> = (0..nb).filter(|&i| !top[i]).collect();
    let hat = MonomialBasis::from_monomials(
        nvars,
        basis.degree(),
        hat_idx.iter().map(|&i| basis.get(i).clone()).collect(),
    );

    let mut out = vec![QMatrix::zeros(nb * m, nb * m); nvars];
    for a in 0..m {
        for b in a..m {
            let block = QMatrix::from_rows(
                (0..nb)
                    .map(|i| (0..nb).map(|j| s_d.get(i * m + a, j * m + b).clone()).collect())
                    .collect(),
            )?;
            let sym = SymMatrix::symmetric_part(&block);
            let skew = {
                let mut k = block.clone();
                for i in 0..nb {
                    for j in 0..nb {
                        k.set(i, j, block.get(i, j) - sym.get(i, j));
                    }
                }
                k
            };
            let mut sol = scalar_solution(&sym, basis, &hat, &hat_idx, d)?;
            if !skew.is_zero() {
                let extra = generic_solve(&skew, basis, d, true)?;
                for (s, e) in sol.iter_mut().zip(extra) {
                    *s = add_q(s, &e);
                }
            }
            for (j, y) in sol.iter().enumerate() {
                if j == d {
                    continue;
                }
                for i in 0..nb {
                    for k in 0..nb {
                        let v = y.get(i, k);
                        if v.is_zero() {
                            continue;
                        }
                        out[j].set(i * m + a, k * m + b, v.clone());
                        out[j].set(k * m + b, i * m + a, v.clone());
                    }
                }
            }
        }
    }
    let mut result = Vec::with_capacity(nvars);
    for (j, q) in out.into_iter().enumerate() {
        if j == d {
            result.push(s_d.clone());
        } else {
            result.push(
                SymMatrix::from_qmatrix(q).map_err(|_| Error::Internal("defect solution is not symmetric".into()))?,
            );
        }
    }
    if !pencil_annihilates(&result, basis, m) {
        return Err(Error::Verification("defect solution fails the pencil identity".into()));
    }
    Ok(result)
}

fn add_q(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let mut c = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let v = b.get(i, j);
            if !v.is_zero() {
                c.add_at(i, j, v);
            }
        }
    }
    c
}

/// Explicit solutions for the edges not involving `z_d`, a generic solve for
/// the rest.
fn scalar_solution(
    sym: &SymMatrix,
    basis: &MonomialBasis,
    hat: &MonomialBasis,
    hat_idx: &[usize],
    d: usize,
) -> Result<Vec<QMatrix>> {
    let nb = basis.len();
    let nvars = basis.nvars();
    let mut sol = vec![SymMatrix::zeros(nb); nvars];
    if sym.is_zero() {
        return Ok(sol.into_iter().map(|s| s.to_qmatrix()).collect());
    }
    let restricted = sym.submatrix(hat_idx);
    let coords = annihilator_coordinates(&restricted, hat).map_err(|e| match e {
        Error::PreconditionViolated(msg) => Error::PreconditionViolated(format!("Ψ S Ψᵀ ≢ 0: {msg}")),
        other => other,
    })?;
    let mut residual = SymMatrix::zeros(nb);
    for (edge, c) in coords {
        match explicit_solution(&edge, basis, d) {
            Some(entries) => {
                for (var, u, v, val) in entries {
                    let x = &c * Rational::from_integer(val.into());
                    if u == v {
                        sol[var].add_sym(u, u, &(&x + &x));
                    } else {
                        sol[var].add_sym(u, v, &x);
                    }
                }
            }
            None => {
                let mut e = edge.matrix(hat);
                e = e.scale(&c);
                for (p, &i) in hat_idx.iter().enumerate() {
                    for (q, &j) in hat_idx.iter().enumerate() {
                        if q >= p {
                            let v = e.get(p, q);
                            if !v.is_zero() {
                                residual.add_sym(i, j, v);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<QMatrix> = sol.into_iter().map(|s| s.to_qmatrix()).collect();
    if !residual.is_zero() {
        let extra = generic_solve(&residual.to_qmatrix(), basis, d, false)?;
        for (s, e) in out.iter_mut().zip(extra) {
            *s = add_q(s, &e);
        }
    }
    Ok(out)
}

/// Entries `(variable, u, v, value)` of the basic solution for one
/// annihilator edge, when the moving variables differ from `z_d` and the
/// auxiliary monomials exist in the basis.
fn explicit_solution(
    edge: &AnnihilatorEdge,
    basis: &MonomialBasis,
    d: usize,
) -> Option<Vec<(usize, usize, usize, i64)>> {
    let idx = |m: &Monomial| basis.index_of(m);
    let square = |p: &(Monomial, Monomial)| p.0 == p.1;
    if square(&edge.child) || square(&edge.parent) {
        let (mu, other, sign) = if square(&edge.child) {
            (&edge.child.0, &edge.parent, 1)
        } else {
            (&edge.parent.0, &edge.child, -1)
        };
        let (r, l) = single_move(mu, &other.0)?;
        if r == d || l == d {
            return None;
        }
        // u3 = z_r²γ, u4 = z_r z_l γ, u5 = z_l²γ, u1 = z_d z_r γ, u2 = z_d z_l γ
        let gamma = mu.over_var(r)?.over_var(l)?;
        let u1 = idx(&gamma.times_var(d).times_var(r))?;
        let u2 = idx(&gamma.times_var(d).times_var(l))?;
        let u3 = idx(&gamma.times_var(r).times_var(r))?;
        let u4 = idx(mu)?;
        let u5 = idx(&gamma.times_var(l).times_var(l))?;
        return Some(vec![
            (l, u1, u4, -sign),
            (l, u2, u3, sign),
            (r, u1, u5, sign),
            (r, u2, u4, -sign),
        ]);
    }
    // child {z_r γ1, z_l γ2}, parent {z_l γ1, z_r γ2}
    let (c0, c1) = (&edge.child.0, &edge.child.1);
    let (p0, p1) = (&edge.parent.0, &edge.parent.1);
    let (x, xp, y, yp) = [(c0, c1), (c1, c0)]
        .into_iter()
        .flat_map(|(x, xp)| [(x, xp, p0, p1), (x, xp, p1, p0)])
        .find(|(x, _, y, _)| single_move(x, y).is_some())?;
    let (l, r) = single_move(x, y)?;
    if r == d || l == d {
        return None;
    }
    let gamma1 = x.over_var(r)?;
    let gamma2 = xp.over_var(l)?;
    let u1 = idx(x)?;
    let u2 = idx(y)?;
    let u3 = idx(xp)?;
    let u4 = idx(yp)?;
    let u5 = idx(&gamma2.times_var(d))?;
    let u6 = idx(&gamma1.times_var(d))?;
    Some(vec![(l, u1, u5, -1), (l, u4, u6, 1), (r, u2, u5, 1), (r, u3, u6, -1)])
}

/// Solves `Σ_{j≠d} z_j X_j ψᵀ = −z_d R ψᵀ` for `X_j` symmetric (or
/// skew-symmetric when `skew`), restricted to the connected part of the
/// system touched by `R`.
fn generic_solve(r: &QMatrix, basis: &MonomialBasis, d: usize, skew: bool) -> Result<Vec<QMatrix>> {
    let nb = basis.len();
    let nvars = basis.nvars();
    let mut rhs: HashMap<(usize, Monomial), Rational> = HashMap::new();
    for a in 0..nb {
        for b in 0..nb {
            let v = r.get(a, b);
            if !v.is_zero() {
                *rhs.entry((a, basis.get(b).times_var(d))).or_insert_with(Rational::zero) -= v;
            }
        }
    }
    rhs.retain(|_, v| !v.is_zero());

    // unknowns of equation (a, μ) with their coefficients
    let terms = |a: usize, mu: &Monomial| -> Vec<((usize, usize, usize), i64)> {
        let mut t = Vec::new();
        for j in (0..nvars).filter(|&j| j != d) {
            let Some(b) = mu.over_var(j).and_then(|p| basis.index_of(&p)) else {
                continue;
            };
            if skew {
                match a.cmp(&b) {
                    std::cmp::Ordering::Less => t.push(((j, a, b), 1)),
                    std::cmp::Ordering::Greater => t.push(((j, b, a), -1)),
                    std::cmp::Ordering::Equal => {}
                }
            } else {
                t.push(((j, a.min(b), a.max(b)), 1));
            }
        }
        t
    };

    let mut seen_eq: BTreeSet<(usize, Monomial)> = BTreeSet::new();
    let mut seen_var: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, Monomial)> = rhs.keys().cloned().collect();
    for e in &queue {
        seen_eq.insert(e.clone());
    }
    while let Some((a, mu)) = queue.pop_front() {
        for (key, _) in terms(a, &mu) {
            if !seen_var.insert(key) {
                continue;
            }
            let (j, p, q) = key;
            for eq in [(p, basis.get(q).times_var(j)), (q, basis.get(p).times_var(j))] {
                if seen_eq.insert(eq.clone()) {
                    queue.push_back(eq);
                }
            }
        }
    }
    let keys: Vec<(usize, usize, usize)> = seen_var.into_iter().collect();
    let col: HashMap<(usize, usize, usize), usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut sys = SparseSystem::new();
    for (a, mu) in &seen_eq {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (key, c) in terms(*a, mu) {
            let e = row.entry(col[&key]).or_insert_with(Rational::zero);
            *e += Rational::from_integer(c.into());
        }
        row.retain(|_, v| !v.is_zero());
        let b = rhs.get(&(*a, mu.clone())).cloned().unwrap_or_else(Rational::zero);
        sys.push(row, b);
    }
    let x = sys
        .solve()
        .ok_or_else(|| Error::Internal("representation defect equations are inconsistent".into()))?;
    let mut out = vec![QMatrix::zeros(nb, nb); nvars];
    for (c, v) in x {
        if v.is_zero() {
            continue;
        }
        let (j, p, q) = keys[c];
        out[j].set(p, q, v.clone());
        out[j].set(q, p, if skew { -v } else { v });
    }
    Ok(out)
}

/// Exact check of `(Σ_k z_k S_k) Ψᵀ ≡ 0` for an `m`-blocked basis.
pub fn pencil_annihilates(coeffs: &[SymMatrix], basis: &MonomialBasis, m: usize) -> bool {
    let nb = basis.len();
    for row in 0..nb * m {
        for b in 0..m {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (k, s) in coeffs.iter().enumerate() {
                for i in 0..nb {
                    let v = s.get(row, i * m + b);
                    if !v.is_zero() {
                        *acc.entry(basis.get(i).times_var(k)).or_insert_with(Rational::zero) += v;
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Exact check of `Ψ S Ψᵀ ≡ 0` for an `m`-blocked basis.
pub fn annihilates(s: &SymMatrix, basis: &MonomialBasis, m: usize) -> bool {
    let nb = basis.len();
    for a in 0..m {
        for b in 0..m {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for i in 0..nb {
                for j in 0..nb {
                    let v = s.get(i * m + a, j * m + b);
                    if !v.is_zero() {
                        *acc.entry(basis.get(i).mul(basis.get(j))).or_insert_with(Rational::zero) += v;
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
    }
    true
}
