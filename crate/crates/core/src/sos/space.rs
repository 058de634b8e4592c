use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gram::{annihilator_edges, GramSpace};
use crate::polarize::MonomialBasis;
use crate::polycore::{monomials_with_caps, MatrixForm, Monomial, Rational, SymMatrix};

/// Ordered matrix positions whose entries add up to one coefficient of the
/// target, with that coefficient (doubled off the block diagonal).
#[derive(Clone, Debug)]
pub(crate) struct GramClass {
    pub positions: Vec<(usize, usize)>,
    pub target: Rational,
}

pub(crate) fn gram_classes(basis: &MonomialBasis, m: usize, f: &MatrixForm) -> Vec<GramClass> {
    let nb = basis.len();
    let mut by_key: BTreeMap<(Monomial, usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..nb {
        for j in 0..nb {
            let beta = basis.get(i).mul(basis.get(j));
            for a in 0..m {
                for b in 0..m {
                    by_key
                        .entry((beta.clone(), a.min(b), a.max(b)))
                        .or_default()
                        .push((i * m + a, j * m + b));
                }
            }
        }
    }
    by_key
        .into_iter()
        .map(|((beta, a, b), positions)| {
            let c = f.get(a, b).coeff(&beta);
            let target = if a == b { c } else { &c + &c };
            GramClass { positions, target }
        })
        .collect()
}

/// Coefficients of `f` that no basis product reaches, as `(a, b, β, value)`
/// with `a ≤ b`.
pub(crate) fn uncovered_terms(basis: &MonomialBasis, f: &MatrixForm) -> Vec<(usize, usize, Monomial, Rational)> {
    let mut reach: BTreeSet<Monomial> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            reach.insert(basis.get(i).mul(basis.get(j)));
        }
    }
    let m = f.size();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a..m {
            for (beta, c) in f.get(a, b).terms() {
                if !reach.contains(beta) {
                    out.push((a, b, beta.clone(), c.clone()));
                }
            }
        }
    }
    out
}

/// Exact orthogonal projection onto the affine Gram space: every class is
/// shifted uniformly to hit its target.
pub(crate) fn project_exact(g: &SymMatrix, classes: &[GramClass]) -> SymMatrix {
    let mut out = g.clone();
    for c in classes {
        let sum: Rational = c.positions.iter().map(|&(r, s)| g.get(r, s).clone()).sum();
        let shift = (&c.target - sum) / Rational::from_integer((c.positions.len() as i64).into());
        if shift.is_zero() {
            continue;
        }
        for &(r, s) in &c.positions {
            if r <= s {
                let v = out.get(r, s) + &shift;
                out.set(r, s, v);
            }
        }
    }
    out
}

fn ceil_half(x: u32) -> u32 {
    x.div_ceil(2)
}

fn directions(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if d <= 6 {
        let total = 3usize.pow(d as u32);
        for code in 1..total {
            let mut c = code;
            let w: Vec<i64> = (0..d)
                .map(|_| {
                    let v = (c % 3) as i64 - 1;
                    c /= 3;
                    v
                })
                .collect();
            if w.iter().any(|&x| x != 0) {
                out.push(w);
            }
        }
    } else {
        for k in 0..d {
            for s in [-1i64, 1] {
                let mut w = vec![0; d];
                w[k] = s;
                out.push(w.clone());
                for l in k + 1..d {
                    for t in [-1i64, 1] {
                        let mut w2 = w.clone();
                        w2[l] = t;
                        out.push(w2);
                    }
                }
            }
        }
    }
    out
}

fn dot(w: &[i64], a: &Monomial) -> i64 {
    w.iter().zip(a.exps()).map(|(x, &e)| x * e as i64).sum()
}

/// Half-degree monomials that can occur in a Gram representation of `f` with
/// a positive semidefinite Gram matrix.
fn pruned_basis(f: &MatrixForm, caps: &[u32]) -> Vec<Monomial> {
    let d = f.nvars();
    let n = f.degree() / 2;
    let m = f.size();
    let diag: BTreeSet<Monomial> = (0..m)
        .flat_map(|a| f.get(a, a).terms().keys().cloned().collect::<Vec<_>>())
        .collect();
    if diag.is_empty() {
        return Vec::new();
    }
    let mut keep: Vec<Monomial> = monomials_with_caps(d, n, caps);
    for w in directions(d) {
        let hmax = diag.iter().map(|b| dot(&w, b)).max().unwrap();
        keep.retain(|a| 2 * dot(&w, a) <= hmax);
    }
    // a diagonal entry whose square has no other factorization and a zero
    // coefficient must vanish, and with it the whole row
    loop {
        let set: BTreeSet<&Monomial> = keep.iter().collect();
        let forced: Vec<Monomial> = keep
            .iter()
            .filter(|a| {
                let sq = a.mul(a);
                let alone = keep
                    .iter()
                    .all(|b| *b == **a || sq.div(b).is_none_or(|c| !set.contains(&c)));
                alone && (0..m).all(|k| f.get(k, k).coeff(&sq).is_zero())
            })
            .cloned()
            .collect();
        if forced.is_empty() {
            break;
        }
        keep.retain(|a| !forced.contains(a));
    }
    keep
}

/// Gram space of a symmetric matrix form of even degree. The basis is the
/// degree-`deg F / 2` monomials under `ceil(deg_k F / 2)` (intersected with
/// `caps` when given), pruned to the half Newton polytope of the diagonal.
pub fn build_gram_space(f: &MatrixForm, caps: Option<&[u32]>) -> Result<GramSpace> {
    if !f.is_square() || !f.is_symmetric() {
        return Err(Error::Invariant("Gram target must be a symmetric matrix form".into()));
    }
    if !f.degree().is_multiple_of(2) {
        return Err(Error::OddDegree(f.degree()));
    }
    let d = f.nvars();
    let m = f.size();
    let mut cap: Vec<u32> = (0..d).map(|k| ceil_half(f.degree_in(k))).collect();
    if let Some(c) = caps {
        if c.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: c.len(),
            });
        }
        for (x, &y) in cap.iter_mut().zip(c) {
            *x = (*x).min(y);
        }
    }
    let basis = MonomialBasis::from_monomials(d, f.degree() / 2, pruned_basis(f, &cap));
    let classes = gram_classes(&basis, m, f);
    let particular = project_exact(&SymMatrix::zeros(basis.len() * m), &classes);
    Ok(GramSpace {
        annihilator_basis: blocked_annihilator(&basis, m),
        uncovered: uncovered_terms(&basis, f)
            .into_iter()
            .map(|(_, _, _, c)| c.abs())
            .max()
            .unwrap_or_else(Rational::zero),
        basis,
        m,
        target: f.clone(),
        particular,
    })
}

fn blocked_annihilator(basis: &MonomialBasis, m: usize) -> Vec<SymMatrix> {
    let nb = basis.len();
    let scalar: Vec<SymMatrix> = annihilator_edges(basis).iter().map(|e| e.matrix(basis)).collect();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a..m {
            for e in &scalar {
                let mut s = SymMatrix::zeros(nb * m);
                for i in 0..nb {
                    for j in 0..nb {
                        let v = e.get(i, j);
                        if !v.is_zero() {
                            s.set(i * m + a, j * m + b, v.clone());
                        }
                    }
                }
                out.push(s);
            }
            if a < b {
                for i in 0..nb {
                    for j in i + 1..nb {
                        let mut s = SymMatrix::zeros(nb * m);
                        s.set(i * m + a, j * m + b, Rational::from_integer(1.into()));
                        s.set(j * m + a, i * m + b, Rational::from_integer((-1).into()));
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}
