//! Exact and floating linear algebra helpers.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::{CRational, QMatrix, Rational, SymMatrix};

/// Weighted rank factorization `S = Σ_i w_i c_i c_iᵀ` with `w_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    pub columns: Vec<Vec<Rational>>,
    pub weights: Vec<Rational>,
}

impl Ldl {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn reconstruct(&self, n: usize) -> SymMatrix {
        let mut s = SymMatrix::zeros(n);
        for (c, w) in self.columns.iter().zip(&self.weights) {
            for i in 0..n {
                if c[i].is_zero() {
                    continue;
                }
                for j in i..n {
                    if !c[j].is_zero() {
                        s.add_sym(i, j, &(w * &c[i] * &c[j]));
                    }
                }
            }
        }
        s
    }
}

/// Exact LDLᵀ with diagonal pivoting; succeeds iff `s` is positive
/// semidefinite.
pub fn ldl_psd(s: &SymMatrix) -> Result<Ldl> {
    let n = s.size();
    let mut work: Vec<Vec<Rational>> = s.rows();
    let mut active: Vec<bool> = vec![true; n];
    let mut out = Ldl {
        columns: Vec::new(),
        weights: Vec::new(),
    };
    loop {
        let mut pivot: Option<usize> = None;
        for i in (0..n).filter(|&i| active[i]) {
            let d = &work[i][i];
            if d.is_negative() {
                return Err(Error::NotPsd(format!("negative pivot at index {i}")));
            }
            if d.is_zero() {
                continue;
            }
            if pivot.is_none_or(|p| work[p][p] < *d) {
                pivot = Some(i);
            }
        }
        let Some(p) = pivot else {
            for i in (0..n).filter(|&i| active[i]) {
                for j in (0..n).filter(|&j| active[j]) {
                    if !work[i][j].is_zero() {
                        return Err(Error::NotPsd(format!("zero diagonal with nonzero entry at ({i}, {j})")));
                    }
                }
            }
            return Ok(out);
        };
        let d = work[p][p].clone();
        let col: Vec<Rational> = (0..n)
            .map(|i| if active[i] { &work[i][p] / &d } else { Rational::zero() })
            .collect();
        for i in (0..n).filter(|&i| active[i] && !col[i].is_zero()) {
            let f = &col[i] * &d;
            for j in (0..n).filter(|&j| active[j] && !col[j].is_zero()) {
                let v = &f * &col[j];
                work[i][j] -= v;
            }
        }
        active[p] = false;
        out.columns.push(col);
        out.weights.push(d);
    }
}

/// Exact rank by Gaussian elimination.
pub fn rank(a: &QMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let cols = a.cols();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &piv;
            for j in c..cols {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form of `[A | b]` over ℚ; returns the reduced rows
/// and the pivot column of each.
fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..rows[i].len() {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : A x = 0}` for an `r × cols` matrix given by rows.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    affine_solve(rows, &vec![Rational::zero(); rows.len()], cols)
        .map(|(_, n)| n)
        .unwrap_or_default()
}

/// Solutions of `A x = b` as a particular solution plus a nullspace basis;
/// `None` when inconsistent.
pub fn affine_solve(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    cols: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let (red, pivots) = rref(aug, cols);
    if red
        .iter()
        .any(|r| r[..cols].iter().all(Zero::is_zero) && !r[cols].is_zero())
    {
        return None;
    }
    let mut x0 = vec![Rational::zero(); cols];
    for (r, &c) in red.iter().zip(&pivots) {
        x0[c] = r[cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::from_integer(1.into());
            for (r, &c) in red.iter().zip(&pivots) {
                v[c] = -r[f].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

/// Sparse linear system over ℚ, solved by exact elimination.
#[derive(Default, Debug)]
pub struct SparseSystem {
    rows: Vec<(BTreeMap<usize, Rational>, Rational)>,
}

impl SparseSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: BTreeMap<usize, Rational>, rhs: Rational) {
        self.rows.push((row, rhs));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// One solution (free unknowns set to zero), or `None` if inconsistent.
    pub fn solve(self) -> Option<BTreeMap<usize, Rational>> {
        // pivot column -> reduced row with unit pivot
        let mut pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
        for (mut row, mut rhs) in self.rows {
            loop {
                let hit = row.keys().find(|c| pivots.contains_key(c)).copied();
                let Some(c) = hit else { break };
                let f = row.remove(&c).unwrap();
                let (prow, prhs) = &pivots[&c];
                for (k, v) in prow {
                    if *k == c {
                        continue;
                    }
                    let e = row.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                rhs -= &f * prhs;
            }
            let Some((&c, _)) = row.iter().next() else {
                if !rhs.is_zero() {
                    return None;
                }
                continue;
            };
            let p = row[&c].clone();
            for v in row.values_mut() {
                *v /= &p;
            }
            rhs /= &p;
            // keep existing pivot rows free of the new pivot column
            for (prow, prhs) in pivots.values_mut() {
                if let Some(f) = prow.remove(&c) {
                    for (k, v) in &row {
                        if *k == c {
                            continue;
                        }
                        let e = prow.entry(*k).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            prow.remove(k);
                        }
                    }
                    *prhs -= &f * &rhs;
                }
            }
            pivots.insert(c, (row, rhs));
        }
        Some(pivots.into_iter().map(|(c, (_, rhs))| (c, rhs)).collect())
    }
}

/// Solves `A X = B` over Gaussian rationals; `None` if `A` is singular.
pub fn complex_solve(a: &[Vec<CRational>], b: &[Vec<CRational>]) -> Option<Vec<Vec<CRational>>> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<CRational>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inv()?;
        for j in c..n + k {
            m[c][j] = &m[c][j] * &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..n + k {
                let v = &f * &m[c][j];
                m[i][j] = &m[i][j] - &v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Schur complement `M11 − M12 M22⁻¹ M21` of the leading `m × m` block;
/// `None` when `M22` is singular.
pub fn schur_complement(mat: &[Vec<CRational>], m: usize) -> Option<Vec<Vec<CRational>>> {
    let n = mat.len();
    if n == m {
        return Some(mat.to_vec());
    }
    let a22: Vec<Vec<CRational>> = mat[m..].iter().map(|r| r[m..].to_vec()).collect();
    let a21: Vec<Vec<CRational>> = mat[m..].iter().map(|r| r[..m].to_vec()).collect();
    let x = complex_solve(&a22, &a21)?;
    let mut out: Vec<Vec<CRational>> = mat[..m].iter().map(|r| r[..m].to_vec()).collect();
    for i in 0..m {
        for j in 0..m {
            let mut acc = CRational::zero();
            for t in 0..n - m {
                acc = &acc + &(&mat[i][m + t] * &x[t][j]);
            }
            out[i][j] = &out[i][j] - &acc;
        }
    }
    Some(out)
}

pub fn min_eigenvalue(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 {
        return f64::INFINITY;
    }
    a.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Projection onto `{X ⪰ floor·I}` in Frobenius norm.
pub fn clip_eigenvalues(a: &DMatrix<f64>, floor: f64) -> DMatrix<f64> {
    let eig = a.clone().symmetric_eigen();
    let lam = eig.eigenvalues.map(|l| l.max(floor));
    let v = &eig.eigenvectors;
    let mut out = v * DMatrix::from_diagonal(&lam) * v.transpose();
    // remove asymmetric round-off
    let t = out.transpose();
    out = (&out + &t) * 0.5;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, ratio};

    #[test]
    fn ldl_reconstructs_psd() {
        let s = SymMatrix::from_i64(&[&[4, 2, 0], &[2, 1, 0], &[0, 0, 3]]).unwrap();
        let l = ldl_psd(&s).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.reconstruct(3), s);
    }

    #[test]
    fn ldl_rejects_indefinite() {
        let s = SymMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(ldl_psd(&s).is_err());
        let t = SymMatrix::from_i64(&[&[1, 2], &[2, 1]]).unwrap();
        assert!(ldl_psd(&t).is_err());
    }

    #[test]
    fn sparse_solve_consistent_and_not() {
        let mut sys = SparseSystem::new();
        sys.push(BTreeMap::from([(0, rat(1)), (1, rat(1))]), rat(3));
        sys.push(BTreeMap::from([(0, rat(1)), (1, rat(-1))]), rat(1));
        let x = sys.solve().unwrap();
        assert_eq!(x[&0], rat(2));
        assert_eq!(x[&1], rat(1));
        let mut bad = SparseSystem::new();
        bad.push(BTreeMap::from([(0, rat(1))]), rat(1));
        bad.push(BTreeMap::from([(0, rat(2))]), rat(1));
        assert!(bad.solve().is_none());
    }

    #[test]
    fn schur_of_two_by_two() {
        let c = |x: i64| CRational::real(rat(x));
        let m = vec![vec![c(2), c(1)], vec![c(1), c(2)]];
        let s = schur_complement(&m, 1).unwrap();
        assert_eq!(s[0][0], CRational::real(ratio(3, 2)));
    }

    #[test]
    fn exact_rank() {
        let a = QMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(rank(&a), 2);
    }
}
