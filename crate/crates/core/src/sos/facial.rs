//! Exact facial reduction of the Gram space.
//!
//! If `vᵀ F(z) v = 0` at a real point `z`, every PSD Gram matrix `G` of `F`
//! satisfies `G u = 0` for `u = Ψ(z)ᵀ v`. Collecting such `u` from rational
//! kernel vectors at random integer points confines `G` to `B G' Bᵀ` with
//! `B` spanning their orthogonal complement.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::space::GramClass;
use crate::linalg::{affine_solve, nullspace, rank};
use crate::polarize::MonomialBasis;
use crate::polycore::{rat, rationalize, to_f64, MatrixForm, QMatrix, Rational, SymMatrix};

const MAX_POINTS: usize = 60;
const QUIET_POINTS: usize = 4;

/// Independent vectors every PSD Gram matrix of `f` must annihilate.
pub(crate) fn forced_kernel(basis: &MonomialBasis, m: usize, f: &MatrixForm) -> Vec<Vec<Rational>> {
    let n = basis.len() * m;
    let d = f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut quiet = 0;
    for _ in 0..MAX_POINTS {
        let z: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let value = f.evaluate_real(&z);
        let kernel = nullspace(&value, m);
        let before = found.len();
        for v in kernel {
            let psi: Vec<Rational> = basis.iter().map(|a| monomial_value(a.exps(), &z)).collect();
            let mut u = vec![Rational::zero(); n];
            for (i, p) in psi.iter().enumerate() {
                for (a, va) in v.iter().enumerate() {
                    u[i * m + a] = p * va;
                }
            }
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let mut trial = found.clone();
            trial.push(u);
            if rank(&QMatrix::from_rows(trial.clone()).expect("rectangular")) > found.len() {
                found = trial;
            }
        }
        if found.len() == n {
            break;
        }
        quiet = if found.len() == before { quiet + 1 } else { 0 };
        if quiet >= QUIET_POINTS && (found.is_empty() || quiet >= 2 * QUIET_POINTS) {
            break;
        }
    }
    found
}

fn monomial_value(exps: &[u32], z: &[Rational]) -> Rational {
    exps.iter()
        .zip(z)
        .fold(rat(1), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
}

/// Gram matrices `B G' Bᵀ` meeting the class constraints, parametrized as
/// `vech(G') = x0 + N y`.
pub(crate) struct Face {
    n: usize,
    b: Vec<Vec<Rational>>,
    k: usize,
    x0: Vec<Rational>,
    null: Vec<Vec<Rational>>,
    x0_f: DVector<f64>,
    null_f: DMatrix<f64>,
    /// Weighted least-squares map from `vech` to `y`.
    solve_f: DMatrix<f64>,
}

fn vech_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * k - i * (i + 1) / 2 + j
}

impl Face {
    /// `None` when no matrix on the face meets the constraints.
    pub(crate) fn new(kernel: &[Vec<Rational>], n: usize, classes: &[GramClass]) -> Option<Self> {
        let b = nullspace(kernel, n);
        let k = b.len();
        let nv = k * (k + 1) / 2;
        let mut rows = Vec::with_capacity(classes.len());
        let mut rhs = Vec::with_capacity(classes.len());
        for c in classes {
            let mut row = vec![Rational::zero(); nv];
            for &(r, s) in &c.positions {
                for (i, bi) in b.iter().enumerate() {
                    if bi[r].is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate() {
                        if !bj[s].is_zero() {
                            row[vech_index(k, i, j)] += &bi[r] * &bj[s];
                        }
                    }
                }
            }
            rows.push(row);
            rhs.push(c.target.clone());
        }
        let (x0, null) = affine_solve(&rows, &rhs, nv)?;
        let p = null.len();
        let x0_f = DVector::from_iterator(nv, x0.iter().map(to_f64));
        let null_f = DMatrix::from_fn(nv, p, |r, c| to_f64(&null[c][r]));
        let w = DVector::from_fn(nv, |idx, _| {
            let (i, j) = unvech(k, idx);
            if i == j {
                1.0
            } else {
                2.0
            }
        });
        let ntw = null_f.transpose() * DMatrix::from_diagonal(&w);
        let inv = if p == 0 {
            DMatrix::zeros(0, 0)
        } else {
            (&ntw * &null_f).pseudo_inverse(1e-12).ok()?
        };
        Some(Self {
            n,
            b,
            k,
            x0,
            null,
            x0_f,
            null_f,
            solve_f: inv * ntw,
        })
    }

    /// Number of free parameters on the face.
    pub(crate) fn freedom(&self) -> usize {
        self.null.len()
    }

    fn vech(&self, x: &DMatrix<f64>) -> DVector<f64> {
        let k = self.k;
        DVector::from_fn(k * (k + 1) / 2, |idx, _| {
            let (i, j) = unvech(k, idx);
            0.5 * (x[(i, j)] + x[(j, i)])
        })
    }

    fn unvech_f(&self, v: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.k, self.k, |i, j| v[vech_index(self.k, i, j)])
    }

    /// Orthogonal projection of `G'` onto the affine face.
    pub(crate) fn project(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let y = &self.solve_f * (self.vech(x) - &self.x0_f);
        self.unvech_f(&(&self.x0_f + &self.null_f * y))
    }

    pub(crate) fn start(&self) -> DMatrix<f64> {
        self.unvech_f(&self.x0_f)
    }

    /// Exact point of the face nearest to `x` in the `y` coordinates rounded
    /// with denominators up to `den`, as a full Gram matrix.
    pub(crate) fn round(&self, x: &DMatrix<f64>, den: u64) -> SymMatrix {
        let y = &self.solve_f * (self.vech(x) - &self.x0_f);
        let mut v = self.x0.clone();
        for (c, yc) in self.null.iter().zip(y.iter()) {
            let q = rationalize(*yc, den);
            if q.is_zero() {
                continue;
            }
            for (vi, ci) in v.iter_mut().zip(c) {
                if !ci.is_zero() {
                    *vi += &q * ci;
                }
            }
        }
        self.expand(&v)
    }

    pub(crate) fn particular(&self) -> SymMatrix {
        self.expand(&self.x0)
    }

    /// `B G' Bᵀ` from `vech(G')`.
    fn expand(&self, v: &[Rational]) -> SymMatrix {
        let n = self.n;
        let mut bg = vec![vec![Rational::zero(); self.k]; n];
        for (r, row) in bg.iter_mut().enumerate() {
            for (i, bi) in self.b.iter().enumerate() {
                if bi[r].is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let g = &v[vech_index(self.k, i, j)];
                    if !g.is_zero() {
                        *out += &bi[r] * g;
                    }
                }
            }
        }
        let mut full = SymMatrix::zeros(n);
        for r in 0..n {
            for s in r..n {
                let mut acc = Rational::zero();
                for (j, bj) in self.b.iter().enumerate() {
                    if !bj[s].is_zero() && !bg[r][j].is_zero() {
                        acc += &bg[r][j] * &bj[s];
                    }
                }
                full.set(r, s, acc);
            }
        }
        full
    }
}

fn unvech(k: usize, idx: usize) -> (usize, usize) {
    let mut i = 0;
    let mut start = 0;
    while start + (k - i) <= idx {
        start += k - i;
        i += 1;
    }
    (i, i + idx - start)
}
