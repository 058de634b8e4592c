#![allow(dead_code)]

use std::collections::BTreeMap;

use longres::linalg::rank;
use longres::polarize::MonomialBasis;
use longres::polycore::{
    all_monomials, parse_form, rat, ratio, CRational, Form, MatrixForm, Monomial, QMatrix, RatFn, Rational, SymMatrix,
};
use rand::Rng;

pub fn form(text: &str, d: usize) -> Form {
    parse_form(text, Some(d)).unwrap()
}

pub fn scalar_fn(p: &str, q: &str, d: usize) -> RatFn {
    RatFn::scalar(form(p, d), form(q, d)).unwrap()
}

/// Hand-written PSD pencil of size 3 whose leading 2x2 Schur complement is
/// [`schur_fixture`].
pub fn hand_pencil() -> Vec<SymMatrix> {
    vec![
        SymMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]).unwrap(),
        SymMatrix::from_i64(&[&[1, 1, 1], &[1, 2, 1], &[1, 1, 1]]).unwrap(),
    ]
}

pub fn schur_fixture() -> RatFn {
    let p = MatrixForm::symmetric(
        2,
        vec![
            form("z1^2 + 2*z1*z2", 2),
            form("z1*z2", 2),
            form("z1*z2", 2),
            form("2*z1*z2 + z2^2", 2),
        ],
    )
    .unwrap();
    RatFn::new(p, form("z1 + z2", 2)).unwrap()
}

/// Named positive real functions used across the end-to-end tests.
pub fn corpus() -> Vec<(&'static str, RatFn)> {
    vec![
        ("scaled variable", scalar_fn("3/2*z1", "1", 1)),
        ("series pair", scalar_fn("z1 + z2", "1", 2)),
        ("parallel pair", scalar_fn("z1*z2", "z1 + z2", 2)),
        ("parallel triple", scalar_fn("2*z1*z2*z3", "z1*z2 + z2*z3 + z1*z3", 3)),
        ("schur 2x2", schur_fixture()),
        ("extraction", scalar_fn("z1^2 + 2*z1*z2", "z1 + z2", 2)),
        ("ladder", scalar_fn("z1^2*z2 + 2*z1*z2^2", "z1^2 + 3*z1*z2 + z2^2", 2)),
    ]
}

pub fn is_multiaffine_member(f: &RatFn) -> bool {
    f.is_multiaffine()
}

/// Leading-block Schur complement by direct Gauss-Jordan elimination of the
/// trailing block, written independently of the library routine.
pub fn schur_oracle(a: &[Vec<CRational>], m: usize) -> Option<Vec<Vec<CRational>>> {
    let n = a.len();
    let mut w: Vec<Vec<CRational>> = a.to_vec();
    for c in m..n {
        let p = (c..n).find(|&i| !w[i][c].is_zero())?;
        w.swap(c, p);
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = &w[i][c] / &w[c][c];
            if f.is_zero() {
                continue;
            }
            let pivot = w[c].clone();
            for (x, p) in w[i].iter_mut().zip(&pivot) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Some((0..m).map(|i| w[i][..m].to_vec()).collect())
}

pub fn eval_pencil(coeffs: &[SymMatrix], z: &[CRational]) -> Vec<Vec<CRational>> {
    let n = coeffs[0].size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    coeffs
                        .iter()
                        .zip(z)
                        .fold(CRational::zero(), |acc, (a, x)| &acc + &x.scale(a.get(i, j)))
                })
                .collect()
        })
        .collect()
}

pub fn eval_fn(f: &RatFn, z: &[CRational]) -> Vec<Vec<CRational>> {
    f.evaluate(z).unwrap()
}

/// Choi's biquadratic form in x1..x3 = z1..z3, y1..y3 = z4..z6.
pub fn choi() -> MatrixForm {
    MatrixForm::scalar(form(
        "z1^2*z4^2 + z2^2*z5^2 + z3^2*z6^2 - 2*z1*z4*z2*z5 - 2*z2*z5*z3*z6 - 2*z1*z4*z3*z6 \
         + 2*z1^2*z5^2 + 2*z2^2*z6^2 + 2*z3^2*z4^2",
        6,
    ))
}

fn random_coeff(rng: &mut impl Rng) -> Rational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-5..=5);
    }
    ratio(c, rng.gen_range(1..=3))
}

/// Nonzero form of the given degree with per-variable degree at most `cap`,
/// or zero when no monomial fits.
pub fn random_form(rng: &mut impl Rng, d: usize, degree: u32, cap: u32) -> Form {
    let support: Vec<Monomial> = all_monomials(d, degree)
        .into_iter()
        .filter(|m| m.respects_caps(&vec![cap; d]))
        .collect();
    if support.is_empty() {
        return Form::zero(d, degree);
    }
    let mut terms = Vec::new();
    for m in &support {
        if rng.gen_bool(0.5) {
            terms.push((m.clone(), random_coeff(rng)));
        }
    }
    if terms.is_empty() {
        let m = support[rng.gen_range(0..support.len())].clone();
        terms.push((m, random_coeff(rng)));
    }
    Form::from_terms(d, degree, terms).unwrap()
}

/// Random `(q, P)` with `d ≤ 3`, `deg q ≤ 2`, `m ≤ 2`, `P` symmetric of
/// degree `deg q + 1` and per-variable degrees at most 2.
pub fn random_pair(rng: &mut impl Rng) -> (Form, MatrixForm) {
    let d = rng.gen_range(1..=3);
    let n = rng.gen_range(0..=2u32.min(2 * d as u32 - 1));
    let m = rng.gen_range(1..=2);
    let q = random_form(rng, d, n, 2);
    let mut entries = vec![Form::zero(d, n + 1); m * m];
    for i in 0..m {
        for j in i..m {
            let e = random_form(rng, d, n + 1, 2);
            entries[i * m + j] = e.clone();
            entries[j * m + i] = e;
        }
    }
    (q, MatrixForm::symmetric(m, entries).unwrap())
}

/// dim L₀ as the nullity of the coefficient-matching map from symmetric
/// matrices to forms.
pub fn nullity_oracle(basis: &MonomialBasis) -> usize {
    let n = basis.len();
    let cols: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for &(i, j) in &cols {
        let k = rows.len();
        rows.entry(basis.get(i).mul(basis.get(j))).or_insert(k);
    }
    let mut a = QMatrix::zeros(rows.len(), cols.len());
    for (c, &(i, j)) in cols.iter().enumerate() {
        a.set(rows[&basis.get(i).mul(basis.get(j))], c, rat(1));
    }
    cols.len() - rank(&a)
}
