use num_traits::{One, Zero};

use super::form::Form;
use super::monomial::Monomial;
use super::rational::{to_f64, CRational, Rational};
use crate::error::{Error, Result};

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Exactly symmetric square matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let q = QMatrix::from_rows(rows)?;
        Self::from_qmatrix(q)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rational::rat(x)).collect())
                .collect(),
        )
    }

    pub fn from_qmatrix(q: QMatrix) -> Result<Self> {
        if q.rows != q.cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} matrix is not square",
                q.rows, q.cols
            )));
        }
        if !q.is_symmetric() {
            return Err(Error::Invariant("matrix is not symmetric".into()));
        }
        Ok(Self {
            n: q.rows,
            data: q.data,
        })
    }

    /// `(M + Mᵀ)/2` of a square matrix.
    pub fn symmetric_part(q: &QMatrix) -> Self {
        assert_eq!(q.rows, q.cols);
        let n = q.rows;
        let half = Rational::new(1.into(), 2.into());
        let mut s = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = (q.get(i, j) + q.get(j, i)) * &half;
                s.set(i, j, v);
            }
        }
        s
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix {
            rows: self.n,
            cols: self.n,
            data: self.data.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[j * self.n + i] = v.clone();
        self.data[i * self.n + j] = v;
    }

    /// Adds `v` at `(i, j)` and, off the diagonal, at `(j, i)`.
    pub fn add_sym(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn add(&self, o: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, o.n);
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, o.n);
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Kronecker product `self ⊗ b`, index `(i, a) ↦ i*m + a`.
    pub fn kron(&self, b: &SymMatrix) -> SymMatrix {
        let m = b.n;
        let mut out = SymMatrix::zeros(self.n * m);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for a in 0..m {
                    for bb in 0..m {
                        out.data[(i * m + a) * out.n + j * m + bb] = c * b.get(a, bb);
                    }
                }
            }
        }
        out
    }

    /// `T · self · Tᵀ`.
    pub fn congruence(&self, t: &QMatrix) -> SymMatrix {
        assert_eq!(t.cols(), self.n);
        let full = t.mul(&self.to_qmatrix()).mul(&t.transpose());
        SymMatrix {
            n: full.rows(),
            data: full.data,
        }
    }

    /// Embeds into the top-left corner of an `n × n` zero matrix.
    pub fn padded(&self, n: usize) -> SymMatrix {
        assert!(n >= self.n);
        let mut out = SymMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * n + j] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Principal submatrix on the given indices.
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        let mut out = SymMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.data[a * idx.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| to_f64(self.get(i, j)))
    }

    /// Smallest eigenvalue in floating point (`+∞` for the empty matrix).
    pub fn min_eigenvalue(&self) -> f64 {
        crate::linalg::min_eigenvalue(&self.to_f64())
    }

    /// Exact PSD test by pivoted LDLᵀ.
    pub fn is_psd_exact(&self) -> bool {
        crate::linalg::ldl_psd(self).is_ok()
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.to_qmatrix())
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

/// Rectangular matrix of forms sharing one degree and variable count.
///
/// Square symmetric instances model the numerators `P(z)`; rectangular ones
/// hold certificate factors `Φ(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixForm {
    rows: usize,
    cols: usize,
    nvars: usize,
    degree: u32,
    entries: Vec<Form>,
}

impl MatrixForm {
    pub fn zeros(rows: usize, cols: usize, nvars: usize, degree: u32) -> Self {
        Self {
            rows,
            cols,
            nvars,
            degree,
            entries: vec![Form::zero(nvars, degree); rows * cols],
        }
    }

    /// Builds from row-major entries; zero entries adopt the common degree.
    pub fn new(rows: usize, cols: usize, entries: Vec<Form>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        let nvars = entries[0].nvars();
        if let Some(e) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: e.nvars(),
            });
        }
        let degree = entries
            .iter()
            .find(|e| !e.is_zero())
            .map_or_else(|| entries[0].degree(), |e| e.degree());
        if let Some(e) = entries.iter().find(|e| !e.is_zero() && e.degree() != degree) {
            return Err(Error::DegreeMismatch(format!(
                "matrix entries have degrees {} and {}",
                degree,
                e.degree()
            )));
        }
        let entries = entries.into_iter().map(|e| e.retagged(degree)).collect();
        Ok(Self {
            rows,
            cols,
            nvars,
            degree,
            entries,
        })
    }

    /// Square matrix form that must be symmetric.
    pub fn symmetric(m: usize, entries: Vec<Form>) -> Result<Self> {
        let f = Self::new(m, m, entries)?;
        if !f.is_symmetric() {
            return Err(Error::Invariant("matrix form is not symmetric".into()));
        }
        Ok(f)
    }

    pub fn scalar(f: Form) -> Self {
        Self {
            rows: 1,
            cols: 1,
            nvars: f.nvars(),
            degree: f.degree(),
            entries: vec![f],
        }
    }

    /// The linear matrix form `z_k · A`.
    pub fn linear(nvars: usize, k: usize, a: &SymMatrix) -> Self {
        let zk = Form::var(nvars, k);
        let n = a.size();
        let entries = (0..n * n).map(|idx| zk.scale(a.get(idx / n, idx % n))).collect();
        Self {
            rows: n,
            cols: n,
            nvars,
            degree: 1,
            entries,
        }
    }

    /// Constant (degree-0) matrix form.
    pub fn constant(nvars: usize, a: &QMatrix) -> Self {
        let entries = (0..a.rows() * a.cols())
            .map(|idx| Form::constant(nvars, a.get(idx / a.cols(), idx % a.cols()).clone()))
            .collect();
        Self {
            rows: a.rows(),
            cols: a.cols(),
            nvars,
            degree: 0,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix form.
    pub fn size(&self) -> usize {
        self.rows
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Form] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_multiaffine(&self) -> bool {
        self.entries.iter().all(|e| e.is_multiaffine())
    }

    pub fn map_entries(&self, f: impl Fn(&Form) -> Form) -> MatrixForm {
        let entries: Vec<Form> = self.entries.iter().map(f).collect();
        let degree = entries
            .iter()
            .find(|e| !e.is_zero())
            .map_or_else(|| entries[0].degree(), |e| e.degree());
        let nvars = entries[0].nvars();
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars,
            degree,
            entries: entries.into_iter().map(|e| e.retagged(degree)).collect(),
        }
    }

    pub fn transpose(&self) -> MatrixForm {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        MatrixForm {
            rows: self.cols,
            cols: self.rows,
            nvars: self.nvars,
            degree: self.degree,
            entries,
        }
    }

    pub fn checked_add(&self, o: &MatrixForm) -> Result<MatrixForm> {
        self.zip(o, false)
    }

    pub fn checked_sub(&self, o: &MatrixForm) -> Result<MatrixForm> {
        self.zip(o, true)
    }

    fn zip(&self, o: &MatrixForm, negate: bool) -> Result<MatrixForm> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| if negate { a.checked_sub(b) } else { a.checked_add(b) })
            .collect::<Result<Vec<_>>>()?;
        MatrixForm::new(self.rows, self.cols, entries)
    }

    pub fn mul(&self, o: &MatrixForm) -> MatrixForm {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let degree = self.degree + o.degree;
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Form::zero(self.nvars, degree);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.mul(b)).expect("degrees agree");
                }
                entries.push(acc);
            }
        }
        MatrixForm {
            rows: self.rows,
            cols: o.cols,
            nvars: self.nvars,
            degree,
            entries,
        }
    }

    pub fn mul_form(&self, f: &Form) -> MatrixForm {
        let degree = self.degree + f.degree();
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            degree,
            entries: self.entries.iter().map(|e| e.mul(f)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MatrixForm {
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            degree: self.degree,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Right-multiplies by a constant rational matrix.
    pub fn mul_constant(&self, a: &QMatrix) -> MatrixForm {
        self.mul(&MatrixForm::constant(self.nvars, a))
    }

    pub fn partial_derivative(&self, k: usize) -> MatrixForm {
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            degree: self.degree.saturating_sub(1),
            entries: self.entries.iter().map(|e| e.partial_derivative(k)).collect(),
        }
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.entries.iter().map(|e| e.degree_in(k)).max().unwrap_or(0)
    }

    pub fn coefficient_of_power(&self, k: usize, e: u32) -> MatrixForm {
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            degree: self.degree.saturating_sub(e),
            entries: self.entries.iter().map(|f| f.coefficient_of_power(k, e)).collect(),
        }
    }

    pub fn map_vars(&self, map: &[usize], nvars: usize) -> MatrixForm {
        MatrixForm {
            rows: self.rows,
            cols: self.cols,
            nvars,
            degree: self.degree,
            entries: self.entries.iter().map(|e| e.map_vars(map, nvars)).collect(),
        }
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn blocks(a: &MatrixForm, b: &MatrixForm, c: &MatrixForm, d: &MatrixForm) -> Result<MatrixForm> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::SizeMismatch("incompatible block shapes".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                entries.push(e.clone());
            }
        }
        MatrixForm::new(rows, cols, entries)
    }

    /// If every entry is a constant multiple of the same form `g`, i.e.
    /// `self = g · A`, returns `A`.
    pub fn constant_ratio(&self, g: &Form) -> Option<QMatrix> {
        let (lead_m, lead_c) = g.terms().iter().next()?;
        let mut a = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let c = e.coeff(lead_m) / lead_c;
                if &g.scale(&c) != e && !(c.is_zero() && e.is_zero()) {
                    return None;
                }
                a.set(i, j, c);
            }
        }
        Some(a)
    }

    /// Constant coefficient matrix of a degree-0 matrix form.
    pub fn constant_value(&self) -> QMatrix {
        let mut a = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                a.set(i, j, self.get(i, j).constant_value());
            }
        }
        a
    }

    pub fn evaluate(&self, point: &[CRational]) -> Vec<Vec<CRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect()
    }

    pub fn evaluate_real(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate_real(point)).collect())
            .collect()
    }

    /// All monomials appearing in any entry.
    pub fn support(&self) -> std::collections::BTreeSet<Monomial> {
        self.entries.iter().flat_map(|e| e.terms().keys().cloned()).collect()
    }

    /// Coefficient matrix of monomial `mono` (entry `(i, j)` is the coefficient
    /// of `mono` in `self[i][j]`).
    pub fn coefficient_matrix(&self, mono: &Monomial) -> QMatrix {
        let mut a = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                a.set(i, j, self.get(i, j).coeff(mono));
            }
        }
        a
    }
}
