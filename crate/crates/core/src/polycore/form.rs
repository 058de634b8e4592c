use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::{rat, CRational, Rational};
use crate::error::{Error, Result};

/// Homogeneous polynomial with exact rational coefficients.
///
/// Every stored monomial has total degree `degree`; the zero form keeps its
/// degree tag so that sums with it stay well defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

/// Binary operation selector for [`form_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormOp {
    Add,
    Sub,
    Mul,
    /// Multiply by a degree-0 (constant) second operand.
    Scale,
}

pub fn form_arith(a: &Form, b: &Form, op: FormOp) -> Result<Form> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    match op {
        FormOp::Add => a.checked_add(b),
        FormOp::Sub => a.checked_sub(b),
        FormOp::Mul => Ok(a.mul(b)),
        FormOp::Scale => {
            if b.degree != 0 {
                return Err(Error::DegreeMismatch(format!(
                    "scale factor must be constant, got degree {}",
                    b.degree
                )));
            }
            Ok(a.scale(&b.constant_value()))
        }
    }
}

impl Form {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut f = Self::zero(nvars, 0);
        if !c.is_zero() {
            f.terms.insert(Monomial::one(nvars), c);
        }
        f
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The linear form `z_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        Self::term(Monomial::var(nvars, k), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut f = Self::zero(m.nvars(), m.degree());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// Builds a form from terms, summing duplicates. All monomials must have
    /// `degree` and `nvars` variables.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut f = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "term {} has degree {}, form has degree {}",
                    m,
                    m.degree(),
                    degree
                )));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Adds `c * m` in place. Caller guarantees the degree matches.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value of a degree-0 form (zero for any other degree).
    pub fn constant_value(&self) -> Rational {
        if self.degree == 0 {
            self.coeff(&Monomial::one(self.nvars))
        } else {
            Rational::zero()
        }
    }

    /// Same polynomial with a different degree tag; only valid for zero forms
    /// or matching degrees.
    pub fn retagged(mut self, degree: u32) -> Self {
        debug_assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Form) -> Result<Form> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Form, negate: bool) -> Result<Form> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.degree);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&rat(-1))
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂p/∂z_k` (0-based `k`).
    pub fn partial_derivative(&self, k: usize) -> Form {
        let degree = self.degree.saturating_sub(1);
        let mut out = Form::zero(self.nvars, degree);
        for (m, c) in &self.terms {
            let e = m.exp(k);
            if e > 0 {
                out.add_term(m.over_var(k).unwrap(), c * rat(e as i64));
            }
        }
        out
    }

    /// Highest power of `z_k` occurring (0 for the zero form).
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(k)).max().unwrap_or(0)
    }

    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|m| m.is_multiaffine())
    }

    /// Coefficient of `z_k^e`: the terms with exponent `e` in `z_k`, divided
    /// by `z_k^e`.
    pub fn coefficient_of_power(&self, k: usize, e: u32) -> Form {
        let degree = self.degree.saturating_sub(e);
        let mut out = Form::zero(self.nvars, degree);
        for (m, c) in &self.terms {
            if m.exp(k) == e {
                out.add_term(m.with_exp(k, 0), c.clone());
            }
        }
        out
    }

    /// Multiplies by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Form {
        Form {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Re-indexes variables: variable `k` becomes `map[k]` in a space with
    /// `nvars` variables (exponents of variables mapped together add up).
    pub fn map_vars(&self, map: &[usize], nvars: usize) -> Form {
        let mut out = Form::zero(nvars, self.degree);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; nvars];
            for (k, &e) in m.exps().iter().enumerate() {
                exps[map[k]] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Embeds into a space with more variables (new ones unused).
    pub fn extended(&self, nvars: usize) -> Form {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.map_vars(&map, nvars)
    }

    pub fn evaluate(&self, point: &[CRational]) -> CRational {
        assert_eq!(point.len(), self.nvars, "point length must equal variable count");
        let mut acc = CRational::zero();
        for (m, c) in &self.terms {
            let mut t = CRational::real(c.clone());
            for (k, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[k].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn evaluate_real(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point length must equal variable count");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest absolute coefficient as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| super::rational::to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::write_form(f, self)
    }
}
