use std::collections::HashMap;

use num_traits::One;

use crate::polycore::{monomials_with_caps, Form, MatrixForm, Monomial, Rational};

/// Ordered list of same-degree monomials with per-variable caps.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    caps: Vec<u32>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.monomials == other.monomials
    }
}

impl Eq for MonomialBasis {}

impl MonomialBasis {
    /// All monomials of `degree` with exponent of `z_k` at most `caps[k]`.
    pub fn capped(nvars: usize, degree: u32, caps: &[u32]) -> Self {
        let caps: Vec<u32> = caps.iter().map(|&c| c.min(degree)).collect();
        let monomials = monomials_with_caps(nvars, degree, &caps);
        Self::build(nvars, degree, caps, monomials)
    }

    /// All multiaffine monomials of `degree`.
    pub fn multiaffine(nvars: usize, degree: u32) -> Self {
        Self::capped(nvars, degree, &vec![1; nvars])
    }

    /// Basis from an explicit list (sorted and deduplicated); caps are the
    /// largest exponents present.
    pub fn from_monomials(nvars: usize, degree: u32, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        monomials.dedup();
        let caps = (0..nvars)
            .map(|k| monomials.iter().map(|m| m.exp(k)).max().unwrap_or(0))
            .collect();
        Self::build(nvars, degree, caps, monomials)
    }

    fn build(nvars: usize, degree: u32, caps: Vec<u32>, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self {
            nvars,
            degree,
            caps,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    /// The `m × N·m` row `Ψ(z) = (z^{α_1} I_m, …, z^{α_N} I_m)`.
    pub fn psi(&self, m: usize) -> MatrixForm {
        let n = self.len();
        let mut entries = vec![Form::zero(self.nvars, self.degree); m * n * m];
        for (i, mono) in self.monomials.iter().enumerate() {
            for a in 0..m {
                entries[a * (n * m) + i * m + a] = Form::term(mono.clone(), Rational::one());
            }
        }
        MatrixForm::new(m, n * m, entries).expect("well-formed Ψ")
    }
}
