use std::cmp::Ordering;
use std::fmt;

/// Multi-index `z^α = z_1^{δ_1} ⋯ z_d^{δ_d}`.
///
/// Ordering is graded lexicographic with `z1 > z2 > …`, so a degree-2 basis
/// in two variables sorts as `z1^2, z1*z2, z2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    /// The single variable `z_k` (0-based index).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = 1;
        Self { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, k: usize) -> u32 {
        self.exps[k]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_multiaffine(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn with_exp(&self, k: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[k] = e;
        Monomial { exps }
    }

    pub fn times_var(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[k] += 1;
        Monomial { exps }
    }

    pub fn over_var(&self, k: usize) -> Option<Monomial> {
        if self.exps[k] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[k] -= 1;
        Some(Monomial { exps })
    }

    /// Variables with nonzero exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&k| self.exps[k] > 0).collect()
    }

    /// Same exponents embedded in a space with `nvars` variables (padding or
    /// truncating zero tail).
    pub fn resized(&self, nvars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Monomial { exps }
    }

    pub fn respects_caps(&self, caps: &[u32]) -> bool {
        self.exps.iter().zip(caps).all(|(e, c)| e <= c)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", k + 1)?;
            } else {
                write!(f, "z{}^{}", k + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `nvars` variables with
/// exponent `k` at most `caps[k]`, in graded-lex order.
pub fn monomials_with_caps(nvars: usize, degree: u32, caps: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(k: usize, left: u32, caps: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if k == n {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let tail_cap: u32 = caps[k + 1..n].iter().sum();
        let hi = left.min(caps[k]);
        for e in (0..=hi).rev() {
            if left - e > tail_cap {
                continue;
            }
            cur[k] = e;
            rec(k + 1, left - e, caps, cur, out);
        }
        cur[k] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(0, degree, caps, &mut cur, &mut out);
    out.sort();
    out
}

/// All monomials of total degree `degree` in `nvars` variables.
pub fn all_monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    monomials_with_caps(nvars, degree, &vec![degree; nvars])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let b = all_monomials(2, 2);
        let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["z1^2", "z1*z2", "z2^2"]);
    }

    #[test]
    fn capped_enumeration_counts() {
        assert_eq!(monomials_with_caps(4, 2, &[1, 1, 1, 1]).len(), 6);
        assert_eq!(monomials_with_caps(3, 2, &[2, 2, 2]).len(), 6);
        assert_eq!(monomials_with_caps(2, 3, &[1, 1]).len(), 0);
        assert_eq!(monomials_with_caps(0, 0, &[]).len(), 1);
    }

    #[test]
    fn gcd_and_division() {
        let a = Monomial::new(vec![2, 1, 0]);
        let b = Monomial::new(vec![1, 1, 1]);
        assert_eq!(a.gcd(&b), Monomial::new(vec![1, 1, 0]));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.div(&Monomial::new(vec![1, 0, 0])), Some(b.with_exp(2, 0)));
    }
}
