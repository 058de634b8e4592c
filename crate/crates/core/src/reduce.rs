//! Degree reduction: splitting one variable into several affine ones and
//! identifying them back.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polycore::{Form, MatrixForm, Monomial, RatFn, Rational};

/// Reduction of variable `source_var` with bound `n0` onto the fresh
/// variables `new_vars` of a space with `nvars_out` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    pub source_var: usize,
    pub n0: u32,
    pub new_vars: Vec<usize>,
    pub nvars_out: usize,
}

impl ReductionPlan {
    /// Appends `n0` fresh variables after the `nvars` existing ones. The
    /// source index stays in the space but no longer occurs.
    pub fn appended(source_var: usize, n0: u32, nvars: usize) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::BadInput("reduction bound must be at least 1".into()));
        }
        if source_var >= nvars {
            return Err(Error::BadInput(format!("variable z{} out of range", source_var + 1)));
        }
        Ok(Self {
            source_var,
            n0,
            new_vars: (nvars..nvars + n0 as usize).collect(),
            nvars_out: nvars + n0 as usize,
        })
    }

    /// Map back to the original space: each surviving variable is its own
    /// group and the fresh variables (plus the vacated source index) form
    /// the source group.
    pub fn identification(&self) -> MultiaffinizationMap {
        let nvars_in = self.nvars_out - self.new_vars.len();
        let mut groups: Vec<Vec<usize>> = (0..nvars_in).map(|k| vec![k]).collect();
        groups[self.source_var].extend(self.new_vars.iter().copied());
        MultiaffinizationMap::new(groups, self.nvars_out).expect("plan layout is a partition")
    }
}

/// For each original variable, the fresh variables replacing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiaffinizationMap {
    groups: Vec<Vec<usize>>,
    fresh_nvars: usize,
    owner: Vec<usize>,
}

impl MultiaffinizationMap {
    pub fn new(groups: Vec<Vec<usize>>, fresh_nvars: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; fresh_nvars];
        for (k, g) in groups.iter().enumerate() {
            for &j in g {
                if j >= fresh_nvars || owner[j] != usize::MAX {
                    return Err(Error::BadInput(format!(
                        "fresh variable {} listed twice or out of range",
                        j + 1
                    )));
                }
                owner[j] = k;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::BadInput("groups do not cover every fresh variable".into()));
        }
        Ok(Self {
            groups,
            fresh_nvars,
            owner,
        })
    }

    /// Consecutive layout: variable `k` gets `sizes[k]` fresh indices.
    pub fn consecutive(sizes: &[u32]) -> Self {
        let mut groups = Vec::with_capacity(sizes.len());
        let mut next = 0usize;
        for &s in sizes {
            groups.push((next..next + s as usize).collect());
            next += s as usize;
        }
        Self::new(groups, next).expect("consecutive layout is a partition")
    }

    pub fn identity(nvars: usize) -> Self {
        Self::consecutive(&vec![1; nvars])
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn fresh_nvars(&self) -> usize {
        self.fresh_nvars
    }

    pub fn original_nvars(&self) -> usize {
        self.groups.len()
    }

    /// Original variable of fresh variable `j`.
    pub fn owner(&self, j: usize) -> usize {
        self.owner[j]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }
}

/// `σ_k` over the listed variables of an `nvars`-variable space.
pub fn elementary_symmetric(k: usize, vars: &[usize], nvars: usize) -> Result<Form> {
    if k > vars.len() {
        return Err(Error::BadDegree { k, n: vars.len() });
    }
    let mut out = Form::zero(nvars, k as u32);
    let mut pick = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, vars: &[usize], nvars: usize, pick: &mut Vec<usize>, out: &mut Form) {
        if pick.len() == k {
            let mut exps = vec![0u32; nvars];
            for &v in pick.iter() {
                exps[v] += 1;
            }
            out.add_term(Monomial::new(exps), Rational::one());
            return;
        }
        for i in start..vars.len() {
            pick.push(vars[i]);
            rec(i + 1, k, vars, nvars, pick, out);
            pick.pop();
        }
    }
    rec(0, k, vars, nvars, &mut pick, &mut out);
    Ok(out)
}

/// How one original variable is rewritten.
enum Subst<'a> {
    Keep(usize),
    Spread { vars: &'a [usize], bound: u32 },
}

fn substitute(p: &Form, subst: &[Subst<'_>], nvars_out: usize) -> Result<Form> {
    let mut out = Form::zero(nvars_out, p.degree());
    for (m, c) in p.terms() {
        let mut acc = Form::constant(nvars_out, c.clone());
        for (k, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let piece = match &subst[k] {
                Subst::Keep(j) => Form::var(nvars_out, *j).pow(e),
                Subst::Spread { vars, bound } => {
                    if e > *bound {
                        return Err(Error::DegreeExceeded {
                            var: k + 1,
                            found: e,
                            bound: *bound,
                        });
                    }
                    let inv = Rational::new(BigInt::one(), binomial(BigInt::from(*bound), BigInt::from(e)));
                    elementary_symmetric(e as usize, vars, nvars_out)?.scale(&inv)
                }
            };
            acc = acc.mul(&piece);
        }
        out = out.checked_add(&acc)?;
    }
    Ok(out)
}

/// Replaces each power `z0^k` by `C(n0,k)⁻¹ σ_k` over the plan's fresh
/// variables.
pub fn reduce_degree(p: &Form, plan: &ReductionPlan) -> Result<Form> {
    let subst: Vec<Subst<'_>> = (0..p.nvars())
        .map(|k| {
            if k == plan.source_var {
                Subst::Spread {
                    vars: &plan.new_vars,
                    bound: plan.n0,
                }
            } else {
                Subst::Keep(k)
            }
        })
        .collect();
    substitute(p, &subst, plan.nvars_out)
}

/// Reduces every variable `k` onto `map.groups()[k]` with bound equal to the
/// group size.
pub fn reduce_all(p: &Form, map: &MultiaffinizationMap) -> Result<Form> {
    let subst: Vec<Subst<'_>> = map
        .groups()
        .iter()
        .map(|g| Subst::Spread {
            vars: g,
            bound: g.len() as u32,
        })
        .collect();
    substitute(p, &subst, map.fresh_nvars())
}

/// Substitutes the original variable for every fresh variable.
pub fn identify_variables(p: &Form, map: &MultiaffinizationMap) -> Form {
    p.map_vars(map.owners(), map.original_nvars())
}

pub fn identify_matrix(p: &MatrixForm, map: &MultiaffinizationMap) -> MatrixForm {
    p.map_vars(map.owners(), map.original_nvars())
}

/// Per-variable bounds `n_k = max(deg_k P, deg_k q)`.
pub fn reduction_bounds(f: &RatFn) -> Vec<u32> {
    (0..f.nvars()).map(|k| f.degree_in(k)).collect()
}

/// Reduces numerator and denominator jointly so every fresh variable occurs
/// at most linearly. Groups are laid out consecutively in variable order.
pub fn multiaffinize(f: &RatFn) -> Result<(RatFn, MultiaffinizationMap)> {
    let map = MultiaffinizationMap::consecutive(&reduction_bounds(f));
    let q = reduce_all(f.denominator(), &map)?;
    let p = f.numerator();
    let entries = p
        .entries()
        .iter()
        .map(|e| reduce_all(e, &map))
        .collect::<Result<Vec<_>>>()?;
    let p = MatrixForm::new(p.rows(), p.cols(), entries)?;
    Ok((RatFn::new(p, q)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_form, ratio};

    #[test]
    fn symmetric_polynomials() {
        let s = elementary_symmetric(2, &[0, 1, 2], 3).unwrap();
        assert_eq!(s, parse_form("z1*z2 + z1*z3 + z2*z3", Some(3)).unwrap());
        assert_eq!(elementary_symmetric(0, &[0, 1], 2).unwrap(), Form::one(2));
        assert_eq!(
            elementary_symmetric(3, &[0, 1], 2),
            Err(Error::BadDegree { k: 3, n: 2 })
        );
    }

    #[test]
    fn reduce_square_and_linear() {
        let plan = ReductionPlan::appended(0, 2, 2).unwrap();
        let sq = reduce_degree(&parse_form("z1^2", Some(2)).unwrap(), &plan).unwrap();
        assert_eq!(sq, parse_form("z3*z4", Some(4)).unwrap());
        let lin = reduce_degree(&parse_form("z1*z2", Some(2)).unwrap(), &plan).unwrap();
        assert_eq!(lin, parse_form("1/2*z2*z3 + 1/2*z2*z4", Some(4)).unwrap());
        assert_eq!(
            identify_variables(&sq, &plan.identification()),
            parse_form("z1^2", Some(2)).unwrap()
        );
    }

    #[test]
    fn degree_bound_enforced() {
        let plan = ReductionPlan::appended(0, 1, 1).unwrap();
        assert!(matches!(
            reduce_degree(&parse_form("z1^2", None).unwrap(), &plan),
            Err(Error::DegreeExceeded { found: 2, bound: 1, .. })
        ));
    }

    #[test]
    fn multiaffinize_quadratic_over_linear() {
        let f = RatFn::scalar(parse_form("z1^2", Some(1)).unwrap(), parse_form("z1", Some(1)).unwrap()).unwrap();
        let (g, map) = multiaffinize(&f).unwrap();
        assert_eq!(map.groups(), &[vec![0, 1]]);
        assert_eq!(g.numerator().get(0, 0), &parse_form("z1*z2", Some(2)).unwrap());
        assert_eq!(
            g.denominator(),
            &parse_form("z1 + z2", Some(2)).unwrap().scale(&ratio(1, 2))
        );
    }
}
