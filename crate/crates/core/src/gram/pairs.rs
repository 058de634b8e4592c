use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polarize::MonomialBasis;
use crate::polycore::{Monomial, Rational, SymMatrix};

/// Unordered pairs `{α, α'}` with `α·α' = β`, stored as `(lo, hi)` with
/// `lo ≤ hi` and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    pub beta: Monomial,
    pub pairs: Vec<(Monomial, Monomial)>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, a: &Monomial, b: &Monomial) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.pairs.iter().position(|(x, y)| (x, y) == key)
    }
}

/// All factorizations of `β` into two monomials of degree `deg β / 2`
/// respecting `caps`. Odd-degree `β` gives an empty set.
pub fn admissible_exponents(beta: &Monomial, caps: &[u32]) -> PairSet {
    let mut pairs = Vec::new();
    if beta.degree().is_multiple_of(2) {
        let n = beta.degree() / 2;
        let d = beta.nvars();
        let lo: Vec<u32> = (0..d).map(|k| beta.exp(k).saturating_sub(caps[k])).collect();
        let hi: Vec<u32> = (0..d).map(|k| beta.exp(k).min(caps[k])).collect();
        let mut exps = vec![0u32; d];
        enumerate(0, n, &lo, &hi, &mut exps, &mut |e| {
            let a = Monomial::new(e.to_vec());
            let b = beta.div(&a).expect("bounded by β");
            if a <= b {
                pairs.push((a, b));
            }
        });
    }
    pairs.sort();
    PairSet {
        beta: beta.clone(),
        pairs,
    }
}

fn enumerate(k: usize, left: u32, lo: &[u32], hi: &[u32], exps: &mut [u32], out: &mut dyn FnMut(&[u32])) {
    if k == exps.len() {
        if left == 0 {
            out(exps);
        }
        return;
    }
    let rest_max: u32 = hi[k + 1..].iter().sum();
    let rest_min: u32 = lo[k + 1..].iter().sum();
    for e in lo[k]..=hi[k].min(left) {
        if left - e > rest_max || left - e < rest_min {
            continue;
        }
        exps[k] = e;
        enumerate(k + 1, left - e, lo, hi, exps, out);
    }
    exps[k] = 0;
}

/// Moves one unit of exponent from `z_l` to `z_r`.
pub fn elementary_transform(alpha: &Monomial, r: usize, l: usize, caps: &[u32]) -> Result<Monomial> {
    if r == l {
        return Err(Error::NotApplicable("elementary transform needs r ≠ l".into()));
    }
    if alpha.exp(r) >= caps[r] {
        return Err(Error::NotApplicable(format!(
            "exponent of z{} already at its cap",
            r + 1
        )));
    }
    if alpha.exp(l) == 0 {
        return Err(Error::NotApplicable(format!("z{} does not divide {alpha}", l + 1)));
    }
    Ok(alpha.over_var(l).expect("checked").times_var(r))
}

/// The move `(r, l)` taking `a` to `b`, if they differ by one elementary
/// transform.
pub(crate) fn single_move(a: &Monomial, b: &Monomial) -> Option<(usize, usize)> {
    let mut up = None;
    let mut down = None;
    for k in 0..a.nvars() {
        match b.exp(k) as i64 - a.exp(k) as i64 {
            0 => {}
            1 if up.is_none() => up = Some(k),
            -1 if down.is_none() => down = Some(k),
            _ => return None,
        }
    }
    Some((up?, down?))
}

fn adjacent(p: &(Monomial, Monomial), q: &(Monomial, Monomial)) -> bool {
    [&p.0, &p.1]
        .iter()
        .any(|a| [&q.0, &q.1].iter().any(|b| single_move(a, b).is_some()))
}

/// Breadth-first spanning tree of the pair graph rooted at the least pair.
/// Edges are `(parent, child)` indices into `ps.pairs`, in discovery order.
pub fn pair_graph_tree(ps: &PairSet) -> Result<Vec<(usize, usize)>> {
    let (edges, connected) = spanning_edges(ps);
    if !connected {
        return Err(Error::Internal(format!("pair graph of {} is disconnected", ps.beta)));
    }
    Ok(edges)
}

/// Breadth-first forest of the pair graph; each further component root is
/// attached to the least pair so the edges always span. The flag reports
/// whether the graph itself was connected.
pub(crate) fn spanning_edges(ps: &PairSet) -> (Vec<(usize, usize)>, bool) {
    let m = ps.len();
    let mut seen = vec![false; m];
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    let mut connected = true;
    for root in 0..m {
        if seen[root] {
            continue;
        }
        if root > 0 {
            connected = false;
            edges.push((0, root));
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in 0..m {
                if !seen[v] && adjacent(&ps.pairs[u], &ps.pairs[v]) {
                    seen[v] = true;
                    edges.push((u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    (edges, connected)
}

/// Sums of products `z^{α_i} z^{α_j}` over the basis, grouped by product.
pub(crate) fn products(basis: &MonomialBasis) -> BTreeMap<Monomial, Vec<(usize, usize)>> {
    let mut out: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            out.entry(basis.get(i).mul(basis.get(j))).or_default().push((i, j));
        }
    }
    out
}

/// One spanning-tree edge of the pair graph of `beta`; its annihilator
/// matrix is `Ind(child) − Ind(parent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorEdge {
    pub beta: Monomial,
    pub parent: (Monomial, Monomial),
    pub child: (Monomial, Monomial),
}

impl AnnihilatorEdge {
    /// Adds `c` times the matrix on `basis` to `s`.
    pub(crate) fn add_to(&self, basis: &MonomialBasis, c: &Rational, s: &mut SymMatrix) {
        add_indicator(basis, &self.child, c, s);
        add_indicator(basis, &self.parent, &-c.clone(), s);
    }

    pub fn matrix(&self, basis: &MonomialBasis) -> SymMatrix {
        let mut s = SymMatrix::zeros(basis.len());
        self.add_to(basis, &Rational::from_integer(1.into()), &mut s);
        s
    }
}

fn add_indicator(basis: &MonomialBasis, p: &(Monomial, Monomial), c: &Rational, s: &mut SymMatrix) {
    let i = basis.index_of(&p.0).expect("pair member in basis");
    let j = basis.index_of(&p.1).expect("pair member in basis");
    if i == j {
        s.add_sym(i, i, &(c + c));
    } else {
        s.add_sym(i, j, c);
    }
}

/// Spanning-tree edges of every product class with at least two pairs, in
/// product order. On a pruned basis a disconnected class is joined through
/// its least pair.
pub fn annihilator_edges(basis: &MonomialBasis) -> Vec<AnnihilatorEdge> {
    let mut out = Vec::new();
    for (beta, members) in products(basis) {
        if members.len() < 2 {
            continue;
        }
        let ps = class_pairs(basis, &beta, &members);
        for (u, v) in spanning_edges(&ps).0 {
            out.push(AnnihilatorEdge {
                beta: beta.clone(),
                parent: ps.pairs[u].clone(),
                child: ps.pairs[v].clone(),
            });
        }
    }
    out
}

fn class_pairs(basis: &MonomialBasis, beta: &Monomial, members: &[(usize, usize)]) -> PairSet {
    let mut pairs: Vec<(Monomial, Monomial)> = members
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (basis.get(i).clone(), basis.get(j).clone());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    pairs.sort();
    PairSet {
        beta: beta.clone(),
        pairs,
    }
}

/// A basis of `{S : Ψ S Ψᵀ ≡ 0}` made of 3- and 4-entry matrices, one per
/// spanning-tree edge.
pub fn annihilator_basis(basis: &MonomialBasis) -> Vec<SymMatrix> {
    annihilator_edges(basis).iter().map(|e| e.matrix(basis)).collect()
}

/// Coordinates of `s` in the edge basis of [`annihilator_edges`]. Fails with
/// `PreconditionViolated` if `Ψ s Ψᵀ ≢ 0`.
pub fn annihilator_coordinates(s: &SymMatrix, basis: &MonomialBasis) -> Result<Vec<(AnnihilatorEdge, Rational)>> {
    let mut out = Vec::new();
    let two = Rational::from_integer(2.into());
    for (beta, members) in products(basis) {
        let ps = class_pairs(basis, &beta, &members);
        let c: Vec<Rational> = ps
            .pairs
            .iter()
            .map(|(a, b)| {
                let i = basis.index_of(a).unwrap();
                let j = basis.index_of(b).unwrap();
                if i == j {
                    s.get(i, i) / &two
                } else {
                    s.get(i, j).clone()
                }
            })
            .collect();
        let total: Rational = c.iter().sum();
        if !total.is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "coefficient of {beta} in Ψ S Ψᵀ is nonzero"
            )));
        }
        if ps.len() < 2 {
            continue;
        }
        let edges = spanning_edges(&ps).0;
        // subtree sums, children after parents in discovery order
        let mut sub = c.clone();
        for &(u, v) in edges.iter().rev() {
            let add = sub[v].clone();
            sub[u] += add;
        }
        for &(u, v) in &edges {
            if !sub[v].is_zero() {
                out.push((
                    AnnihilatorEdge {
                        beta: beta.clone(),
                        parent: ps.pairs[u].clone(),
                        child: ps.pairs[v].clone(),
                    },
                    sub[v].clone(),
                ));
            }
        }
    }
    Ok(out)
}
