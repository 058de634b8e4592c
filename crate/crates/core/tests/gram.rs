mod common;

use common::nullity_oracle;
use std::collections::BTreeSet;

use longres::gram::{
    admissible_exponents, annihilates, annihilator_basis, annihilator_coordinates, defect_solve, elementary_transform,
    pair_graph_tree, pencil_annihilates,
};
use longres::linalg::rank;
use longres::polarize::MonomialBasis;
use longres::polycore::{all_monomials, rat, Monomial, QMatrix, Rational, SymMatrix};
use longres::Error;
use proptest::prelude::*;

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

/// Brute-force factorizations of `beta` over all monomials of half degree.
fn pairs_oracle(beta: &Monomial, caps: &[u32]) -> BTreeSet<(Monomial, Monomial)> {
    let n = beta.degree() / 2;
    let mut out = BTreeSet::new();
    for a in all_monomials(beta.nvars(), n) {
        if let Some(b) = beta.div(&a) {
            if a.respects_caps(caps) && b.respects_caps(caps) {
                out.insert(if a <= b { (a, b) } else { (b, a) });
            }
        }
    }
    out
}

#[test]
fn admissible_pairs_match_examples() {
    let ps = admissible_exponents(&mono(&[2, 0]), &[1, 1]);
    assert_eq!(ps.pairs, vec![(mono(&[1, 0]), mono(&[1, 0]))]);
    let ps = admissible_exponents(&mono(&[1, 1]), &[1, 1]);
    assert_eq!(ps.pairs, vec![(mono(&[1, 0]), mono(&[0, 1]))]);
    let ps = admissible_exponents(&mono(&[2, 1, 1]), &[1, 1, 1]);
    assert_eq!(ps.pairs, vec![(mono(&[1, 1, 0]), mono(&[1, 0, 1]))]);
}

#[test]
fn elementary_transform_examples() {
    assert_eq!(
        elementary_transform(&mono(&[1, 1]), 0, 1, &[2, 1]).unwrap(),
        mono(&[2, 0])
    );
    assert_eq!(
        elementary_transform(&mono(&[0, 1, 1]), 0, 2, &[1, 1, 1]).unwrap(),
        mono(&[1, 1, 0])
    );
    assert!(matches!(
        elementary_transform(&mono(&[1]), 0, 0, &[1]),
        Err(Error::NotApplicable(_))
    ));
    assert!(matches!(
        elementary_transform(&mono(&[1, 1]), 0, 1, &[1, 1]),
        Err(Error::NotApplicable(_))
    ));
}

#[test]
fn tree_on_two_pairs() {
    let ps = admissible_exponents(&mono(&[2, 2]), &[2, 2]);
    assert_eq!(ps.len(), 2);
    assert_eq!(pair_graph_tree(&ps).unwrap().len(), 1);
    let single = admissible_exponents(&mono(&[1, 1]), &[1, 1]);
    assert!(pair_graph_tree(&single).unwrap().is_empty());
}

#[test]
fn annihilator_examples() {
    let b = MonomialBasis::capped(2, 1, &[1, 1]);
    assert!(annihilator_basis(&b).is_empty());
    assert_eq!(nullity_oracle(&b), 0);

    let b = MonomialBasis::capped(2, 2, &[2, 2]);
    let basis = annihilator_basis(&b);
    assert_eq!(
        basis,
        vec![SymMatrix::from_i64(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]).unwrap()]
    );

    let b = MonomialBasis::capped(3, 2, &[2, 2, 2]);
    let basis = annihilator_basis(&b);
    let n = b.len();
    let products: BTreeSet<Monomial> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| b.get(i).mul(b.get(j)))
        .collect();
    assert_eq!(basis.len(), n * (n + 1) / 2 - products.len());
    assert_eq!(basis.len(), nullity_oracle(&b));
}

fn flatten(s: &SymMatrix) -> Vec<Rational> {
    let n = s.size();
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| s.get(i, j).clone())
        .collect()
}

fn check_basis(b: &MonomialBasis) {
    let basis = annihilator_basis(b);
    for s in &basis {
        assert!(annihilates(s, b, 1));
        let nz = s.nonzero_count();
        assert!(nz == 3 || nz == 4, "pattern with {nz} entries");
    }
    let rows: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
    let r = if rows.is_empty() {
        0
    } else {
        rank(&QMatrix::from_rows(rows).unwrap())
    };
    assert_eq!(r, basis.len());
    assert_eq!(r, nullity_oracle(b));
}

#[test]
fn annihilator_dimension_matches_oracle() {
    check_basis(&MonomialBasis::capped(3, 2, &[1, 2, 1]));
    check_basis(&MonomialBasis::capped(3, 3, &[2, 2, 2]));
    check_basis(&MonomialBasis::capped(4, 2, &[1, 1, 1, 1]));
    check_basis(&MonomialBasis::capped(3, 4, &[4, 4, 4]));
}

fn pattern64() -> (MonomialBasis, SymMatrix) {
    // z1², z1z2, z2² free of z3, which has cap 1
    let b = MonomialBasis::capped(3, 2, &[2, 2, 1]);
    let mut s = SymMatrix::zeros(b.len());
    let i = |e: &[u32]| b.index_of(&mono(e)).unwrap();
    s.set(i(&[1, 1, 0]), i(&[1, 1, 0]), rat(2));
    s.set(i(&[2, 0, 0]), i(&[0, 2, 0]), rat(-1));
    (b, s)
}

#[test]
fn defect_of_square_pattern() {
    let (b, s) = pattern64();
    let sol = defect_solve(&s, &b, &[2, 2, 1], 2).unwrap();
    assert!(pencil_annihilates(&sol, &b, 1));
    let i = |e: &[u32]| b.index_of(&mono(e)).unwrap();
    // S for z2 carries -1 at (z1z3, z1z2) and +1 at (z2z3, z1²)
    assert_eq!(sol[1].get(i(&[1, 0, 1]), i(&[1, 1, 0])), &rat(-1));
    assert_eq!(sol[1].get(i(&[0, 1, 1]), i(&[2, 0, 0])), &rat(1));
    assert_eq!(sol[0].get(i(&[1, 0, 1]), i(&[0, 2, 0])), &rat(1));
    assert_eq!(sol[0].get(i(&[0, 1, 1]), i(&[1, 1, 0])), &rat(-1));
    assert_eq!(sol[0].nonzero_count() + sol[1].nonzero_count(), 8);
}

#[test]
fn defect_of_rectangle_pattern() {
    // +1 on {z1z3, z1z2}, -1 on {z2z3, z1²}; z4 is distinguished
    let caps = [2, 1, 1, 1];
    let b = MonomialBasis::capped(4, 2, &caps);
    let i = |e: &[u32]| b.index_of(&mono(e)).unwrap();
    let mut s = SymMatrix::zeros(b.len());
    s.set(i(&[1, 0, 1, 0]), i(&[1, 1, 0, 0]), rat(1));
    s.set(i(&[0, 1, 1, 0]), i(&[2, 0, 0, 0]), rat(-1));
    assert!(annihilates(&s, &b, 1));
    let sol = defect_solve(&s, &b, &caps, 3).unwrap();
    assert!(pencil_annihilates(&sol, &b, 1));
    let mut s2 = SymMatrix::zeros(b.len());
    s2.set(i(&[1, 0, 1, 0]), i(&[1, 0, 0, 1]), rat(-1));
    s2.set(i(&[2, 0, 0, 0]), i(&[0, 0, 1, 1]), rat(1));
    let mut s1 = SymMatrix::zeros(b.len());
    s1.set(i(&[0, 1, 1, 0]), i(&[1, 0, 0, 1]), rat(1));
    s1.set(i(&[1, 1, 0, 0]), i(&[0, 0, 1, 1]), rat(-1));
    assert_eq!(sol[1], s2);
    assert_eq!(sol[0], s1);
    assert!(sol[2].is_zero());
}

#[test]
fn defect_rejects_bad_input() {
    let (b, s) = pattern64();
    let zero = SymMatrix::zeros(b.len());
    let sol = defect_solve(&zero, &b, &[2, 2, 1], 2).unwrap();
    assert!(sol.iter().all(|m| m.is_zero()));
    // z1² has the full power of z1
    assert!(matches!(
        defect_solve(&s, &b, &[2, 2, 1], 0),
        Err(Error::PreconditionViolated(_))
    ));
    let mut bad = SymMatrix::zeros(b.len());
    let top_free = b.iter().position(|m| m.exp(2) == 0).unwrap();
    bad.set(top_free, top_free, rat(1));
    assert!(matches!(
        defect_solve(&bad, &b, &[2, 2, 1], 2),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn defect_with_blocks() {
    let caps = [2, 2, 1];
    let b = MonomialBasis::capped(3, 2, &caps);
    let m = 2;
    let (_, s) = pattern64();
    let hat: Vec<usize> = (0..b.len()).filter(|&i| b.get(i).exp(2) == 0).collect();
    // symmetric pattern on the diagonal block, skew part across blocks
    let mut big = s.kron(&SymMatrix::from_i64(&[&[1, 0], &[0, 0]]).unwrap());
    let (p, q) = (hat[0], hat[1]);
    let mut block = QMatrix::zeros(b.len() * m, b.len() * m);
    block.set(p * m, q * m + 1, rat(1));
    block.set(q * m, p * m + 1, rat(-1));
    block.set(q * m + 1, p * m, rat(1));
    block.set(p * m + 1, q * m, rat(-1));
    big = big.add(&SymMatrix::from_qmatrix(block).unwrap());
    assert!(annihilates(&big, &b, m));
    let sol = defect_solve(&big, &b, &caps, 2).unwrap();
    assert!(pencil_annihilates(&sol, &b, m));
}

fn random_l0(b: &MonomialBasis, coeffs: &[i64]) -> SymMatrix {
    let basis = annihilator_basis(b);
    let mut s = SymMatrix::zeros(b.len());
    for (e, c) in basis.iter().zip(coeffs.iter().cycle()) {
        s = s.add(&e.scale(&rat(*c)));
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairs_match_enumeration(exps in prop::collection::vec(0u32..4, 3), caps in prop::collection::vec(1u32..3, 3)) {
        let beta = mono(&exps);
        prop_assume!(beta.degree().is_multiple_of(2) && beta.degree() > 0);
        let ps = admissible_exponents(&beta, &caps);
        let oracle = pairs_oracle(&beta, &caps);
        prop_assert_eq!(ps.pairs.iter().cloned().collect::<BTreeSet<_>>(), oracle);
        if !ps.is_empty() {
            let edges = pair_graph_tree(&ps).unwrap();
            prop_assert_eq!(edges.len(), ps.len() - 1);
            // union-find connectivity
            let mut parent: Vec<usize> = (0..ps.len()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x { let r = find(p, p[x]); p[x] = r; }
                p[x]
            }
            for (u, v) in edges {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
            let root = find(&mut parent, 0);
            for x in 0..ps.len() {
                prop_assert_eq!(find(&mut parent, x), root);
            }
        }
    }

    #[test]
    fn decomposition_roundtrip(coeffs in prop::collection::vec(-3i64..4, 1..12)) {
        let b = MonomialBasis::capped(3, 3, &[2, 2, 2]);
        let s = random_l0(&b, &coeffs);
        let mut back = SymMatrix::zeros(b.len());
        for (e, c) in annihilator_coordinates(&s, &b).unwrap() {
            back = back.add(&e.matrix(&b).scale(&c));
        }
        prop_assert_eq!(back, s);
    }

    #[test]
    fn defect_solution_is_exact(coeffs in prop::collection::vec(-3i64..4, 1..12), d in 0usize..3) {
        let caps = [2u32, 2, 2];
        let b = MonomialBasis::capped(3, 3, &caps);
        let hat_caps: Vec<u32> = (0..3).map(|k| if k == d { 1 } else { 2 }).collect();
        let hb = MonomialBasis::capped(3, 3, &hat_caps);
        let small = random_l0(&hb, &coeffs);
        let idx: Vec<usize> = hb.iter().map(|m| b.index_of(m).unwrap()).collect();
        let mut s = SymMatrix::zeros(b.len());
        for p in 0..hb.len() {
            for q in p..hb.len() {
                s.set(idx[p], idx[q], small.get(p, q).clone());
            }
        }
        let sol = defect_solve(&s, &b, &caps, d).unwrap();
        prop_assert!(pencil_annihilates(&sol, &b, 1));
        prop_assert_eq!(&sol[d], &s);
    }
}
