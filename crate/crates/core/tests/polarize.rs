mod common;

use std::time::Instant;

use common::*;
use longres::polarize::{
    check_product_identity, check_wronskian_identity, gauge_difference_check, polarize_product, polarize_product_with,
    polarize_with_psd_slot, transfer_pencil_with, ChainOrder, MonomialBasis,
};
use longres::polycore::{all_monomials, Form, MatrixForm, Monomial};
use longres::sos::FeasibilityStatus;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `C(z) Ψᵀ` must be `z^β` in the slot row and zero elsewhere.
fn transfer_oracle(basis: &MonomialBasis, beta: &Monomial, slot: usize, order: ChainOrder) -> bool {
    let c = transfer_pencil_with(basis, beta, slot, order).unwrap();
    let lhs = c.as_matrix_form().mul(&basis.psi(1).transpose());
    let d = basis.nvars();
    (0..basis.len()).all(|i| {
        let e = lhs.get(i, 0);
        if i == slot {
            *e == Form::term(beta.clone(), num_traits::One::one())
        } else {
            e.is_zero()
        }
    }) && c.coeffs().iter().all(|a| a.rank() <= 2)
        && c.nvars() == d
}

#[test]
fn corpus_psd_slots() {
    for (name, f) in corpus() {
        if !f.is_multiaffine() {
            continue;
        }
        let (q, p) = (f.denominator(), f.numerator());
        for k in 0..f.nvars() {
            if p.degree_in(k) != q.degree_in(k) {
                continue;
            }
            let r = polarize_with_psd_slot(q, p, k, &Form::one(f.nvars())).unwrap();
            assert_eq!(r.status, FeasibilityStatus::SosExact, "{name} slot {k}");
            let pol = &r.polarization;
            assert!(pol.pencil.coeff(k).is_psd_exact(), "{name} slot {k}");
            assert!(check_product_identity(q, p, &pol.basis, &pol.pencil), "{name}");
            assert!(check_wronskian_identity(q, p, &pol.basis, &pol.pencil), "{name}");
        }
    }
}

#[test]
fn fifty_random_pairs_in_time() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (q, p) = random_pair(&mut rng);
        let pol = polarize_product(&q, &p).unwrap();
        assert!(check_product_identity(&q, &p, &pol.basis, &pol.pencil));
    }
    eprintln!("50 polarizations: {:?}", t.elapsed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_identities_hold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, p) = random_pair(&mut rng);
        let a = polarize_product_with(&q, &p, ChainOrder::Ascending).unwrap();
        let b = polarize_product_with(&q, &p, ChainOrder::Descending).unwrap();
        for pol in [&a, &b] {
            prop_assert!(check_product_identity(&q, &p, &pol.basis, &pol.pencil));
            prop_assert!(check_wronskian_identity(&q, &p, &pol.basis, &pol.pencil));
            prop_assert_eq!(pol.size(), pol.basis.len() * p.size());
        }
        prop_assert_eq!(&a.basis, &b.basis);
        prop_assert!(gauge_difference_check(&a.pencil, &b.pencil, &a.basis).unwrap());
    }

    #[test]
    fn transfer_pencils_have_rank_two(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(2..=6);
        let n = rng.gen_range(0..d as u32);
        let basis = MonomialBasis::multiaffine(d, n);
        let targets: Vec<Monomial> = all_monomials(d, n + 1).into_iter().filter(Monomial::is_multiaffine).collect();
        let beta = targets[rng.gen_range(0..targets.len())].clone();
        let slot = rng.gen_range(0..basis.len());
        prop_assert!(transfer_oracle(&basis, &beta, slot, ChainOrder::Ascending));
        prop_assert!(transfer_oracle(&basis, &beta, slot, ChainOrder::Descending));
    }

    #[test]
    fn gauge_check_rejects_a_perturbation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, p) = random_pair(&mut rng);
        let a = polarize_product(&q, &p).unwrap();
        let mut bumped = a.pencil.clone();
        let n = bumped.size();
        let i = rng.gen_range(0..n);
        bumped.coeff_mut(0).add_sym(i, i, &longres::polycore::rat(1));
        prop_assert!(!gauge_difference_check(&a.pencil, &bumped, &a.basis).unwrap());
        prop_assert!(!check_product_identity(&q, &p, &a.basis, &bumped));
    }
}

#[test]
fn mismatched_degrees_are_rejected() {
    let q = form("z1", 2);
    let p = MatrixForm::scalar(form("z1*z2*z2", 2));
    assert!(polarize_product(&q, &p).is_err());
}
