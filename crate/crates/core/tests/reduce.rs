mod common;

use common::*;
use longres::polycore::{CRational, Form, MatrixForm, RatFn};
use longres::reduce::{
    identify_variables, multiaffinize, reduce_all, reduce_degree, MultiaffinizationMap, ReductionPlan,
};
use longres::synth::verification_points;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn form_from_seed(seed: u64) -> Form {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = 1 + (seed % 3) as usize;
    let degree = (seed / 3 % 7) as u32;
    random_form(&mut rng, d, degree.min(3 * d as u32), 3)
}

/// Swaps two fresh variables of the group of `k`.
fn swap_in_group(p: &Form, map: &MultiaffinizationMap, k: usize) -> Option<Form> {
    let g = &map.groups()[k];
    if g.len() < 2 {
        return None;
    }
    let mut perm: Vec<usize> = (0..map.fresh_nvars()).collect();
    perm.swap(g[0], g[g.len() - 1]);
    Some(p.map_vars(&perm, map.fresh_nvars()))
}

/// Smallest Hermitian eigenvalue of `(F + F*) / 2` for `m ≤ 2`.
fn min_hermitian_eig(f: &[Vec<CRational>]) -> f64 {
    let re = |z: &CRational| z.to_f64().0;
    match f.len() {
        1 => re(&f[0][0]),
        2 => {
            let a = re(&f[0][0]);
            let c = re(&f[1][1]);
            let (b01, b10) = (f[0][1].to_f64(), f[1][0].to_f64());
            // off-diagonal of the Hermitian part
            let br = 0.5 * (b01.0 + b10.0);
            let bi = 0.5 * (b01.1 - b10.1);
            0.5 * (a + c) - (0.25 * (a - c).powi(2) + br * br + bi * bi).sqrt()
        }
        _ => unimplemented!("fixtures are at most 2x2"),
    }
}

#[test]
fn multiaffinized_corpus_stays_positive() {
    for (name, f) in corpus() {
        let (g, map) = multiaffinize(&f).unwrap();
        assert!(g.is_multiaffine(), "{name}");
        for z in verification_points(map.fresh_nvars(), 50, 7) {
            let Some(v) = g.evaluate(&z) else { continue };
            assert!(min_hermitian_eig(&v) >= -1e-9, "{name} at {z:?}");
        }
        let back = RatFn::new(
            longres::reduce::identify_matrix(g.numerator(), &map),
            identify_variables(g.denominator(), &map),
        )
        .unwrap();
        assert_eq!(back, f, "{name}");
    }
}

#[test]
fn already_multiaffine_is_unchanged() {
    let f = scalar_fn("z1*z2", "z1 + z2", 2);
    let (g, map) = multiaffinize(&f).unwrap();
    assert_eq!(g, f);
    assert_eq!(map, MultiaffinizationMap::identity(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identify_inverts_reduce(seed in any::<u64>(), extra in 0u32..2) {
        let p = form_from_seed(seed);
        let d = p.nvars();
        for k in 0..d {
            let plan = ReductionPlan::appended(k, p.degree_in(k).max(1) + extra, d).unwrap();
            let r = reduce_degree(&p, &plan).unwrap();
            prop_assert!(plan.new_vars.iter().all(|&j| r.degree_in(j) <= 1));
            prop_assert_eq!(r.degree_in(k), 0);
            prop_assert_eq!(identify_variables(&r, &plan.identification()), p.clone());
        }
        let caps: Vec<u32> = (0..d).map(|k| p.degree_in(k).max(1)).collect();
        let map = MultiaffinizationMap::consecutive(&caps);
        let r = reduce_all(&p, &map).unwrap();
        prop_assert!(r.is_multiaffine());
        prop_assert_eq!(r.degree(), p.degree());
        prop_assert_eq!(identify_variables(&r, &map), p.clone());
        for k in 0..d {
            if let Some(swapped) = swap_in_group(&r, &map, k) {
                prop_assert_eq!(swapped, r.clone());
            }
        }
    }

    #[test]
    fn bound_below_degree_is_rejected(seed in any::<u64>()) {
        let p = form_from_seed(seed);
        for k in 0..p.nvars() {
            let deg = p.degree_in(k);
            if deg >= 2 {
                let plan = ReductionPlan::appended(k, deg - 1, p.nvars()).unwrap();
                prop_assert!(reduce_degree(&p, &plan).is_err());
            }
        }
    }

    #[test]
    fn matrix_reduction_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, p) = random_pair(&mut rng);
        let caps: Vec<u32> = (0..q.nvars()).map(|k| q.degree_in(k).max(p.degree_in(k)).max(1)).collect();
        let map = MultiaffinizationMap::consecutive(&caps);
        let entries: Vec<Form> = p.entries().iter().map(|e| reduce_all(e, &map).unwrap()).collect();
        let rp = MatrixForm::new(p.rows(), p.cols(), entries).unwrap();
        prop_assert!(rp.is_symmetric());
        prop_assert_eq!(longres::reduce::identify_matrix(&rp, &map), p);
    }
}
