use std::time::Instant;

use longres::gram::annihilates;
use longres::polycore::{parse_form, wronskian, MatrixForm, Monomial, SymMatrix};
use longres::sos::{build_gram_space, certificate_is_exact, factor_certificate, find_psd_gram, FeasibilityStatus};
use longres::Error;

fn scalar(text: &str, d: usize) -> MatrixForm {
    MatrixForm::scalar(parse_form(text, Some(d)).unwrap())
}

/// Choi's biquadratic form in x1..x3 = z1..z3, y1..y3 = z4..z6.
pub fn choi() -> MatrixForm {
    scalar(
        "z1^2*z4^2 + z2^2*z5^2 + z3^2*z6^2 - 2*z1*z4*z2*z5 - 2*z2*z5*z3*z6 - 2*z1*z4*z3*z6 \
         + 2*z1^2*z5^2 + 2*z2^2*z6^2 + 2*z3^2*z4^2",
        6,
    )
}

#[test]
fn single_square() {
    let space = build_gram_space(&scalar("z2^2", 2), None).unwrap();
    assert_eq!(space.basis.monomials(), &[Monomial::new(vec![0, 1])]);
    assert_eq!(space.particular, SymMatrix::identity(1));
    assert!(space.annihilator_basis.is_empty());
    let report = find_psd_gram(&space);
    assert_eq!(report.status, FeasibilityStatus::SosExact);
    let cert = factor_certificate(&space, &report).unwrap();
    assert_eq!(cert.h, scalar("z2", 2));
    assert_eq!(cert.residual, 0.0);
}

#[test]
fn sum_of_two_squares() {
    let space = build_gram_space(&scalar("z1^2 + z2^2", 2), None).unwrap();
    assert_eq!(space.particular, SymMatrix::identity(2));
    let report = find_psd_gram(&space);
    let cert = factor_certificate(&space, &report).unwrap();
    assert_eq!(
        cert.h,
        MatrixForm::new(
            1,
            2,
            vec![parse_form("z1", Some(2)).unwrap(), parse_form("z2", Some(2)).unwrap()]
        )
        .unwrap()
    );
}

#[test]
fn manifest_sos() {
    let f = scalar("2*z1^2 + 2*z1*z2 + z2^2", 2);
    let space = build_gram_space(&f, None).unwrap();
    let report = find_psd_gram(&space);
    assert_eq!(report.status, FeasibilityStatus::SosExact);
    let cert = factor_certificate(&space, &report).unwrap();
    assert!(certificate_is_exact(&f, &cert));
}

#[test]
fn wronskian_certificate() {
    let q = parse_form("z1 + z2", Some(2)).unwrap();
    let p = scalar("z1*z2", 2);
    let w = wronskian(&q, &p, 0).unwrap();
    assert_eq!(w, scalar("z2^2", 2));
    let space = build_gram_space(&w, None).unwrap();
    let cert = factor_certificate(&space, &find_psd_gram(&space)).unwrap();
    assert_eq!(cert.h, scalar("z2", 2));
}

#[test]
fn needs_search() {
    // particular Gram of (z1² - z2²)² + (z1 z2)²-type forms is indefinite
    let f = scalar("z1^4 + z2^4 + z3^4 - z1^2*z2^2 - z2^2*z3^2 + 2*z1^2*z3^2", 3);
    let space = build_gram_space(&f, None).unwrap();
    let report = find_psd_gram(&space);
    assert!(report.status.is_feasible(), "{:?}", report.status);
    let cert = factor_certificate(&space, &report).unwrap();
    if report.status == FeasibilityStatus::SosExact {
        assert!(certificate_is_exact(&f, &cert));
    }
}

#[test]
fn matrix_valued() {
    let f = MatrixForm::symmetric(
        2,
        vec![
            parse_form("z1^2 + z2^2", Some(2)).unwrap(),
            parse_form("z1*z2", Some(2)).unwrap(),
            parse_form("z1*z2", Some(2)).unwrap(),
            parse_form("z1^2 + z2^2", Some(2)).unwrap(),
        ],
    )
    .unwrap();
    let space = build_gram_space(&f, None).unwrap();
    for s in &space.annihilator_basis {
        assert!(annihilates(s, &space.basis, 2));
    }
    let report = find_psd_gram(&space);
    assert!(report.status.is_feasible());
    let cert = factor_certificate(&space, &report).unwrap();
    assert_eq!(cert.h.rows(), 2);
    if cert.exact {
        assert!(certificate_is_exact(&f, &cert));
    }
}

#[test]
fn odd_degree_rejected() {
    assert!(matches!(
        build_gram_space(&scalar("z1^3", 1), None),
        Err(Error::OddDegree(3))
    ));
}

#[test]
fn indefinite_is_not_sos() {
    let space = build_gram_space(&scalar("z1*z2", 2), None).unwrap();
    let report = find_psd_gram(&space);
    assert_eq!(report.status, FeasibilityStatus::NotSosEvidence);
    assert!(factor_certificate(&space, &report).is_err());
}

#[test]
fn choi_is_not_sos() {
    let t = Instant::now();
    let space = build_gram_space(&choi(), None).unwrap();
    let report = find_psd_gram(&space);
    assert_eq!(report.status, FeasibilityStatus::NotSosEvidence);
    assert!(report.final_distance > 1e-4);
    assert!(report.iterations <= 10_000);
    eprintln!("choi: {} monomials, {:?}, {:?}", space.basis.len(), report, t.elapsed());
}

#[test]
fn choi_times_square_is_not_sos() {
    let t = Instant::now();
    let s = parse_form("z1^2 - z2^2", Some(6)).unwrap();
    let f = choi().mul_form(&s.mul(&s));
    let space = build_gram_space(&f, None).unwrap();
    let report = find_psd_gram(&space);
    assert_eq!(report.status, FeasibilityStatus::NotSosEvidence, "{report:?}");
    assert!(report.final_distance > 1e-4);
    eprintln!(
        "s²·choi: {} monomials, {} iterations, {:.3e}, {:?}",
        space.basis.len(),
        report.iterations,
        report.final_distance,
        t.elapsed()
    );
}
