use regver_core::combinatorics::*;
use regver_core::deligne::*;

#[test]
fn factorial_lemma_to_sixty() {
    let r = verify_factorial_lemma(60);
    assert!(r.passed(), "{:?}", r.counterexamples);
    assert_eq!(r.stats["pairs"], 1891);
    assert!(verify_closed_form_a0(60).passed());
}

#[test]
fn binomial_identities() {
    assert!(verify_alternating_binomial_range(40).passed());
    for p in 0..=40 {
        assert!(verify_odd_binomial_poly(p).passed(), "p = {p}");
    }
}

#[test]
fn wang_form_equals_product_form() {
    for m in 1..=5 {
        let r = verify_prop51_item2(m);
        assert!(r.passed(), "m = {m}: {:?}", r.counterexamples);
    }
}

#[test]
fn takeda_identities() {
    for m in 1..=5 {
        let r = verify_takeda_all(m);
        assert!(r.passed(), "m = {m}: {:?}", r.counterexamples);
    }
    assert!(verify_alpha_coefficients(5).passed());
}

#[test]
fn differential_recursion() {
    for m in 2..=5 {
        assert!(verify_prop51_item3(m, false).passed(), "m = {m}");
        assert!(verify_prop51_item3(m, true).passed(), "m = {m}, log");
    }
}

#[test]
fn raw_differential() {
    for m in 1..=5 {
        let r = verify_prop52(m);
        assert!(r.passed(), "m = {m}: {:?}", r.counterexamples);
        assert!(verify_dd_zero(m).passed());
    }
}
