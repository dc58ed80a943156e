use num_bigint::BigInt;
use proptest::prelude::*;
use regver_core::deligne::symbols;
use regver_core::form::Symbol;
use regver_core::logform::*;
use regver_core::residue::Coordinate::{X, Y, Z};
use regver_core::residue::*;

#[test]
fn goncharov_agrees_with_wang_up_to_six() {
    for m in 1..=6 {
        let r = verify_goncharov_equals_wang(m);
        assert!(r.passed(), "m = {m}: {:?}", r.counterexamples);
    }
}

#[test]
fn log_differential_up_to_five() {
    for m in 1..=5 {
        let r = verify_log_differential(m);
        assert!(r.passed(), "m = {m}: {:?}", r.counterexamples);
    }
}

#[test]
fn vanishing_up_to_five() {
    for m in 1..=5 {
        assert!(verify_vanishing_on_diagonal(m).passed());
    }
}

#[test]
fn boundaries_up_to_four() {
    for m in 1..=4 {
        let r = verify_wang_boundary(m);
        assert!(r.passed(), "wang m = {m}: {:?}", r.counterexamples);
        let r = verify_goncharov_boundary(m);
        assert!(r.passed(), "goncharov m = {m}: {:?}", r.counterexamples);
    }
    for n in 0..=4 {
        for m in 0..=4 - n {
            if n + m == 0 {
                continue;
            }
            let r = verify_mixed_boundary(n, m);
            assert!(r.passed(), "mixed ({n},{m}): {:?}", r.counterexamples);
        }
    }
}

#[test]
fn goncharov_residue_signs() {
    // Res_{z_i = 0} of z1/z0 ∧ … ∧ zm/z0 is (-1)^{i-1} times the remaining wedge.
    let p = Ambient::new(0, 3);
    let w = WedgeElement::from_tuple(p, &p.basis()).unwrap();
    for i in 1..=3u32 {
        let d = FaceDivisor::new(p, Z(i)).unwrap();
        let rest = WedgeElement::from_tuple(d.target(), &d.target().basis()).unwrap();
        let sign = if i % 2 == 1 { 1 } else { -1 };
        assert_eq!(residue(&w, &d).unwrap(), rest.scale(&BigInt::from(sign)));
    }
}

fn ambient_and_tuple(max_k: usize) -> impl Strategy<Value = (Ambient, Vec<CoordFunction>)> {
    (0u32..=2, 0u32..=2)
        .prop_filter("nonempty", |(n, m)| n + m >= 1)
        .prop_flat_map(move |(n, m)| {
            let a = Ambient::new(n, m);
            let r = a.rank();
            let k = max_k.min(r + 1);
            (
                Just(a),
                prop::collection::vec(prop::collection::vec(-3i64..=3, r), 1..=k),
            )
        })
        .prop_map(|(a, rows)| {
            let basis = a.basis();
            let tuple = rows
                .into_iter()
                .map(|row| {
                    row.iter()
                        .zip(&basis)
                        .fold(CoordFunction::one(), |acc, (&e, b)| acc.mul(&b.pow(e)))
                })
                .collect();
            (a, tuple)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_path_independent((a, tuple) in ambient_and_tuple(4)) {
        for d in a.divisors() {
            let x = residue_of_tuple(&tuple, &d, ReductionStrategy::MinimalPivot).unwrap();
            let y = residue_of_tuple(&tuple, &d, ReductionStrategy::PairwiseEuclid).unwrap();
            prop_assert_eq!(&x, &y);
            // Linearity: the residue of the basis expansion agrees too.
            let w = WedgeElement::from_tuple(a, &tuple).unwrap();
            prop_assert_eq!(residue(&w, &d).unwrap(), x);
        }
    }

    #[test]
    fn residue_alternates((a, tuple) in ambient_and_tuple(4)) {
        prop_assume!(tuple.len() >= 2);
        let mut swapped = tuple.clone();
        swapped.swap(0, 1);
        let mut repeated = tuple.clone();
        repeated[1] = repeated[0].clone();
        for d in a.divisors() {
            let r = residue_of_tuple(&tuple, &d, ReductionStrategy::MinimalPivot).unwrap();
            let s = residue_of_tuple(&swapped, &d, ReductionStrategy::MinimalPivot).unwrap();
            prop_assert_eq!(s, r.neg());
            let z = residue_of_tuple(&repeated, &d, ReductionStrategy::MinimalPivot).unwrap();
            prop_assert!(z.is_zero());
        }
    }

    #[test]
    fn units_have_no_residue((a, tuple) in ambient_and_tuple(4)) {
        for d in a.divisors() {
            let units: Vec<CoordFunction> = tuple
                .iter()
                .map(|f| {
                    // Strip the part of f that is not a unit along d.
                    let v = valuation(f, &d);
                    let t = match d.coordinate {
                        X(i) | Y(i) => CoordFunction::ratio(Y(i), X(i)),
                        Z(0) => CoordFunction::ratio(Z(a.m), Z(0)),
                        Z(k) => CoordFunction::ratio(Z(k), Z(0)),
                    };
                    let tv = valuation(&t, &d);
                    f.mul(&t.pow(-v * tv))
                })
                .collect();
            for u in &units {
                prop_assert_eq!(valuation(u, &d), 0);
            }
            let r = residue_of_tuple(&units, &d, ReductionStrategy::MinimalPivot).unwrap();
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn double_residues_anticommute((a, tuple) in ambient_and_tuple(4)) {
        prop_assume!(tuple.len() >= 2);
        let coords = a.coordinates();
        let w = WedgeElement::from_tuple(a, &tuple).unwrap();
        for &c1 in &coords {
            for &c2 in &coords {
                let same_block = match (c1, c2) {
                    (X(i) | Y(i), X(k) | Y(k)) => i == k,
                    (Z(i), Z(k)) => i == k,
                    _ => false,
                };
                if same_block {
                    continue;
                }
                let d1 = FaceDivisor::new(a, c1).unwrap();
                let d2 = FaceDivisor::new(a, c2).unwrap();
                // With m = 1 the other z coordinate disappears together with the first.
                let (Some(c2_on_d1), Some(c1_on_d2)) = (d1.transport(c2), d2.transport(c1)) else {
                    continue;
                };
                let first = residue(&residue(&w, &d1).unwrap(), &FaceDivisor::new(d1.target(), c2_on_d1).unwrap()).unwrap();
                let second = residue(&residue(&w, &d2).unwrap(), &FaceDivisor::new(d2.target(), c1_on_d2).unwrap()).unwrap();
                prop_assert_eq!(first, second.neg());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// T is multiplicative-to-additive in each slot once expanded in coordinates.
    #[test]
    fn t_is_multilinear(
        (a, tuple) in ambient_and_tuple(4),
        extra in prop::collection::vec(-2i64..=2, 4),
        slot in 0usize..4,
    ) {
        let slot = slot % tuple.len();
        let g = a.basis().iter().zip(&extra).fold(CoordFunction::one(), |acc, (b, &e)| acc.mul(&b.pow(e)));
        let mut fg = tuple.clone();
        fg[slot] = tuple[slot].mul(&g);
        let mut only_g = tuple.clone();
        only_g[slot] = g;
        let lhs = bound_t(a, &fg).unwrap().expand();
        let rhs = bound_t(a, &tuple).unwrap().expand().add(&bound_t(a, &only_g).unwrap().expand());
        prop_assert_eq!(lhs, rhs);
    }

    /// The canonical wedge and its T agree with T of the raw tuple.
    #[test]
    fn t_of_wedge_matches_tuple((a, tuple) in ambient_and_tuple(3)) {
        let w = WedgeElement::from_tuple(a, &tuple).unwrap();
        prop_assert_eq!(t_of_wedge(&w), bound_t(a, &tuple).unwrap().expand());
    }
}

#[test]
fn goncharov_alternates_on_repeats() {
    let fs = [Symbol(1), Symbol(2), Symbol(1)];
    assert!(build_goncharov(&fs).unwrap().is_zero());
    assert!(build_t_log(&fs).is_zero());
    assert_eq!(build_goncharov(&symbols(3)).unwrap(), build_t_log(&symbols(3)));
}
