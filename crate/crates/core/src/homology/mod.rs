//! Finite homological algebra over ℤ: Smith normal form, chain complexes,
//! simple complexes of maps and diagrams, and cubical abelian groups.

pub mod complex;
pub mod cubical;
pub mod io;
pub mod matrix;
pub mod random;

pub use complex::{
    simple_of_diagram, simple_of_map, verify_les_exactness, ChainComplex, ChainMap, Homology,
    TwoArrowDiagram,
};
pub use cubical::{decomposition_check, representable, CubicalGroup};
pub use matrix::{invariant_factors_by_minors, smith, smith_normal_form, IntegerMatrix, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Report;

/// `d² = 0` for the associated, normalized and degenerate complexes of
/// random cubical groups, plus the `C = NC ⊕ D` decomposition.
pub fn verify_cubical(count: u64, seed: u64) -> Report {
    let mut report = Report::new("cubical").param("count", count as i64).param("seed", seed as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let c = random::random_cubical(&mut rng);
        let valid = c.validate();
        report.check(valid.is_ok(), || json!({"sample": k, "error": format!("{valid:?}")}));
        for (name, cx) in [
            ("associated", c.associated_complex()),
            ("normalized", c.normalized_complex()),
            ("degenerate", c.degenerate_complex()),
        ] {
            let ok = cx.as_ref().is_ok_and(ChainComplex::is_complex);
            report.check(ok, || json!({"sample": k, "complex": name, "error": format!("{:?}", cx.err())}));
        }
        report.absorb(decomposition_check(&c));
        report.stat("max_rank", c.ranks().iter().copied().max().unwrap_or(0) as u64);
    }
    report
}

/// `U m V = D` with unimodular `U`, `V` and a divisibility chain on random
/// 4×4 matrices with entries in `[-3, 3]`, cross-checked against the
/// determinantal-divisor oracle on 3×3 and 4×4 matrices.
pub fn verify_smith(count: u64, seed: u64) -> Report {
    let mut report = Report::new("smith").param("count", count as i64).param("seed", seed as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        for n in [4, 3] {
            let m = IntegerMatrix::random(&mut rng, n, n, 3);
            let s = smith(&m);
            let factors = s.invariant_factors();
            let chain = factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
            let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || s.d.get(i, j) == &BigInt::from(0)));
            let ok = s.u.mul(&m).mul(&s.v) == s.d
                && s.u.is_unimodular()
                && s.v.is_unimodular()
                && chain
                && diagonal
                && factors == invariant_factors_by_minors(&m);
            report.check(ok, || {
                json!({"sample": k, "matrix": m.to_string(), "d": s.d.to_string(),
                       "oracle": invariant_factors_by_minors(&m).iter().map(|x| x.to_string()).collect::<Vec<_>>()})
            });
        }
    }
    report
}

/// Long exact sequence of the simple complex on random chain maps.
pub fn verify_les(count: u64, seed: u64) -> Report {
    let mut report = Report::new("les").param("count", count as i64).param("seed", seed as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let f = random::random_chain_map(&mut rng);
        report.stat("max_total_rank", (f.source.total_rank() + f.target.total_rank()) as u64);
        report.absorb(verify_les_exactness(&f));
    }
    report
}

/// `d² = 0` on simple complexes of random maps and two-arrow diagrams.
pub fn verify_simple_complexes(count: u64, seed: u64) -> Report {
    let mut report = Report::new("simple-complexes").param("count", count as i64).param("seed", seed as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let f = random::random_chain_map(&mut rng);
        let s = simple_of_map(&f);
        report.check(s.as_ref().is_ok_and(ChainComplex::is_complex), || {
            json!({"sample": k, "construction": "map", "error": format!("{:?}", s.err())})
        });
        let dgm = random::random_diagram(&mut rng);
        let s = simple_of_diagram(&dgm);
        report.check(s.as_ref().is_ok_and(ChainComplex::is_complex), || {
            json!({"sample": k, "construction": "diagram", "error": format!("{:?}", s.err())})
        });
    }
    report
}

/// Everything above at the given sample counts.
pub fn verify_homological_suite(count: u64, seed: u64) -> Report {
    let mut report = Report::new("homological").param("count", count as i64).param("seed", seed as i64);
    report.absorb(verify_cubical(count, seed));
    report.absorb(verify_smith(count, seed.wrapping_add(1)));
    report.absorb(verify_les(count.div_ceil(2), seed.wrapping_add(2)));
    report.absorb(verify_simple_complexes(count, seed.wrapping_add(3)));
    report
}
