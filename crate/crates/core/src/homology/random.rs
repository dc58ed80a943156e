//! Seeded generators of valid cubical groups, complexes and chain maps.

use rand::Rng;

use super::complex::{ChainComplex, ChainMap, TwoArrowDiagram};
use super::cubical::{conjugate, direct_sum, representable, CubicalGroup};
use super::matrix::IntegerMatrix;

type BaseChange = Vec<(IntegerMatrix, IntegerMatrix)>;

fn base_change(rng: &mut impl Rng, ranks: &[usize]) -> BaseChange {
    ranks
        .iter()
        .map(|&r| IntegerMatrix::random_unimodular(rng, r, 3 * r + 2))
        .collect()
}

/// A sum of one or two representables `□^k` (`k ≤ 2`) truncated at level
/// `≤ 3`, in a random basis on every level.
pub fn random_cubical(rng: &mut impl Rng) -> CubicalGroup {
    let top = rng.gen_range(1..=3);
    let pieces = rng.gen_range(1..=2);
    let mut c = representable(rng.gen_range(0..=2), top);
    for _ in 1..pieces {
        c = direct_sum(&c, &representable(rng.gen_range(0..=1), top));
    }
    let p = base_change(rng, c.ranks());
    conjugate(&c, &p)
}

/// A direct sum of `ℤ` and `ℤ --×a--> ℤ` pieces in degrees `lo..lo+len`,
/// in a random basis.
pub fn random_complex(rng: &mut impl Rng, lo: i64, len: usize) -> ChainComplex {
    let mut c = ChainComplex::new(lo, vec![0; len], vec![IntegerMatrix::zeros(0, 0); len.saturating_sub(1)])
        .expect("zero complex");
    for k in 0..len {
        let n = lo + k as i64;
        for _ in 0..rng.gen_range(0..=1) {
            c = c.direct_sum(&ChainComplex::concentrated(n, 1));
        }
        if k + 1 < len {
            for _ in 0..rng.gen_range(0..=1) {
                let a = [1, 1, 2, 3, -2][rng.gen_range(0..5)];
                let piece = ChainComplex::new(n, vec![1, 1], vec![IntegerMatrix::from_rows(&[vec![a]])])
                    .expect("two-term complex");
                c = c.direct_sum(&piece);
            }
        }
    }
    let p = base_change(rng, c.ranks());
    c.conjugate(&p)
}

/// `d h + h d` for a random `h : A_n → B_{n+1}`.
fn random_null_homotopic(rng: &mut impl Rng, a: &ChainComplex, b: &ChainComplex) -> impl Fn(i64) -> IntegerMatrix {
    let lo = a.lo().min(b.lo()) - 1;
    let hi = a.hi().max(b.hi()) + 1;
    let h: Vec<(i64, IntegerMatrix)> =
        (lo..=hi).map(|n| (n, IntegerMatrix::random(rng, b.rank(n + 1), a.rank(n), 1))).collect();
    let (a, b) = (a.clone(), b.clone());
    move |n| {
        let get = |k: i64| {
            h.iter()
                .find(|(m, _)| *m == k)
                .map(|(_, x)| x.clone())
                .unwrap_or_else(|| IntegerMatrix::zeros(b.rank(k + 1), a.rank(k)))
        };
        b.d(n + 1).mul(&get(n)).add(&get(n - 1).mul(&a.d(n)))
    }
}

/// A chain map out of `a`: a multiple of the identity, an inclusion into
/// `a ⊕ e`, or zero, each perturbed by a null-homotopic map.
pub fn random_map_from(rng: &mut impl Rng, a: &ChainComplex) -> ChainMap {
    let lo = a.lo();
    let (e_lo, e_len) = (lo - 1 + rng.gen_range(0..=1), rng.gen_range(1..=3));
    let e = random_complex(rng, e_lo, e_len);
    let kind = rng.gen_range(0..3);
    let (target, base): (ChainComplex, Box<dyn Fn(i64) -> IntegerMatrix>) = match kind {
        0 => {
            let c = rng.gen_range(-2i64..=2);
            let a2 = a.clone();
            (
                a.clone(),
                Box::new(move |n| IntegerMatrix::identity(a2.rank(n)).scale(&c.into())),
            )
        }
        1 => {
            let b = a.direct_sum(&e);
            let (a2, e2) = (a.clone(), e.clone());
            (
                b,
                Box::new(move |n| {
                    let id = IntegerMatrix::identity(a2.rank(n));
                    IntegerMatrix::block(&[a2.rank(n), e2.rank(n)], &[a2.rank(n)], &[vec![Some(&id)], vec![None]])
                }),
            )
        }
        _ => {
            let (a2, e2) = (a.clone(), e.clone());
            (e, Box::new(move |n| IntegerMatrix::zeros(e2.rank(n), a2.rank(n))))
        }
    };
    let homotopy = random_null_homotopic(rng, a, &target);
    let p = base_change(rng, target.ranks());
    let tlo = target.lo();
    let conj_target = target.conjugate(&p);
    ChainMap::new(a.clone(), conj_target, |n| {
        let f = base(n).add(&homotopy(n));
        let k = n - tlo;
        if k >= 0 && (k as usize) < p.len() {
            p[k as usize].0.mul(&f)
        } else {
            f
        }
    })
    .expect("sum of a chain map and a null-homotopic map")
}

/// A random chain map between small complexes (total rank well below 40).
pub fn random_chain_map(rng: &mut impl Rng) -> ChainMap {
    let (a_lo, a_len) = (rng.gen_range(-1..=0), rng.gen_range(1..=3));
    let a = random_complex(rng, a_lo, a_len);
    if rng.gen_bool(0.25) {
        // Projection a ⊕ e → a.
        let e_len = rng.gen_range(1..=2);
        let e = random_complex(rng, a.lo(), e_len);
        let src = a.direct_sum(&e);
        let (a2, e2) = (a.clone(), e.clone());
        return ChainMap::new(src, a, move |n| {
            let id = IntegerMatrix::identity(a2.rank(n));
            IntegerMatrix::block(&[a2.rank(n)], &[a2.rank(n), e2.rank(n)], &[vec![Some(&id), None]])
        })
        .expect("projection is a chain map");
    }
    random_map_from(rng, &a)
}

pub fn random_diagram(rng: &mut impl Rng) -> TwoArrowDiagram {
    let (a_lo, a_len) = (rng.gen_range(-1..=0), rng.gen_range(1..=3));
    let a = random_complex(rng, a_lo, a_len);
    let g = random_map_from(rng, &a);
    let r = random_map_from(rng, &a);
    TwoArrowDiagram::new(g, r).expect("arrows share their source")
}
