//! Exact combinatorics: factorials, binomials, signed permutations and the
//! factorial-sum identity relating Goncharov's and Wang's coefficients.

mod poly;

pub use poly::RationalPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{domain, Result};
use crate::rational::{self, Rational};
use crate::report::Report;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn fact_q(n: i64) -> Rational {
    rational::from_bigint(factorial(n as u64))
}

fn check_range(q: i64, p: i64) -> Result<()> {
    if q < 0 || q > p {
        return domain(format!("need 0 <= q <= p, got q = {q}, p = {p}"));
    }
    Ok(())
}

/// Adds fractions `n / d` over the product of denominators and reduces once
/// at the end, which is much cheaper than reducing after every term.
fn sum_fractions(terms: impl IntoIterator<Item = (BigInt, BigInt)>) -> Rational {
    let (num, den) = terms
        .into_iter()
        .fold((BigInt::zero(), BigInt::one()), |(n, d), (tn, td)| (n * &td + tn * &d, d * td));
    Rational::new(num, den)
}

fn fact_i(n: i64) -> BigInt {
    factorial(n as u64)
}

/// `A(q, p) = Σ_{q ≤ 2j ≤ p} 1 / ((2j+1) (2j-q)! (p-2j)!)`.
pub fn lhs_a(q: i64, p: i64) -> Result<Rational> {
    check_range(q, p)?;
    let first = (q + 1) / 2;
    Ok(sum_fractions((first..=p / 2).map(|j| {
        let two_j = 2 * j;
        (BigInt::one(), BigInt::from(two_j + 1) * fact_i(two_j - q) * fact_i(p - two_j))
    })))
}

/// `Σ_{l=0}^{q} (-1)^l q! 2^{p-q+l} / ((q-l)! (p-q+l+1)!)`.
pub fn rhs_a(q: i64, p: i64) -> Result<Rational> {
    check_range(q, p)?;
    let q_fact = fact_i(q);
    Ok(sum_fractions((0..=q).map(|l| {
        let num = (&q_fact << (p - q + l) as usize) * if l % 2 == 0 { 1 } else { -1 };
        (num, fact_i(q - l) * fact_i(p - q + l + 1))
    })))
}

/// Checks `lhs_a(q, p) == rhs_a(q, p)` for every `0 ≤ q ≤ p ≤ max_p`.
pub fn verify_factorial_lemma(max_p: i64) -> Report {
    let mut report = Report::new("factorial-lemma").param("max_p", max_p);
    for p in 0..=max_p.max(-1) {
        for q in 0..=p {
            let lhs = lhs_a(q, p).expect("range checked");
            let rhs = rhs_a(q, p).expect("range checked");
            report.check(lhs == rhs, || {
                json!({"q": q, "p": p, "lhs": lhs.to_string(), "rhs": rhs.to_string()})
            });
        }
    }
    report.stat("pairs", report.checks);
    report
}

/// Checks the closed form `A(0, p) (p+1)! = 2^p` for `p ≤ max_p`.
pub fn verify_closed_form_a0(max_p: i64) -> Report {
    let mut report = Report::new("factorial-lemma-q0").param("max_p", max_p);
    for p in 0..=max_p.max(-1) {
        let value = lhs_a(0, p).expect("range checked") * fact_q(p + 1);
        let expected = rational::from_bigint(BigInt::one() << p as usize);
        report.check(value == expected, || {
            json!({"p": p, "value": value.to_string(), "expected": expected.to_string()})
        });
    }
    report
}

/// `Σ_{k=0}^{n} (-1)^k C(n, k)`.
pub fn alternating_binomial_sum(n: u64) -> BigInt {
    (0..=n).fold(BigInt::zero(), |acc, k| {
        let c = binomial(n, k);
        if k % 2 == 0 {
            acc + c
        } else {
            acc - c
        }
    })
}

/// Checks that the alternating binomial sum is `1` for `n = 0` and `0` otherwise.
pub fn verify_alternating_binomial(n: i64) -> Report {
    let mut report = Report::new("binomial").param("n", n);
    if n < 0 {
        report.fail(json!({"error": "n must be non-negative", "n": n}));
        return report;
    }
    let sum = alternating_binomial_sum(n as u64);
    let expected = if n == 0 { BigInt::one() } else { BigInt::zero() };
    report.check(sum == expected, || {
        json!({"n": n, "sum": sum.to_string(), "expected": expected.to_string()})
    });
    report
}

/// Runs [`verify_alternating_binomial`] for every `n ≤ max_n`.
pub fn verify_alternating_binomial_range(max_n: i64) -> Report {
    let mut report = Report::new("binomial").param("max_n", max_n);
    for n in 0..=max_n.max(-1) {
        report.absorb(verify_alternating_binomial(n));
    }
    report
}

/// Checks `((1+x)^{p+1} - (1-x)^{p+1}) / 2 = Σ_{0 ≤ 2j ≤ p} C(p+1, 2j+1) x^{2j+1}`
/// as an identity of polynomials.
pub fn verify_odd_binomial_poly(p: i64) -> Report {
    let mut report = Report::new("odd-binomial-poly").param("p", p);
    if p < 0 {
        report.fail(json!({"error": "p must be non-negative", "p": p}));
        return report;
    }
    let e = (p + 1) as u32;
    let one_plus = RationalPoly::from_coeffs([(0, rational::int(1)), (1, rational::int(1))]);
    let one_minus = RationalPoly::from_coeffs([(0, rational::int(1)), (1, rational::int(-1))]);
    let lhs = (one_plus.pow(e) - one_minus.pow(e)).scale(&rational::rat(1, 2));
    let rhs = RationalPoly::from_coeffs((0..=p / 2).map(|j| {
        let k = (2 * j + 1) as u32;
        (k, rational::from_bigint(binomial((p + 1) as u64, k as u64)))
    }));
    report.check(lhs == rhs, || {
        json!({"p": p, "lhs": lhs.to_string(), "rhs": rhs.to_string()})
    });
    report.stat("terms", lhs.len() as u64);
    report
}

/// All permutations of `0..n` with their parity (`true` = odd), in
/// lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<(Vec<usize>, bool)>,
    ) {
        if current.len() == n {
            out.push((current.clone(), permutation_is_odd(current)));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                current.push(k);
                rec(n, current, used, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

pub fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}
