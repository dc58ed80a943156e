//! Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use regver_core::combinatorics::{verify_closed_form_a0, verify_factorial_lemma};
use regver_core::deligne::{
    verify_dd_zero, verify_prop51_item2, verify_prop51_item3, verify_prop52, verify_takeda_all,
};
use regver_core::homology::{
    simple_of_diagram, verify_cubical, verify_les, verify_simple_complexes, verify_smith,
    ChainComplex, ChainMap, IntegerMatrix, TwoArrowDiagram,
};
use regver_core::logform::{
    verify_goncharov_equals_wang, verify_log_differential, verify_vanishing_on_diagonal,
};
use regver_core::residue::{verify_goncharov_boundary, verify_mixed_boundary, verify_wang_boundary};
use regver_core::Report;
use serde_json::Value;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reports: &[Report]) -> Outcome {
        let checks: u64 = reports.iter().map(|r| r.checks).sum();
        match reports.iter().find(|r| !r.passed()) {
            None => Outcome { ok: true, detail: format!("{checks} checks") },
            Some(r) => Outcome {
                ok: false,
                detail: format!("{} {:?}: {:?}", r.suite, r.params, r.counterexamples.first()),
            },
        }
    }

    fn and(mut self, ok: bool, what: &str) -> Outcome {
        if !ok {
            self.ok = false;
            self.detail = format!("{}; {what}", self.detail);
        }
        self
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn c1() -> Outcome {
    let (r, t) = timed(|| verify_factorial_lemma(60));
    Outcome::from_reports(std::slice::from_ref(&r))
        .and(r.checks == 1891, &format!("expected 1891 pairs, got {}", r.checks))
        .and(t < Duration::from_secs(1), &format!("took {t:?}"))
}

fn c2() -> Outcome {
    Outcome::from_reports(&[verify_closed_form_a0(60)])
}

fn c3() -> Outcome {
    let reports: Vec<Report> = (1..=5).map(verify_goncharov_equals_wang).collect();
    let (r6, t) = timed(|| verify_goncharov_equals_wang(6));
    let mut all = reports;
    all.push(r6);
    Outcome::from_reports(&all).and(t < Duration::from_secs(30), &format!("m = 6 took {t:?}"))
}

fn c4() -> Outcome {
    let mut reports: Vec<Report> = (1..=4).map(verify_prop51_item2).collect();
    let (r5, t) = timed(|| verify_prop51_item2(5));
    reports.push(r5);
    Outcome::from_reports(&reports).and(t < Duration::from_secs(60), &format!("m = 5 took {t:?}"))
}

fn c5() -> Outcome {
    Outcome::from_reports(&(1..=5).map(verify_takeda_all).collect::<Vec<_>>())
}

fn c6() -> Outcome {
    let reports: Vec<Report> = (2..=5)
        .flat_map(|m| [verify_prop51_item3(m, false), verify_prop51_item3(m, true)])
        .collect();
    Outcome::from_reports(&reports)
}

fn c7() -> Outcome {
    let reports: Vec<Report> = (1..=5)
        .flat_map(|m| [verify_prop52(m), verify_dd_zero(m), verify_log_differential(m)])
        .collect();
    Outcome::from_reports(&reports)
}

fn c8() -> Outcome {
    let mut reports = Vec::new();
    for m in 1..=4 {
        reports.push(verify_wang_boundary(m));
        reports.push(verify_goncharov_boundary(m));
    }
    for n in 0..=4 {
        for m in 0..=4 - n {
            if n + m > 0 {
                reports.push(verify_mixed_boundary(n, m));
            }
        }
    }
    Outcome::from_reports(&reports)
}

fn c9() -> Outcome {
    Outcome::from_reports(&(1..=5).map(verify_vanishing_on_diagonal).collect::<Vec<_>>())
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// A = (ℤ² → ℤ), B = (ℤ → ℤ²), C = (ℤ² → ℤ) in degrees 1, 0 with explicit
/// g and r; the simple differential is compared entrywise with
/// (−dα₁, dα₂ + gα₁, dα₃ − rα₁) worked out by hand.
fn hand_built_diagram() -> bool {
    let m = IntegerMatrix::from_rows;
    let a = ChainComplex::new(0, vec![1, 2], vec![m(&[vec![1, -1]])]).unwrap();
    let b = ChainComplex::new(0, vec![2, 1], vec![m(&[vec![1], vec![1]])]).unwrap();
    let c = ChainComplex::new(0, vec![1, 2], vec![m(&[vec![2, -2]])]).unwrap();
    let g = ChainMap::new(a.clone(), b.clone(), |n| match n {
        1 => m(&[vec![1, -1]]),
        0 => m(&[vec![1], vec![1]]),
        _ => IntegerMatrix::zeros(b.rank(n), a.rank(n)),
    })
    .unwrap();
    let r = ChainMap::new(a.clone(), c.clone(), |n| match n {
        1 => m(&[vec![1, 0], vec![0, 1]]),
        0 => m(&[vec![2]]),
        _ => IntegerMatrix::zeros(c.rank(n), a.rank(n)),
    })
    .unwrap();
    let s = simple_of_diagram(&TwoArrowDiagram::new(g, r).unwrap()).unwrap();
    (s.rank(2), s.rank(1), s.rank(0)) == (2, 4, 3)
        && s.d(2).mul_vec(&ints(&[3, 5])) == ints(&[2, -2, -3, -5])
        && s.d(1).mul_vec(&ints(&[4, 7, 1, 2])) == ints(&[11, 11, -10])
        && s.is_complex()
}

fn c10() -> Outcome {
    let reports = [
        verify_cubical(200, 101),
        verify_smith(200, 102),
        verify_les(100, 103),
        verify_simple_complexes(200, 104),
    ];
    Outcome::from_reports(&reports).and(hand_built_diagram(), "hand-built two-arrow instance differs")
}

fn c11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_regver");
    let (quick, t) = timed(|| Command::new(bin).args(["all", "--level", "quick"]).output());
    let quick = match quick {
        Ok(o) => o,
        Err(e) => return Outcome { ok: false, detail: format!("cannot run {bin}: {e}") },
    };
    let perturbed = Command::new(bin)
        .args(["verify", "goncharov-wang", "--m", "4", "--perturb-coefficient", "1"])
        .output()
        .expect("regver runs");
    let report: Value = serde_json::from_slice(&perturbed.stdout).unwrap_or(Value::Null);
    let has_counterexample = report["suites"]
        .as_array()
        .is_some_and(|s| s.iter().any(|x| x["counterexamples"].as_array().is_some_and(|c| !c.is_empty())));
    Outcome { ok: true, detail: format!("quick run {} ms", t.as_millis()) }
        .and(quick.status.code() == Some(0), &format!("quick exit {:?}", quick.status.code()))
        .and(t <= Duration::from_secs(10), "quick run over 10 s")
        .and(perturbed.status.code() == Some(1), &format!("perturbed exit {:?}", perturbed.status.code()))
        .and(has_counterexample, "perturbed report has no counterexample")
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "factorial-sum lemma, 0 <= q <= p <= 60", c1),
        (2, "A(0,p)(p+1)! = 2^p, p <= 60", c2),
        (3, "Goncharov = Wang, m <= 6", c3),
        (4, "T_m = C_m, m <= 5", c4),
        (5, "Takeda identities, m <= 5", c5),
        (6, "recursion for d_D T_m, m = 2..5", c6),
        (7, "raw differential and log specialization, m <= 5", c7),
        (8, "residue-level boundaries, m <= 4, n + m <= 4", c8),
        (9, "vanishing on slot substitution, m <= 5", c9),
        (10, "homological suite", c10),
        (11, "regver all --level quick and fault injection", c11),
    ];
    let mut failed = 0;
    for (k, name, check) in criteria {
        let (out, t) = timed(check);
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {k:2} {tag} {name} ({}, {} ms)", out.detail, t.as_millis());
        failed += usize::from(!out.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
