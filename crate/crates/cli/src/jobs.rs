//! Verification jobs: one job produces one core report.

use std::time::Instant;

use rayon::prelude::*;
use regver_core::combinatorics::{
    verify_alternating_binomial_range, verify_closed_form_a0, verify_factorial_lemma,
    verify_odd_binomial_poly,
};
use regver_core::deligne::{
    verify_alpha_coefficients, verify_dd_zero, verify_prop51_item2, verify_prop51_item3,
    verify_prop52, verify_takeda, verify_takeda_all,
};
use regver_core::homology::verify_homological_suite;
use regver_core::logform::{
    goncharov_coefficient, verify_goncharov_equals_wang_with, verify_log_differential,
    verify_vanishing_on_diagonal,
};
use regver_core::rational::{self, Rational};
use regver_core::residue::{verify_goncharov_boundary, verify_mixed_boundary, verify_wang_boundary};
use regver_core::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    TmIdentity { m: i64 },
    Takeda { m: i64, i: Option<i64> },
    Alpha { m: i64 },
    Prop52 { m: i64 },
    DdZero { m: i64 },
    Recursion { m: i64, log: bool },
    LogDifferential { m: i64 },
    GoncharovWang { m: i64, perturb: Option<usize> },
    FactorialLemma { max_p: i64 },
    ClosedFormA0 { max_p: i64 },
    Binomial { max_n: i64 },
    WangBoundary { m: i64 },
    GoncharovBoundary { m: i64 },
    MixedBoundary { n: i64, m: i64 },
    Vanishing { m: i64 },
    Homological { count: u64, seed: u64 },
}

/// `c_{j,m}`, doubled at `j = perturb` when fault injection is requested.
fn coefficient(perturb: Option<usize>) -> impl Fn(usize, usize) -> Rational + Sync {
    move |j, m| {
        let c = goncharov_coefficient(j, m);
        if Some(j) == perturb {
            c * rational::int(2)
        } else {
            c
        }
    }
}

impl Job {
    pub fn run(&self) -> Report {
        match *self {
            Job::TmIdentity { m } => verify_prop51_item2(m),
            Job::Takeda { m, i: Some(i) } => verify_takeda(m, i),
            Job::Takeda { m, i: None } => verify_takeda_all(m),
            Job::Alpha { m } => verify_alpha_coefficients(m),
            Job::Prop52 { m } => verify_prop52(m),
            Job::DdZero { m } => verify_dd_zero(m),
            Job::Recursion { m, log } => verify_prop51_item3(m, log),
            Job::LogDifferential { m } => verify_log_differential(m),
            Job::GoncharovWang { m, perturb } => {
                let mut r = verify_goncharov_equals_wang_with(m, &coefficient(perturb));
                if let Some(j) = perturb {
                    r.params.insert("perturbed_j".into(), j as i64);
                }
                r
            }
            Job::FactorialLemma { max_p } => verify_factorial_lemma(max_p),
            Job::ClosedFormA0 { max_p } => verify_closed_form_a0(max_p),
            Job::Binomial { max_n } => {
                let mut r = verify_alternating_binomial_range(max_n);
                for p in 0..=max_n {
                    r.absorb(verify_odd_binomial_poly(p));
                }
                r
            }
            Job::WangBoundary { m } => verify_wang_boundary(m),
            Job::GoncharovBoundary { m } => verify_goncharov_boundary(m),
            Job::MixedBoundary { n, m } => verify_mixed_boundary(n, m),
            Job::Vanishing { m } => verify_vanishing_on_diagonal(m),
            Job::Homological { count, seed } => verify_homological_suite(count, seed),
        }
    }
}

/// A report with its wall-clock time.
pub struct Timed {
    pub report: Report,
    pub millis: u64,
}

/// Runs the jobs on the current rayon pool. Results come back in job order.
pub fn run_all(jobs: &[Job]) -> Vec<Timed> {
    jobs.par_iter()
        .map(|job| {
            let start = Instant::now();
            let report = job.run();
            Timed { report, millis: start.elapsed().as_millis() as u64 }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// The job list of `regver all`.
pub fn all_jobs(level: Level, perturb: Option<usize>) -> Vec<Job> {
    let (max_m, max_tm, max_p, max_boundary, samples) = match level {
        Level::Quick => (4, 4, 30, 4, 20),
        Level::Full => (6, 5, 60, 6, 200),
    };
    let mut jobs = vec![
        Job::FactorialLemma { max_p },
        Job::ClosedFormA0 { max_p },
        Job::Binomial { max_n: max_p },
        Job::Homological { count: samples, seed: 1 },
    ];
    for m in 1..=max_m {
        if m <= max_tm {
            jobs.push(Job::TmIdentity { m });
            jobs.push(Job::Alpha { m });
        }
        jobs.push(Job::Takeda { m, i: None });
        jobs.push(Job::Prop52 { m });
        jobs.push(Job::DdZero { m });
        jobs.push(Job::LogDifferential { m });
        jobs.push(Job::GoncharovWang { m, perturb });
        jobs.push(Job::Vanishing { m });
        if m >= 2 {
            jobs.push(Job::Recursion { m, log: false });
            jobs.push(Job::Recursion { m, log: true });
        }
    }
    for m in 1..=max_boundary {
        jobs.push(Job::WangBoundary { m });
        jobs.push(Job::GoncharovBoundary { m });
    }
    for n in 0..=max_boundary {
        for m in 0..=max_boundary - n {
            if n + m > 0 {
                jobs.push(Job::MixedBoundary { n, m });
            }
        }
    }
    jobs
}
