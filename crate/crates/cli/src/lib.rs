//! The `regver` command line: runs verification suites and prints a JSON
//! report, expands forms as JSON or LaTeX, and computes homology of complexes
//! read from JSON files.
//!
//! Exit codes: `0` everything passed, `1` a verification failed (the report
//! carries a counterexample), `2` usage or input error.

pub mod jobs;
pub mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jobs::{all_jobs, run_all, Job, Level};
use output::{verification_report, SCHEMA_VERSION};
use regver_core::deligne::{build_t, symbols};
use regver_core::form::{Alphabet, Style};
use regver_core::homology::io::{complex_from_json, complex_to_json, cubical_from_json, parse_json};
use regver_core::homology::{decomposition_check, ChainComplex};
use regver_core::logform::{build_g, build_goncharov, build_m, build_w, BoundLogForm};
use regver_core::{Error, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "regver", version, about = "Exact verifier for regulator-form identities")]
struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification suite.
    #[command(subcommand)]
    Verify(Verify),
    /// Print a form as JSON or LaTeX.
    Expand(ExpandArgs),
    /// Homology of a complex given as JSON.
    Homology {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
    },
    /// Validate complex or cubical-group files.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Run every suite at the given bounds.
    All {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        /// Double the coefficient c_{j,m} of Goncharov's form (fault injection).
        #[arg(long, value_name = "J")]
        perturb_coefficient: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct M {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// T_m equals the iterated product C_m.
    TmIdentity(M),
    /// Takeda's identities for one i or all 1 ≤ i ≤ m.
    Takeda {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
    },
    /// The raw differential of T_m.
    Prop52(M),
    /// The recursion for d_D T_m, optionally with ∂∂̄ = 0.
    Recursion {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        log: bool,
    },
    /// dT_m and d_D T_m for rational-function arguments.
    LogDifferential(M),
    /// Goncharov's form equals Wang's form.
    GoncharovWang {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        /// Double the coefficient c_{j,m} (fault injection).
        #[arg(long, value_name = "J")]
        perturb_coefficient: Option<usize>,
    },
    /// The factorial-sum lemma for 0 ≤ q ≤ p ≤ max-p and its closed form at q = 0.
    FactorialLemma {
        #[arg(long, allow_negative_numbers = true)]
        max_p: i64,
    },
    /// Binomial identities up to max-n.
    Binomial {
        #[arg(long, allow_negative_numbers = true)]
        max_n: i64,
    },
    /// Boundary of Wang's currents at the residue level.
    WangBoundary(M),
    /// Boundary of Goncharov's currents at the residue level.
    GoncharovBoundary(M),
    /// Boundary of M_{n,m} at the residue level.
    MixedBoundary {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// W_m vanishes when any argument is set to 1.
    Vanishing(M),
    /// Randomised homological checks.
    Homological {
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Tm,
    Wm,
    Gm,
    Mnm,
    Goncharov,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(value_enum)]
    form: Form,
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    /// Number of P¹ factors (mnm only).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    n: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// Check that a file describes a valid complex or cubical group.
    Check {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
}

/// A usage or input error: message for stderr, exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

/// Runs `regver` with the given arguments (the first is the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run_with(args, &mut stdout, &mut stderr)
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut log = Vec::new();
    let result = pool.install(|| execute(&cli.command, &mut log));
    let _ = stderr.write_all(&log);
    match result {
        Ok((text, code)) => {
            if let Err(msg) = emit(cli.out.as_deref(), &text, stdout) {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("REGVER_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("REGVER_THREADS must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(command: &Command, stderr: &mut Vec<u8>) -> Result<(String, i32), Usage> {
    match command {
        Command::Verify(v) => {
            let job = verify_job(v)?;
            Ok(run_jobs(&format!("verify {}", verify_name(v)), &[job], stderr))
        }
        Command::All { level, perturb_coefficient } => {
            let jobs = all_jobs(*level, *perturb_coefficient);
            let name = match level {
                Level::Quick => "all --level quick",
                Level::Full => "all --level full",
            };
            Ok(run_jobs(name, &jobs, stderr))
        }
        Command::Expand(args) => expand(args),
        Command::Homology { input, degree } => homology(input, *degree),
        Command::Complex(ComplexCmd::Check { input }) => complex_check(input, stderr),
    }
}

fn run_jobs(command: &str, jobs: &[Job], stderr: &mut Vec<u8>) -> (String, i32) {
    let results = run_all(jobs);
    let report = verification_report(command, &results);
    for line in output::summary_lines(&report) {
        let _ = writeln!(stderr, "{line}");
    }
    let code = if report["status"] == "pass" { EXIT_PASS } else { EXIT_FAIL };
    (pretty(&report), code)
}

fn verify_name(v: &Verify) -> &'static str {
    match v {
        Verify::TmIdentity(_) => "tm-identity",
        Verify::Takeda { .. } => "takeda",
        Verify::Prop52(_) => "prop52",
        Verify::Recursion { .. } => "recursion",
        Verify::LogDifferential(_) => "log-differential",
        Verify::GoncharovWang { .. } => "goncharov-wang",
        Verify::FactorialLemma { .. } => "factorial-lemma",
        Verify::Binomial { .. } => "binomial",
        Verify::WangBoundary(_) => "wang-boundary",
        Verify::GoncharovBoundary(_) => "goncharov-boundary",
        Verify::MixedBoundary { .. } => "mixed-boundary",
        Verify::Vanishing(_) => "vanishing",
        Verify::Homological { .. } => "homological",
    }
}

fn need(ok: bool, msg: &str) -> Result<(), Usage> {
    if ok {
        Ok(())
    } else {
        Err(Usage(msg.to_string()))
    }
}

/// Bounds keep single runs within desk-scale time and memory.
const MAX_M: i64 = 8;

fn need_m(m: i64, min: i64) -> Result<(), Usage> {
    need(m >= min, &format!("--m must be at least {min}, got {m}"))?;
    need(m <= MAX_M, &format!("--m must be at most {MAX_M}, got {m}"))
}

fn verify_job(v: &Verify) -> Result<Job, Usage> {
    Ok(match *v {
        Verify::TmIdentity(M { m }) => {
            need_m(m, 1)?;
            Job::TmIdentity { m }
        }
        Verify::Takeda { m, i } => {
            need_m(m, 1)?;
            if let Some(i) = i {
                need((1..=m).contains(&i), &format!("--i must satisfy 1 <= i <= m, got {i}"))?;
            }
            Job::Takeda { m, i }
        }
        Verify::Prop52(M { m }) => {
            need_m(m, 1)?;
            Job::Prop52 { m }
        }
        Verify::Recursion { m, log } => {
            need_m(m, 2)?;
            Job::Recursion { m, log }
        }
        Verify::LogDifferential(M { m }) => {
            need_m(m, 1)?;
            Job::LogDifferential { m }
        }
        Verify::GoncharovWang { m, perturb_coefficient } => {
            need_m(m, 1)?;
            Job::GoncharovWang { m, perturb: perturb_coefficient }
        }
        Verify::FactorialLemma { max_p } => {
            need((0..=400).contains(&max_p), "--max-p must lie in 0..=400")?;
            Job::FactorialLemma { max_p }
        }
        Verify::Binomial { max_n } => {
            need((0..=400).contains(&max_n), "--max-n must lie in 0..=400")?;
            Job::Binomial { max_n }
        }
        Verify::WangBoundary(M { m }) => {
            need_m(m, 1)?;
            Job::WangBoundary { m }
        }
        Verify::GoncharovBoundary(M { m }) => {
            need_m(m, 1)?;
            Job::GoncharovBoundary { m }
        }
        Verify::MixedBoundary { n, m } => {
            need(n >= 0 && m >= 0 && n + m >= 1, "need --n, --m >= 0 with n + m >= 1")?;
            need(n + m <= MAX_M, &format!("n + m must be at most {MAX_M}"))?;
            Job::MixedBoundary { n, m }
        }
        Verify::Vanishing(M { m }) => {
            need_m(m, 1)?;
            Job::Vanishing { m }
        }
        Verify::Homological { count, seed } => {
            need(count >= 1, "--count must be positive")?;
            Job::Homological { count, seed }
        }
    })
}

fn expand(args: &ExpandArgs) -> Result<(String, i32), Usage> {
    let (m, n) = (args.m, args.n);
    need((0..=MAX_M).contains(&m), &format!("--m must lie in 0..={MAX_M}, got {m}"))?;
    need(n >= 0 && n + m <= MAX_M, &format!("--n must be >= 0 with n + m <= {MAX_M}"))?;
    let style = match args.format {
        Format::Json => Style::Plain,
        Format::Latex => Style::Latex,
    };
    let (name, params, terms, text, extra) = match args.form {
        Form::Tm => {
            let t = build_t(&symbols(m as usize));
            let v = json!({"deligne_degree": [t.n, t.p]});
            ("tm", json!({"m": m}), t.expr.to_json(), t.expr.render(Alphabet::Abstract, style), v)
        }
        Form::Goncharov => {
            need(m >= 1, "goncharov needs --m >= 1")?;
            let g = build_goncharov(&symbols(m as usize))?;
            ("goncharov", json!({"m": m}), g.to_json(), g.render(Alphabet::Log, style), Value::Null)
        }
        Form::Wm | Form::Gm | Form::Mnm => {
            let (name, bound, params) = match args.form {
                Form::Wm => ("wm", build_w(m as u32), json!({"m": m})),
                Form::Gm => ("gm", build_g(m as u32), json!({"m": m})),
                _ => ("mnm", build_m(n as u32, m as u32), json!({"n": n, "m": m})),
            };
            let extra = bound_metadata(&bound);
            let expanded = bound.expand();
            (name, params, expanded.to_json(), bound.render(style), extra)
        }
    };
    let out = match args.format {
        Format::Latex => format!("{text}\n"),
        Format::Json => {
            let mut v = json!({
                "schema_version": SCHEMA_VERSION,
                "form": name,
                "params": params,
                "terms": terms,
                "text": text,
            });
            if let Value::Object(extra) = extra {
                for (k, x) in extra {
                    v[k] = x;
                }
            }
            pretty(&v)
        }
    };
    Ok((out, EXIT_PASS))
}

fn bound_metadata(b: &BoundLogForm) -> Value {
    json!({
        "coordinates": b.ambient.coordinate_names(),
        "arguments": b.slots.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

fn read_json(path: &Path) -> Result<Value, Usage> {
    let text = fs::read_to_string(path)
        .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn homology(input: &Path, degree: Option<i64>) -> Result<(String, i32), Usage> {
    let v = read_json(input)?;
    let c = complex_from_json(&v).map_err(|e| Usage(format!("{}: {e}", input.display())))?;
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => (c.lo()..=c.hi()).collect(),
    };
    let groups: Vec<Value> = degrees
        .iter()
        .map(|&n| {
            let h = c.homology(n);
            json!({
                "degree": n,
                "rank": h.rank,
                "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = json!({"schema_version": SCHEMA_VERSION, "homology": groups});
    Ok((pretty(&out), EXIT_PASS))
}

/// Structural errors (bad JSON, wrong shapes, missing keys) are input errors;
/// a well-formed file whose data violate `d² = 0` or the cubical identities
/// is a verification failure.
fn complex_check(input: &Path, stderr: &mut Vec<u8>) -> Result<(String, i32), Usage> {
    let v = read_json(input)?;
    let is_cubical = v.get("faces").is_some();
    let mut report = Report::new(if is_cubical { "cubical-check" } else { "complex-check" });
    let parsed = if is_cubical {
        cubical_from_json(&v).map(|c| {
            report.absorb(decomposition_check(&c));
            report.stat("levels", c.ranks().len() as u64);
        })
    } else {
        complex_from_json(&v).map(|c: ChainComplex| {
            let round_trip = complex_to_json(&c) == v;
            report.check(c.is_complex(), || json!({"error": "d² ≠ 0"}));
            report.stat("total_rank", c.total_rank() as u64);
            report.stat("canonical_form", round_trip as u64);
        })
    };
    match parsed {
        Ok(()) => report.check(true, || Value::Null),
        Err(e @ (Error::InvalidComplex(_) | Error::InvalidCubical(_))) => {
            report.fail(json!({"file": input.display().to_string(), "error": e.to_string()}));
            false
        }
        Err(e) => return Err(Usage(format!("{}: {e}", input.display()))),
    };
    let timed = [jobs::Timed { report, millis: 0 }];
    let out = verification_report("complex check", &timed);
    for line in output::summary_lines(&out) {
        let _ = writeln!(stderr, "{line}");
    }
    let code = if out["status"] == "pass" { EXIT_PASS } else { EXIT_FAIL };
    Ok((pretty(&out), code))
}
