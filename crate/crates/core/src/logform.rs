//! Specialization of the abstract calculus to rational-function arguments.
//!
//! A symbol `u_k` stands for `𝔤(f_k) = -½ log|f_k|²`, so `∂u_k = -½ df_k/f_k`,
//! `∂̄u_k = -½ df̄_k/f̄_k` and `∂∂̄u_k = 0`. A [`LogFormExpr`] stores the same
//! monomials as a [`FormExpr`] but reads each factor in the log alphabet
//! (`log|f|²`, `df/f`, `df̄/f̄`); coefficients are rescaled accordingly.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::signed_permutations;
use crate::deligne::{build_s, build_t, deligne_diff, diff_payload, symbols, DeligneElement};
use crate::error::{domain, Result};
use crate::form::{dlog_piece, Alphabet, Factor, FactorKind, FormExpr, Style, Symbol};
use crate::rational::{self, Rational};
use crate::report::Report;
use crate::residue::{Ambient, CoordFunction, WedgeElement};

/// A form in the log alphabet. Never contains `∂∂̄` factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogFormExpr(FormExpr);

fn factor_count_scale(expr: &FormExpr, base: &Rational) -> FormExpr {
    let mut out = FormExpr::zero();
    for (factors, coeff) in expr.terms() {
        let k = factors.len() as i32;
        out.add_term(factors.to_vec(), coeff * rational::pow(base, k));
    }
    out
}

impl LogFormExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        LogFormExpr(FormExpr::one())
    }

    /// Reads a form whose factors are already in the log alphabet.
    /// `∂∂̄` factors are dropped.
    pub fn from_log_monomials(expr: FormExpr) -> Self {
        LogFormExpr(expr.drop_del_delbar())
    }

    /// `u ↦ -½ log|f|²`: drops `∂∂̄` terms and scales a monomial with `k`
    /// factors by `(-½)^k`.
    pub fn specialize(expr: &FormExpr) -> Self {
        LogFormExpr(factor_count_scale(&expr.drop_del_delbar(), &rational::rat(-1, 2)))
    }

    /// Inverse of [`LogFormExpr::specialize`] on its image.
    pub fn generalize(&self) -> FormExpr {
        factor_count_scale(&self.0, &rational::int(-2))
    }

    pub fn expr(&self) -> &FormExpr {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LogFormExpr(self.0.scale(c))
    }

    pub fn add(&self, other: &LogFormExpr) -> Self {
        LogFormExpr(&self.0 + &other.0)
    }

    pub fn wedge(&self, other: &LogFormExpr) -> Self {
        LogFormExpr(self.0.wedge(&other.0))
    }

    /// Exterior derivative; `d log|f|² = df/f + df̄/f̄` and `d(df/f) = 0`.
    pub fn d(&self) -> Self {
        LogFormExpr(self.0.d().drop_del_delbar())
    }

    /// Deligne differential of the form viewed in `𝒟^n(·, p)`.
    pub fn deligne_diff(&self, n: i32, p: i32) -> Self {
        let x = DeligneElement::new(self.generalize(), n, p);
        Self::specialize(&deligne_diff(&x).expr)
    }

    /// Substitutes `f := 1` in the given slot.
    pub fn kill_slot(&self, s: Symbol) -> Self {
        LogFormExpr(self.0.substitute_zero(s))
    }

    pub fn render(&self, alphabet: Alphabet, style: Style) -> String {
        self.0.render(alphabet, style)
    }

    pub fn to_json(&self) -> Value {
        self.0.to_json()
    }
}

impl fmt::Display for LogFormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Alphabet::Log, Style::Plain))
    }
}

/// `S_m^i(f_1,…,f_m) = S_m^i(𝔤(f_1),…,𝔤(f_m))`.
pub fn build_s_log(fs: &[Symbol], i: usize) -> Result<LogFormExpr> {
    Ok(LogFormExpr::specialize(&build_s(fs, i)?))
}

/// `T_m(f_1,…,f_m)`; `T_1(f) = -½ log|f|²`.
pub fn build_t_log(fs: &[Symbol]) -> LogFormExpr {
    LogFormExpr::specialize(&build_t(fs).expr)
}

/// `c_{j,m} = 1 / ((2j+1)! (m-2j-1)!)`.
pub fn goncharov_coefficient(j: usize, m: usize) -> Rational {
    let a = crate::combinatorics::factorial((2 * j + 1) as u64);
    let b = crate::combinatorics::factorial((m - 2 * j - 1) as u64);
    Rational::new(BigInt::from(1), a * b)
}

/// Goncharov's `r_{m-1}(f_1,…,f_m)` expanded into the log alphabet.
pub fn build_goncharov(fs: &[Symbol]) -> Result<LogFormExpr> {
    build_goncharov_with(fs, &goncharov_coefficient)
}

/// [`build_goncharov`] with the coefficients `c_{j,m}` supplied by the caller.
pub fn build_goncharov_with(
    fs: &[Symbol],
    coeff: &(dyn Fn(usize, usize) -> Rational + Sync),
) -> Result<LogFormExpr> {
    let m = fs.len();
    if m == 0 {
        return domain("r_{m-1} needs at least one argument");
    }
    let half = rational::rat(1, 2);
    let slot = |k: usize| Symbol(k as u32);
    // Template on slot symbols 0..m, before alternation.
    let mut template = FormExpr::zero();
    for j in (0..).take_while(|j| 2 * j < m) {
        let mut term = FormExpr::factor(FactorKind::Zero, slot(0)).scale(&half);
        for k in 1..m {
            let del = FormExpr::factor(FactorKind::Del, slot(k));
            let delbar = FormExpr::factor(FactorKind::DelBar, slot(k));
            // d log|f| for the next 2j slots, d i arg f for the rest.
            let piece = if k <= 2 * j { del + delbar } else { del - delbar };
            term = term.wedge(&piece.scale(&half));
        }
        template += term.scale(&coeff(j, m));
    }
    template = template.scale(&rational::sign(m as i64));
    let perms = signed_permutations(m);
    let expr = FormExpr::par_sum(perms.par_iter().map(|(perm, odd)| {
        let image = template.relabel(|s| fs[perm[s.0 as usize]]);
        if *odd {
            -image
        } else {
            image
        }
    }));
    Ok(LogFormExpr(expr))
}

pub fn verify_goncharov_equals_wang(m: i64) -> Report {
    verify_goncharov_equals_wang_with(m, &goncharov_coefficient)
}

pub fn verify_goncharov_equals_wang_with(
    m: i64,
    coeff: &(dyn Fn(usize, usize) -> Rational + Sync),
) -> Report {
    let mut report = Report::new("goncharov-wang").param("m", m);
    if m < 1 {
        report.fail(json!({"error": "m must be at least 1", "m": m}));
        return report;
    }
    let fs = symbols(m as usize);
    let wang = build_t_log(&fs);
    match build_goncharov_with(&fs, coeff) {
        Ok(gon) => {
            report.stat("terms", wang.len() as u64);
            report.check(gon == wang, || diff_payload(gon.expr(), wang.expr()));
        }
        Err(e) => report.fail(json!({"error": e.to_string()})),
    }
    report
}

/// `d T_m = ((-1)^m / 2)(∧ df_i/f_i + (-1)^{m-1} ∧ df̄_i/f̄_i)` and
/// `d_D T_m = 0` for rational-function arguments.
pub fn verify_log_differential(m: i64) -> Report {
    let mut report = Report::new("log-differential").param("m", m);
    if m < 1 {
        report.fail(json!({"error": "m must be at least 1", "m": m}));
        return report;
    }
    let mu = m as usize;
    let fs = symbols(mu);
    let t = build_t_log(&fs);
    let lhs = t.d();
    let rhs = LogFormExpr::from_log_monomials(
        (dlog_piece(&fs, mu) + dlog_piece(&fs, 0).scale(&rational::sign(m - 1)))
            .scale(&(rational::sign(m) * rational::rat(1, 2))),
    );
    report.check(lhs == rhs, || diff_payload(lhs.expr(), rhs.expr()));
    let dd = t.deligne_diff(m as i32, m as i32);
    report.check(dd.is_zero(), || diff_payload(dd.expr(), &FormExpr::zero()));
    report
}

/// A log form whose slot `k` (symbol `k + 1`) is bound to a coordinate function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundLogForm {
    pub ambient: Ambient,
    pub slots: Vec<CoordFunction>,
    pub expr: LogFormExpr,
}

impl BoundLogForm {
    /// Rewrites the form in the coordinate alphabet of the ambient using
    /// `log|fg|² = log|f|² + log|g|²` and `d(fg)/fg = df/f + dg/g`. Symbol `k`
    /// of the result is the `k`-th entry of [`Ambient::coordinates`].
    pub fn expand(&self) -> LogFormExpr {
        let images: Vec<Vec<(Symbol, Rational)>> = self
            .slots
            .iter()
            .map(|f| {
                f.exponents()
                    .map(|(c, e)| {
                        let idx = self.ambient.coordinate_index(c).expect("validated slot");
                        (Symbol(idx as u32), rational::int(e))
                    })
                    .collect()
            })
            .collect();
        let expr = self
            .expr
            .expr()
            .substitute_linear(|s| images[s.0 as usize - 1].clone());
        LogFormExpr(expr)
    }

    pub fn render(&self, style: Style) -> String {
        let names = self.ambient.coordinate_names();
        self.expand().render(Alphabet::Coordinates(&names), style)
    }
}

/// `T_k(f_1,…,f_k)` on the given coordinate functions.
pub fn bound_t(ambient: Ambient, fns: &[CoordFunction]) -> Result<BoundLogForm> {
    for f in fns {
        f.validate(&ambient)?;
    }
    Ok(BoundLogForm {
        ambient,
        slots: fns.to_vec(),
        expr: build_t_log(&symbols(fns.len())),
    })
}

/// `M_{n,m} = T_{n+m}(y_1/x_1,…,y_n/x_n, z_1/z_0,…,z_m/z_0)`.
pub fn build_m(n: u32, m: u32) -> BoundLogForm {
    let ambient = Ambient::new(n, m);
    bound_t(ambient, &ambient.basis()).expect("basis functions are valid")
}

/// `W_m = T_m(y_1/x_1,…,y_m/x_m)`.
pub fn build_w(m: u32) -> BoundLogForm {
    build_m(m, 0)
}

/// `G_m = T_m(z_1/z_0,…,z_m/z_0)`.
pub fn build_g(m: u32) -> BoundLogForm {
    build_m(0, m)
}

/// `T` extended multilinearly and alternatingly to `∧^k` of the monomial
/// group, in the coordinate alphabet of the wedge's ambient.
pub fn t_of_wedge(w: &WedgeElement) -> LogFormExpr {
    let mut out = LogFormExpr::zero();
    for (c, tuple) in w.basis_terms() {
        let form = bound_t(w.ambient(), &tuple).expect("basis functions are valid");
        out = out.add(&form.expand().scale(&rational::from_bigint(c)));
    }
    out
}

/// Killing any slot of `W_m` (substituting `y_i/x_i := 1`) gives zero.
pub fn verify_vanishing_on_diagonal(m: i64) -> Report {
    let mut report = Report::new("vanishing").param("m", m);
    if m < 1 {
        report.fail(json!({"error": "m must be at least 1", "m": m}));
        return report;
    }
    let w = build_w(m as u32);
    for i in 1..=m as u32 {
        let killed = w.expr.kill_slot(Symbol(i));
        report.check(killed.is_zero(), || json!({"slot": i, "remainder": killed.to_json()}));
    }
    report.stat("slots", m as u64);
    report
}

/// Does every monomial of `expr` carry exactly one `log|f|²` factor?
pub fn has_single_log_factor(expr: &LogFormExpr) -> bool {
    expr.expr().terms().all(|(factors, _)| {
        factors.iter().filter(|f: &&Factor| f.kind == FactorKind::Zero).count() == 1
    })
}
