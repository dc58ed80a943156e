//! Canonical graded-commutative algebra of formal differential forms.
//!
//! Generators are degree-zero symbols `u` together with `∂u`, `∂̄u` and
//! `∂∂̄u := ∂(∂̄u)`. Since `∂² = ∂̄² = 0` and `∂∂̄ = -∂̄∂`, these four factor
//! kinds are closed under `∂` and `∂̄`.
//!
//! A monomial is a list of factors in canonical order: degree-zero factors
//! first (by symbol), then the remaining factors by `(symbol, kind)`. The
//! Koszul sign of the sorting permutation is absorbed into the coefficient
//! and a monomial with a repeated odd factor is zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Zero,
    Del,
    DelBar,
    DelDelBar,
}

impl FactorKind {
    pub fn degree(self) -> u32 {
        match self {
            FactorKind::Zero => 0,
            FactorKind::Del | FactorKind::DelBar => 1,
            FactorKind::DelDelBar => 2,
        }
    }

    /// Hodge bidegree `(holomorphic, antiholomorphic)`.
    pub fn bidegree(self) -> (u32, u32) {
        match self {
            FactorKind::Zero => (0, 0),
            FactorKind::Del => (1, 0),
            FactorKind::DelBar => (0, 1),
            FactorKind::DelDelBar => (1, 1),
        }
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub symbol: Symbol,
}

impl Factor {
    pub fn new(kind: FactorKind, symbol: Symbol) -> Self {
        Factor { kind, symbol }
    }

    fn sort_key(&self) -> (bool, Symbol, FactorKind) {
        (self.kind != FactorKind::Zero, self.symbol, self.kind)
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Sorts `factors` into canonical order.
///
/// Returns `None` when the monomial vanishes (a repeated odd factor),
/// otherwise the sorted factors and whether the Koszul sign is negative.
pub fn canonicalize(mut factors: Vec<Factor>) -> Option<(Vec<Factor>, bool)> {
    let mut negate = false;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            if factors[j - 1].kind.is_odd() && factors[j].kind.is_odd() {
                negate = !negate;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    if factors
        .windows(2)
        .any(|w| w[0] == w[1] && w[0].kind.is_odd())
    {
        return None;
    }
    Some((factors, negate))
}

pub fn monomial_degree(factors: &[Factor]) -> u32 {
    factors.iter().map(|f| f.kind.degree()).sum()
}

pub fn monomial_bidegree(factors: &[Factor]) -> (u32, u32) {
    factors.iter().fold((0, 0), |(a, b), f| {
        let (x, y) = f.kind.bidegree();
        (a + x, b + y)
    })
}

/// A finite rational combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormExpr {
    terms: BTreeMap<Vec<Factor>, Rational>,
}

impl FormExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_canonical(Vec::new(), c);
        e
    }

    pub fn factor(kind: FactorKind, symbol: Symbol) -> Self {
        Self::monomial(Rational::one(), vec![Factor::new(kind, symbol)])
    }

    /// The degree-zero generator `u_s`.
    pub fn sym(symbol: Symbol) -> Self {
        Self::factor(FactorKind::Zero, symbol)
    }

    pub fn monomial(coeff: Rational, factors: Vec<Factor>) -> Self {
        let mut e = Self::zero();
        e.add_term(factors, coeff);
        e
    }

    /// Adds `coeff · factors`, canonicalising the factor order first.
    pub fn add_term(&mut self, factors: Vec<Factor>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        if let Some((sorted, negate)) = canonicalize(factors) {
            self.add_canonical(sorted, if negate { -coeff } else { coeff });
        }
    }

    fn add_canonical(&mut self, factors: Vec<Factor>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Factor], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, factors: &[Factor]) -> Rational {
        self.terms
            .get(factors)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormExpr {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &FormExpr) -> FormExpr {
        let mut out = FormExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut factors = Vec::with_capacity(ka.len() + kb.len());
                factors.extend_from_slice(ka);
                factors.extend_from_slice(kb);
                out.add_term(factors, ca * cb);
            }
        }
        out
    }

    /// Wedge of all expressions in order; the empty product is `1`.
    pub fn wedge_all<'a>(items: impl IntoIterator<Item = &'a FormExpr>) -> FormExpr {
        items
            .into_iter()
            .fold(FormExpr::one(), |acc, e| acc.wedge(e))
    }

    /// Applies a graded derivation of odd degree given by its action on
    /// single factors (`None` means the factor is sent to zero).
    fn derivation(&self, action: impl Fn(Factor) -> Option<(Factor, bool)>) -> FormExpr {
        let mut out = FormExpr::zero();
        for (factors, coeff) in &self.terms {
            let mut prefix_degree = 0;
            for (pos, f) in factors.iter().enumerate() {
                if let Some((image, negate)) = action(*f) {
                    let mut replaced = factors.clone();
                    replaced[pos] = image;
                    let negative = negate ^ (prefix_degree % 2 == 1);
                    out.add_term(replaced, if negative { -coeff.clone() } else { coeff.clone() });
                }
                prefix_degree += f.kind.degree();
            }
        }
        out
    }

    /// `∂`: `u ↦ ∂u`, `∂̄u ↦ ∂∂̄u`, everything else to zero.
    pub fn del(&self) -> FormExpr {
        self.derivation(|f| match f.kind {
            FactorKind::Zero => Some((Factor::new(FactorKind::Del, f.symbol), false)),
            FactorKind::DelBar => Some((Factor::new(FactorKind::DelDelBar, f.symbol), false)),
            FactorKind::Del | FactorKind::DelDelBar => None,
        })
    }

    /// `∂̄`: `u ↦ ∂̄u`, `∂u ↦ ∂̄∂u = -∂∂̄u`, everything else to zero.
    pub fn delbar(&self) -> FormExpr {
        self.derivation(|f| match f.kind {
            FactorKind::Zero => Some((Factor::new(FactorKind::DelBar, f.symbol), false)),
            FactorKind::Del => Some((Factor::new(FactorKind::DelDelBar, f.symbol), true)),
            FactorKind::DelBar | FactorKind::DelDelBar => None,
        })
    }

    pub fn d(&self) -> FormExpr {
        self.del() + self.delbar()
    }

    /// `∂∂̄`, i.e. `del(delbar(self))`.
    pub fn del_delbar(&self) -> FormExpr {
        self.delbar().del()
    }

    /// Complex conjugation with all symbols real.
    pub fn conjugate(&self) -> FormExpr {
        let mut out = FormExpr::zero();
        for (factors, coeff) in &self.terms {
            let mut negate = false;
            let image = factors
                .iter()
                .map(|f| {
                    let kind = match f.kind {
                        FactorKind::Zero => FactorKind::Zero,
                        FactorKind::Del => FactorKind::DelBar,
                        FactorKind::DelBar => FactorKind::Del,
                        FactorKind::DelDelBar => {
                            negate = !negate;
                            FactorKind::DelDelBar
                        }
                    };
                    Factor::new(kind, f.symbol)
                })
                .collect();
            out.add_term(image, if negate { -coeff.clone() } else { coeff.clone() });
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&[Factor]) -> bool) -> FormExpr {
        FormExpr {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn bidegree_project(&self, hol: u32, antihol: u32) -> FormExpr {
        self.filter(|f| monomial_bidegree(f) == (hol, antihol))
    }

    pub fn degree_project(&self, degree: u32) -> FormExpr {
        self.filter(|f| monomial_degree(f) == degree)
    }

    /// Drops every monomial containing a factor built on `s`.
    pub fn substitute_zero(&self, s: Symbol) -> FormExpr {
        self.filter(|f| f.iter().all(|x| x.symbol != s))
    }

    /// Drops every monomial containing a `∂∂̄` factor.
    pub fn drop_del_delbar(&self) -> FormExpr {
        self.filter(|f| f.iter().all(|x| x.kind != FactorKind::DelDelBar))
    }

    /// Renames symbols (not necessarily injectively) and re-canonicalises.
    pub fn relabel(&self, map: impl Fn(Symbol) -> Symbol) -> FormExpr {
        let mut out = FormExpr::zero();
        for (factors, coeff) in &self.terms {
            let image = factors
                .iter()
                .map(|f| Factor::new(f.kind, map(f.symbol)))
                .collect();
            out.add_term(image, coeff.clone());
        }
        out
    }

    /// Replaces every symbol by a rational combination of symbols, acting on
    /// each factor kind linearly (valid because `∂`, `∂̄` are linear).
    pub fn substitute_linear(&self, map: impl Fn(Symbol) -> Vec<(Symbol, Rational)>) -> FormExpr {
        let mut out = FormExpr::zero();
        for (factors, coeff) in &self.terms {
            let mut partial: Vec<(Vec<Factor>, Rational)> = vec![(Vec::new(), coeff.clone())];
            for f in factors {
                let images = map(f.symbol);
                let mut next = Vec::with_capacity(partial.len() * images.len());
                for (prefix, c) in &partial {
                    for (s, w) in &images {
                        if w.is_zero() {
                            continue;
                        }
                        let mut p = prefix.clone();
                        p.push(Factor::new(f.kind, *s));
                        next.push((p, c * w));
                    }
                }
                partial = next;
            }
            for (fs, c) in partial {
                out.add_term(fs, c);
            }
        }
        out
    }

    /// Set of `(degree, (hol, antihol))` pairs occurring in the expression.
    pub fn gradings(&self) -> Vec<(u32, (u32, u32))> {
        let mut g: Vec<_> = self
            .terms
            .keys()
            .map(|k| (monomial_degree(k), monomial_bidegree(k)))
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self) -> bool {
        let degrees: std::collections::BTreeSet<u32> =
            self.terms.keys().map(|k| monomial_degree(k)).collect();
        degrees.len() <= 1
    }

    /// Sums expressions on the rayon pool.
    pub fn par_sum(parts: impl IndexedParallelIterator<Item = FormExpr>) -> FormExpr {
        parts.reduce(FormExpr::zero, |a, b| a + b)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(factors, coeff)| {
                    json!({
                        "coeff": rational::format(coeff),
                        "factors": factors
                            .iter()
                            .map(|f| json!({"kind": f.kind, "symbol": f.symbol.0}))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<FormExpr> {
        let parse_err = |field: &str, message: &str| Error::Parse {
            field: field.to_string(),
            message: message.to_string(),
        };
        let items = value
            .as_array()
            .ok_or_else(|| parse_err("$", "expected an array of terms"))?;
        let mut out = FormExpr::zero();
        for (i, item) in items.iter().enumerate() {
            let field = format!("[{i}]");
            let coeff = item
                .get("coeff")
                .and_then(Value::as_str)
                .and_then(rational::parse)
                .ok_or_else(|| parse_err(&format!("{field}.coeff"), "expected \"p/q\""))?;
            let factors: Vec<Factor> = item
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err(&format!("{field}.factors"), "expected an array"))?
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let kind: FactorKind = f
                        .get("kind")
                        .cloned()
                        .and_then(|k| serde_json::from_value(k).ok())
                        .ok_or_else(|| {
                            parse_err(&format!("{field}.factors[{j}].kind"), "unknown kind")
                        })?;
                    let symbol = f
                        .get("symbol")
                        .and_then(Value::as_u64)
                        .and_then(|s| u32::try_from(s).ok())
                        .ok_or_else(|| {
                            parse_err(&format!("{field}.factors[{j}].symbol"), "expected u32")
                        })?;
                    Ok(Factor::new(kind, Symbol(symbol)))
                })
                .collect::<Result<_>>()?;
            out.add_term(factors, coeff);
        }
        Ok(out)
    }

    /// Renders with the given alphabet (plain text or LaTeX).
    pub fn render(&self, alphabet: Alphabet, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (factors, coeff)) in self.terms.iter().enumerate() {
            let negative = rational::is_negative(coeff);
            let magnitude = if negative { -coeff.clone() } else { coeff.clone() };
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let body: Vec<String> = factors
                .iter()
                .map(|f| alphabet.factor_name(*f, style))
                .collect();
            let is_unit = magnitude.is_one();
            if !is_unit || body.is_empty() {
                out.push_str(&style.coefficient(&magnitude));
                if !body.is_empty() {
                    out.push_str(style.times());
                }
            }
            out.push_str(&join_factors(factors, &body, style));
        }
        out
    }
}

fn join_factors(factors: &[Factor], names: &[String], style: Style) -> String {
    let mut s = String::new();
    for (i, (f, name)) in factors.iter().zip(names).enumerate() {
        if i > 0 {
            let prev_zero = factors[i - 1].kind == FactorKind::Zero;
            if prev_zero || f.kind == FactorKind::Zero {
                s.push_str(style.times());
            } else {
                s.push_str(style.wedge());
            }
        }
        s.push_str(name);
    }
    s
}

/// How symbols are read when rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet<'a> {
    /// `u_k`, `∂u_k`, `∂̄u_k`, `∂∂̄u_k`.
    Abstract,
    /// `log|f_k|²`, `df_k/f_k`, `df̄_k/f̄_k`.
    Log,
    /// Like [`Alphabet::Log`] but with coordinate names from the list.
    Coordinates(&'a [String]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
}

impl Style {
    fn times(self) -> &'static str {
        match self {
            Style::Plain => " ",
            Style::Latex => "\\,",
        }
    }

    fn wedge(self) -> &'static str {
        match self {
            Style::Plain => " ∧ ",
            Style::Latex => "\\wedge ",
        }
    }

    fn coefficient(self, c: &Rational) -> String {
        match self {
            Style::Plain => rational::format(c),
            Style::Latex if c.is_integer() => c.numer().to_string(),
            Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
        }
    }
}

impl Alphabet<'_> {
    fn factor_name(&self, f: Factor, style: Style) -> String {
        let id = f.symbol.0;
        match (self, style) {
            (Alphabet::Abstract, Style::Plain) => {
                let prefix = ["", "∂", "∂̄", "∂∂̄"][f.kind as usize];
                format!("{prefix}u{id}")
            }
            (Alphabet::Abstract, Style::Latex) => {
                let prefix = ["", "\\partial ", "\\bar\\partial ", "\\partial\\bar\\partial "]
                    [f.kind as usize];
                format!("{prefix}u_{{{id}}}")
            }
            (Alphabet::Log, _) => log_name(&format!("f{id}"), &format!("f_{{{id}}}"), f.kind, style),
            (Alphabet::Coordinates(names), _) => {
                let name = names.get(id as usize).map(String::as_str).unwrap_or("?");
                log_name(name, name, f.kind, style)
            }
        }
    }
}

fn log_name(plain: &str, latex: &str, kind: FactorKind, style: Style) -> String {
    match (kind, style) {
        (FactorKind::Zero, Style::Plain) => format!("log|{plain}|²"),
        (FactorKind::Del, Style::Plain) => format!("d{plain}/{plain}"),
        (FactorKind::DelBar, Style::Plain) => format!("d{plain}̄/{plain}̄"),
        (FactorKind::DelDelBar, Style::Plain) => format!("∂∂̄log|{plain}|²"),
        (FactorKind::Zero, Style::Latex) => format!("\\log|{latex}|^2"),
        (FactorKind::Del, Style::Latex) => format!("\\frac{{d{latex}}}{{{latex}}}"),
        (FactorKind::DelBar, Style::Latex) => {
            format!("\\frac{{d\\bar{{{latex}}}}}{{\\bar{{{latex}}}}}")
        }
        (FactorKind::DelDelBar, Style::Latex) => {
            format!("\\partial\\bar\\partial\\log|{latex}|^2")
        }
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Alphabet::Abstract, Style::Plain))
    }
}

impl AddAssign<&FormExpr> for FormExpr {
    fn add_assign(&mut self, rhs: &FormExpr) {
        for (k, v) in &rhs.terms {
            self.add_canonical(k.clone(), v.clone());
        }
    }
}

impl AddAssign for FormExpr {
    fn add_assign(&mut self, rhs: FormExpr) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (k, v) in rhs.terms {
            self.add_canonical(k, v);
        }
    }
}

impl SubAssign<&FormExpr> for FormExpr {
    fn sub_assign(&mut self, rhs: &FormExpr) {
        for (k, v) in &rhs.terms {
            self.add_canonical(k.clone(), -v.clone());
        }
    }
}

impl Add for FormExpr {
    type Output = FormExpr;
    fn add(mut self, rhs: FormExpr) -> FormExpr {
        self += rhs;
        self
    }
}

impl Sub for FormExpr {
    type Output = FormExpr;
    fn sub(mut self, rhs: FormExpr) -> FormExpr {
        self -= &rhs;
        self
    }
}

impl Add for &FormExpr {
    type Output = FormExpr;
    fn add(self, rhs: &FormExpr) -> FormExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &FormExpr {
    type Output = FormExpr;
    fn sub(self, rhs: &FormExpr) -> FormExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for FormExpr {
    type Output = FormExpr;
    fn neg(mut self) -> FormExpr {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Neg for &FormExpr {
    type Output = FormExpr;
    fn neg(self) -> FormExpr {
        -self.clone()
    }
}

/// `d(u₁) ∧ … ∧ d(u_n)` restricted to bidegree `(i, n - i)`, written
/// `(u₁,…,u_n)^{(i)}`.
///
/// Computed directly as the sum over `i`-subsets of slots receiving `∂`
/// (the rest receive `∂̄`), which avoids expanding all `2^n` terms.
pub fn dlog_piece(us: &[Symbol], i: usize) -> FormExpr {
    let n = us.len();
    let mut out = FormExpr::zero();
    if i > n {
        return out;
    }
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let factors = us
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let kind = if mask & (1 << k) != 0 {
                    FactorKind::Del
                } else {
                    FactorKind::DelBar
                };
                Factor::new(kind, s)
            })
            .collect();
        out.add_term(factors, Rational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn u(k: u32) -> FormExpr {
        FormExpr::sym(Symbol(k))
    }
    fn del(k: u32) -> FormExpr {
        FormExpr::factor(FactorKind::Del, Symbol(k))
    }
    fn delbar(k: u32) -> FormExpr {
        FormExpr::factor(FactorKind::DelBar, Symbol(k))
    }
    fn ddb(k: u32) -> FormExpr {
        FormExpr::factor(FactorKind::DelDelBar, Symbol(k))
    }

    #[test]
    fn wedge_examples() {
        assert!(del(1).wedge(&del(1)).is_zero());
        assert_eq!(del(2).wedge(&del(1)), -del(1).wedge(&del(2)));
        let w = u(1).wedge(&del(2));
        assert_eq!(w.len(), 1);
        let (factors, coeff) = w.terms().next().unwrap();
        assert_eq!(coeff, &int(1));
        assert_eq!(factors[0], Factor::new(FactorKind::Zero, Symbol(1)));
        // Degree-zero factors go first regardless of symbol order.
        assert_eq!(del(1).wedge(&u(2)), u(2).wedge(&del(1)));
        // Even factors may repeat.
        assert_eq!(u(1).wedge(&u(1)).len(), 1);
        assert_eq!(ddb(1).wedge(&ddb(1)).len(), 1);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(u(1).del(), del(1));
        assert_eq!(u(1).del().delbar(), -ddb(1));
        assert_eq!(u(1).delbar().del(), ddb(1));
        assert_eq!(u(1).del_delbar(), ddb(1));
        // ∂(u₁ ∂̄u₂) = ∂u₁ ∧ ∂̄u₂ + u₁ ∂∂̄u₂
        let expr = u(1).wedge(&delbar(2));
        assert_eq!(expr.del(), del(1).wedge(&delbar(2)) + u(1).wedge(&ddb(2)));
    }

    #[test]
    fn exterior_derivative_examples() {
        assert_eq!(u(1).d(), del(1) + delbar(1));
        assert!(u(1).d().d().is_zero());
        // d(u₁ ∂u₂) = ∂u₁∂u₂ + ∂̄u₁∂u₂ - u₁ ∂∂̄u₂ (since ∂̄∂u₂ = -∂∂̄u₂).
        let expr = u(1).wedge(&del(2));
        let expected = del(1).wedge(&del(2)) + delbar(1).wedge(&del(2)) - u(1).wedge(&ddb(2));
        assert_eq!(expr.d(), expected);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(del(1).conjugate(), delbar(1));
        assert_eq!(u(1).conjugate(), u(1));
        assert_eq!(ddb(1).conjugate(), -ddb(1));
        let w = del(1).wedge(&delbar(2));
        assert_eq!(w.conjugate(), -del(2).wedge(&delbar(1)));
    }

    #[test]
    fn projection_examples() {
        assert_eq!((del(1) + delbar(1)).bidegree_project(1, 0), del(1));
        let w = u(1).wedge(&del(2));
        assert_eq!(w.bidegree_project(1, 0), w);
        let mixed = u(1).d().wedge(&u(2).d()).bidegree_project(1, 1);
        assert_eq!(mixed, dlog_piece(&[Symbol(1), Symbol(2)], 1));
    }

    #[test]
    fn dlog_piece_examples() {
        assert_eq!(dlog_piece(&[Symbol(1)], 1), del(1));
        assert_eq!(dlog_piece(&[Symbol(1)], 0), delbar(1));
        assert_eq!(dlog_piece(&[Symbol(1), Symbol(2)], 2), del(1).wedge(&del(2)));
        assert_eq!(dlog_piece(&[Symbol(1), Symbol(2)], 0), delbar(1).wedge(&delbar(2)));
        assert!(dlog_piece(&[Symbol(1)], 2).is_zero());
    }

    #[test]
    fn substitute_zero_examples() {
        assert!(u(1).wedge(&del(2)).substitute_zero(Symbol(1)).is_zero());
        let keep = u(2).wedge(&del(3));
        assert_eq!(keep.substitute_zero(Symbol(1)), keep);
    }

    #[test]
    fn linear_substitution() {
        // u1 ↦ u2 + u3 in ∂u1 ∧ ∂u2 gives ∂u3 ∧ ∂u2.
        let e = del(1).wedge(&del(2));
        let sub = e.substitute_linear(|s| {
            if s == Symbol(1) {
                vec![(Symbol(2), int(1)), (Symbol(3), int(1))]
            } else {
                vec![(s, int(1))]
            }
        });
        assert_eq!(sub, del(3).wedge(&del(2)));
    }

    #[test]
    fn json_round_trip_and_render() {
        let e = u(1).wedge(&del(2)).scale(&crate::rational::rat(-3, 2)) + delbar(1);
        let back = FormExpr::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        assert_eq!(FormExpr::zero().to_string(), "0");
        assert_eq!(del(1).to_string(), "∂u1");
        assert_eq!(
            (u(1).wedge(&del(2)) - delbar(1)).to_string(),
            "u1 ∂u2 - ∂̄u1"
        );
        assert_eq!(
            u(1).wedge(&del(2)).render(Alphabet::Abstract, Style::Latex),
            "u_{1}\\,\\partial u_{2}"
        );
    }

    #[test]
    fn from_json_reports_field() {
        let bad = json!([{"coeff": "1", "factors": [{"kind": "nope", "symbol": 1}]}]);
        match FormExpr::from_json(&bad) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "[0].factors[0].kind"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
