//! Residues of wedges of degree-zero coordinate monomials on `(P¹)ⁿ × Pᵐ`.
//!
//! The group of degree-zero monomials in the homogeneous coordinates is a
//! free abelian group with basis `y_i/x_i` (`i = 1..n`) and `z_k/z_0`
//! (`k = 1..m`). A [`WedgeElement`] stores an element of its `k`-th exterior
//! power in the induced basis, so equality is exact.
//!
//! The residue along a coordinate divisor `{c = 0}` brings the valuation
//! vector of a tuple `f_1 ∧ … ∧ f_k` to the form `(g, 0, …, 0)` using column
//! operations (`f_a ↦ f_a · f_b^q`, harmless because `f ∧ f = 0`) and slot
//! swaps (each contributing `-1`), and returns `g · (f_2 ∧ … ∧ f_k)|_{c=0}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::homology::IntegerMatrix;
use crate::logform::{build_m, t_of_wedge};
use crate::rational;
use crate::report::Report;

/// A homogeneous coordinate. `X`/`Y` indices are 1-based (one pair per `P¹`
/// factor), `Z` indices run over `0..=m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coordinate {
    X(u32),
    Y(u32),
    Z(u32),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::X(i) => write!(f, "x{i}"),
            Coordinate::Y(i) => write!(f, "y{i}"),
            Coordinate::Z(i) => write!(f, "z{i}"),
        }
    }
}

/// `(P¹)ⁿ × Pᵐ`; `m = 0` means the projective-space factor is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    pub n: u32,
    pub m: u32,
}

impl Ambient {
    pub fn new(n: u32, m: u32) -> Self {
        Ambient { n, m }
    }

    /// `x₁, y₁, …, x_n, y_n, z₀, …, z_m`.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            out.push(Coordinate::X(i));
            out.push(Coordinate::Y(i));
        }
        if self.m > 0 {
            out.extend((0..=self.m).map(Coordinate::Z));
        }
        out
    }

    pub fn contains(&self, c: Coordinate) -> bool {
        match c {
            Coordinate::X(i) | Coordinate::Y(i) => (1..=self.n).contains(&i),
            Coordinate::Z(k) => self.m > 0 && k <= self.m,
        }
    }

    pub fn coordinate_index(&self, c: Coordinate) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        Some(match c {
            Coordinate::X(i) => 2 * (i as usize - 1),
            Coordinate::Y(i) => 2 * (i as usize - 1) + 1,
            Coordinate::Z(k) => 2 * self.n as usize + k as usize,
        })
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        self.coordinates().iter().map(|c| c.to_string()).collect()
    }

    /// Rank of the group of degree-zero monomials.
    pub fn rank(&self) -> usize {
        (self.n + self.m) as usize
    }

    /// The basis `y_i/x_i`, then `z_k/z_0`.
    pub fn basis(&self) -> Vec<CoordFunction> {
        let mut out: Vec<CoordFunction> = (1..=self.n)
            .map(|i| CoordFunction::ratio(Coordinate::Y(i), Coordinate::X(i)))
            .collect();
        out.extend((1..=self.m).map(|k| CoordFunction::ratio(Coordinate::Z(k), Coordinate::Z(0))));
        out
    }

    pub fn divisors(&self) -> Vec<FaceDivisor> {
        self.coordinates()
            .into_iter()
            .map(|c| FaceDivisor { ambient: *self, coordinate: c })
            .collect()
    }
}

/// A degree-zero monomial `∏ c^{e_c}` in the homogeneous coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordFunction {
    exponents: BTreeMap<Coordinate, i64>,
}

impl CoordFunction {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn ratio(num: Coordinate, den: Coordinate) -> Self {
        Self::from_exponents([(num, 1), (den, -1)])
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (Coordinate, i64)>) -> Self {
        let mut f = Self::one();
        for (c, e) in pairs {
            *f.exponents.entry(c).or_insert(0) += e;
        }
        f.exponents.retain(|_, e| *e != 0);
        f
    }

    pub fn exponent(&self, c: Coordinate) -> i64 {
        self.exponents.get(&c).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Coordinate, i64)> + '_ {
        self.exponents.iter().map(|(&c, &e)| (c, e))
    }

    pub fn mul(&self, other: &CoordFunction) -> CoordFunction {
        Self::from_exponents(self.exponents().chain(other.exponents()))
    }

    pub fn pow(&self, k: i64) -> CoordFunction {
        Self::from_exponents(self.exponents().map(|(c, e)| (c, e * k)))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Checks that every coordinate lives in `ambient` and that each
    /// homogeneous block has total exponent zero.
    pub fn validate(&self, ambient: &Ambient) -> Result<()> {
        let mut block_sums: BTreeMap<Option<u32>, i64> = BTreeMap::new();
        for (c, e) in self.exponents() {
            if !ambient.contains(c) {
                return domain(format!("coordinate {c} is not in {ambient:?}"));
            }
            let block = match c {
                Coordinate::X(i) | Coordinate::Y(i) => Some(i),
                Coordinate::Z(_) => None,
            };
            *block_sums.entry(block).or_insert(0) += e;
        }
        if let Some((block, sum)) = block_sums.iter().find(|(_, s)| **s != 0) {
            return domain(format!("block {block:?} of {self} has total exponent {sum}"));
        }
        Ok(())
    }

    /// Coordinates in the basis of [`Ambient::basis`].
    pub fn basis_coordinates(&self, ambient: &Ambient) -> Vec<i64> {
        let mut v: Vec<i64> = (1..=ambient.n).map(|i| self.exponent(Coordinate::Y(i))).collect();
        v.extend((1..=ambient.m).map(|k| self.exponent(Coordinate::Z(k))));
        v
    }
}

impl fmt::Display for CoordFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .exponents()
            .filter(|(_, e)| *e > 0)
            .map(|(c, e)| if e == 1 { c.to_string() } else { format!("{c}^{e}") })
            .collect();
        let den: Vec<String> = self
            .exponents()
            .filter(|(_, e)| *e < 0)
            .map(|(c, e)| if e == -1 { c.to_string() } else { format!("{c}^{}", -e) })
            .collect();
        let num = if num.is_empty() { "1".to_string() } else { num.join("") };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", den.join(""))
        }
    }
}

/// The coordinate divisor `{coordinate = 0}` of `ambient`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceDivisor {
    pub ambient: Ambient,
    pub coordinate: Coordinate,
}

impl FaceDivisor {
    pub fn new(ambient: Ambient, coordinate: Coordinate) -> Result<Self> {
        if !ambient.contains(coordinate) {
            return domain(format!("{coordinate} is not a coordinate of {ambient:?}"));
        }
        Ok(FaceDivisor { ambient, coordinate })
    }

    /// The divisor as an ambient space: a `P¹` block collapses to a point and
    /// `Pᵐ` becomes `Pᵐ⁻¹`.
    pub fn target(&self) -> Ambient {
        match self.coordinate {
            Coordinate::X(_) | Coordinate::Y(_) => Ambient::new(self.ambient.n - 1, self.ambient.m),
            Coordinate::Z(_) => Ambient::new(self.ambient.n, self.ambient.m - 1),
        }
    }

    /// The name of another coordinate on the divisor, if it survives.
    pub fn transport(&self, c: Coordinate) -> Option<Coordinate> {
        let target = self.target();
        let image = match (self.coordinate, c) {
            (Coordinate::X(i) | Coordinate::Y(i), Coordinate::X(k) | Coordinate::Y(k)) => {
                if k == i {
                    return None;
                }
                let k = if k > i { k - 1 } else { k };
                match c {
                    Coordinate::X(_) => Coordinate::X(k),
                    _ => Coordinate::Y(k),
                }
            }
            (Coordinate::Z(j), Coordinate::Z(k)) => {
                if k == j {
                    return None;
                }
                Coordinate::Z(if k > j { k - 1 } else { k })
            }
            _ => c,
        };
        target.contains(image).then_some(image)
    }
}

pub fn valuation(f: &CoordFunction, d: &FaceDivisor) -> i64 {
    f.exponent(d.coordinate)
}

/// Restriction of a unit along `d` to the divisor's ambient.
pub fn restrict(f: &CoordFunction, d: &FaceDivisor) -> Result<CoordFunction> {
    let v = valuation(f, d);
    if v != 0 {
        return Err(Error::NonUnit(format!(
            "{f} has valuation {v} along {{{} = 0}}",
            d.coordinate
        )));
    }
    let mut pairs = Vec::new();
    for (c, e) in f.exponents() {
        match d.transport(c) {
            Some(image) => pairs.push((image, e)),
            // A collapsed block contributes a constant; block sums make this zero.
            None => debug_assert!(
                matches!(d.coordinate, Coordinate::X(_) | Coordinate::Y(_) | Coordinate::Z(_))
            ),
        }
    }
    let g = CoordFunction::from_exponents(pairs);
    g.validate(&d.target())?;
    Ok(g)
}

/// An element of `∧^degree` of the group of degree-zero monomials, stored in
/// the basis `b_{i₁} ∧ … ∧ b_{i_k}` (`i₁ < … < i_k`) with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    ambient: Ambient,
    degree: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl WedgeElement {
    pub fn zero(ambient: Ambient, degree: usize) -> Self {
        WedgeElement { ambient, degree, terms: BTreeMap::new() }
    }

    /// The integer `k ∈ ∧⁰ = ℤ`.
    pub fn integer(ambient: Ambient, k: i64) -> Self {
        let mut w = Self::zero(ambient, 0);
        w.add_basis(Vec::new(), BigInt::from(k));
        w
    }

    /// `f_1 ∧ … ∧ f_k` expanded in the basis by maximal minors.
    pub fn from_tuple(ambient: Ambient, tuple: &[CoordFunction]) -> Result<Self> {
        for f in tuple {
            f.validate(&ambient)?;
        }
        let k = tuple.len();
        let rows: Vec<Vec<i64>> = tuple.iter().map(|f| f.basis_coordinates(&ambient)).collect();
        let mut w = Self::zero(ambient, k);
        for cols in combinations(ambient.rank(), k) {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect())
                .collect();
            w.add_basis(cols, IntegerMatrix::from_big_rows(k, minor).determinant());
        }
        Ok(w)
    }

    fn add_basis(&mut self, key: Vec<usize>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, basis tuple)` pairs.
    pub fn basis_terms(&self) -> Vec<(BigInt, Vec<CoordFunction>)> {
        let basis = self.ambient.basis();
        self.terms
            .iter()
            .map(|(key, c)| (c.clone(), key.iter().map(|&i| basis[i].clone()).collect()))
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut w = Self::zero(self.ambient, self.degree);
        for (key, c) in &self.terms {
            w.add_basis(key.clone(), c * k);
        }
        w
    }

    pub fn add(&self, other: &WedgeElement) -> Result<Self> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return domain("adding wedge elements of different shapes");
        }
        let mut w = self.clone();
        for (key, c) in &other.terms {
            w.add_basis(key.clone(), c.clone());
        }
        Ok(w)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn to_json(&self) -> Value {
        let basis = self.ambient.basis();
        json!({
            "ambient": self.ambient,
            "degree": self.degree,
            "terms": self.terms.iter().map(|(key, c)| json!({
                "coeff": c.to_string(),
                "wedge": key.iter().map(|&i| basis[i].to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .basis_terms()
            .into_iter()
            .map(|(c, tuple)| {
                let body: Vec<String> = tuple.iter().map(|g| g.to_string()).collect();
                if body.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}·({})", body.join(" ∧ "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Column-operation schedule used to reduce a valuation vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Reduce every other entry modulo the entry of least absolute value.
    MinimalPivot,
    /// Euclid's algorithm on the first two nonzero entries.
    PairwiseEuclid,
}

/// Residue of an explicit tuple `f_1 ∧ … ∧ f_k` along `d`.
pub fn residue_of_tuple(
    tuple: &[CoordFunction],
    d: &FaceDivisor,
    strategy: ReductionStrategy,
) -> Result<WedgeElement> {
    for f in tuple {
        f.validate(&d.ambient)?;
    }
    let target = d.target();
    let k = tuple.len();
    let mut fs = tuple.to_vec();
    let mut vals: Vec<i64> = fs.iter().map(|f| valuation(f, d)).collect();
    if vals.iter().all(|&v| v == 0) {
        return Ok(WedgeElement::zero(target, k.saturating_sub(1)));
    }
    let mut negate = false;
    loop {
        let nonzero: Vec<usize> = (0..k).filter(|&i| vals[i] != 0).collect();
        if nonzero.len() == 1 {
            let i = nonzero[0];
            if i != 0 {
                fs.swap(0, i);
                vals.swap(0, i);
                negate = !negate;
            }
            break;
        }
        match strategy {
            ReductionStrategy::MinimalPivot => {
                let pivot = *nonzero.iter().min_by_key(|&&i| (vals[i].abs(), i)).expect("nonempty");
                for &other in &nonzero {
                    if other != pivot {
                        let q = vals[other] / vals[pivot];
                        fs[other] = fs[other].mul(&fs[pivot].pow(-q));
                        vals[other] -= q * vals[pivot];
                    }
                }
            }
            ReductionStrategy::PairwiseEuclid => {
                let (a, b) = (nonzero[0], nonzero[1]);
                let (big, small) = if vals[a].abs() >= vals[b].abs() { (a, b) } else { (b, a) };
                let q = vals[big] / vals[small];
                fs[big] = fs[big].mul(&fs[small].pow(-q));
                vals[big] -= q * vals[small];
            }
        }
    }
    let rest: Vec<CoordFunction> = fs[1..]
        .iter()
        .map(|f| restrict(f, d))
        .collect::<Result<_>>()?;
    let g = if negate { -vals[0] } else { vals[0] };
    Ok(WedgeElement::from_tuple(target, &rest)?.scale(&BigInt::from(g)))
}

/// `Res_d : ∧^k → ∧^{k-1}`.
pub fn residue(w: &WedgeElement, d: &FaceDivisor) -> Result<WedgeElement> {
    residue_with(w, d, ReductionStrategy::MinimalPivot)
}

pub fn residue_with(
    w: &WedgeElement,
    d: &FaceDivisor,
    strategy: ReductionStrategy,
) -> Result<WedgeElement> {
    if w.ambient != d.ambient {
        return domain("wedge element and divisor live on different ambients");
    }
    let mut out = WedgeElement::zero(d.target(), w.degree.saturating_sub(1));
    for (c, tuple) in w.basis_terms() {
        out = out.add(&residue_of_tuple(&tuple, d, strategy)?.scale(&c))?;
    }
    Ok(out)
}

/// How a coordinate divisor of `(P¹)ⁿ × Pᵐ` appears in the boundary formula
/// of `M_{n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Face {
    /// `D^i_j`: `y_i = 0` (`j = 0`) or `x_i = 0` (`j = 1`).
    Cubical { i: u32, j: u32 },
    /// `D_i`: `z_i = 0`.
    Simplicial { i: u32 },
}

fn classify(c: Coordinate) -> Face {
    match c {
        Coordinate::Y(i) => Face::Cubical { i, j: 0 },
        Coordinate::X(i) => Face::Cubical { i, j: 1 },
        Coordinate::Z(i) => Face::Simplicial { i },
    }
}

/// Checks the boundary formula of `M_{n,m}` at the residue level: for every
/// coordinate divisor the residue of `∧ y_i/x_i ∧ ∧ z_k/z_0` has the expected
/// sign and `-T(Res)` equals the signed face form.
fn boundary_sweep(n: u32, m: u32, report: &mut Report) -> Result<()> {
    let ambient = Ambient::new(n, m);
    let w = WedgeElement::from_tuple(ambient, &ambient.basis())?;
    let mut nonzero = 0u64;
    for d in ambient.divisors() {
        let target = d.target();
        let res = residue(&w, &d)?;
        let face_basis = WedgeElement::from_tuple(target, &target.basis())?;
        // Sign of the residue and the sign of the face in the boundary formula.
        let (res_sign, face_sign, face_form) = match classify(d.coordinate) {
            Face::Cubical { i, j } => (
                (i + j + 1) as i64,
                (i + j) as i64,
                build_m(n - 1, m).expand(),
            ),
            Face::Simplicial { i } => {
                let res_sign = if i == 0 { n as i64 + 1 } else { (n + i) as i64 - 1 };
                (res_sign, (n + i) as i64, build_m(n, m - 1).expand())
            }
        };
        let expected_res = face_basis.scale(&BigInt::from(if res_sign % 2 == 0 { 1 } else { -1 }));
        report.check(res == expected_res, || {
            json!({
                "divisor": d.coordinate.to_string(),
                "residue": res.to_json(),
                "expected": expected_res.to_json(),
            })
        });
        if !res.is_zero() {
            nonzero += 1;
        }
        let lhs = t_of_wedge(&res).scale(&-rational::int(1));
        let rhs = face_form.scale(&rational::sign(face_sign));
        report.check(lhs == rhs, || {
            let mut v = crate::deligne::diff_payload(lhs.expr(), rhs.expr());
            v["divisor"] = json!(d.coordinate.to_string());
            v
        });
    }
    report.stat("divisors", ambient.coordinates().len() as u64);
    report.stat("nonzero_residues", nonzero);
    Ok(())
}

/// Residues of the wedge along divisors that are not faces must vanish:
/// the form lives on `ambient` but only involves `inner` coordinates.
fn non_face_sweep(inner: Ambient, outer: Ambient, report: &mut Report) -> Result<()> {
    let w = WedgeElement::from_tuple(outer, &inner.basis())?;
    for d in outer.divisors() {
        let is_face = match d.coordinate {
            Coordinate::X(i) | Coordinate::Y(i) => i <= inner.n,
            Coordinate::Z(_) => inner.m > 0,
        };
        if is_face {
            continue;
        }
        let res = residue(&w, &d)?;
        report.check(res.is_zero(), || {
            json!({"divisor": d.coordinate.to_string(), "unexpected_residue": res.to_json()})
        });
    }
    Ok(())
}

fn run(report: &mut Report, f: impl FnOnce(&mut Report) -> Result<()>) {
    if let Err(e) = f(report) {
        report.fail(json!({"error": e.to_string()}));
    }
}

/// `d_D[W_m] = Σ_{i,j} (-1)^{i+j} (δ^i_j)_*[W_{m-1}]` at the residue level.
pub fn verify_wang_boundary(m: i64) -> Report {
    let mut report = Report::new("wang-boundary").param("m", m);
    if m < 1 {
        report.fail(json!({"error": "m must be at least 1", "m": m}));
        return report;
    }
    let m = m as u32;
    run(&mut report, |r| {
        boundary_sweep(m, 0, r)?;
        non_face_sweep(Ambient::new(m, 0), Ambient::new(m + 1, 1), r)
    });
    report
}

/// `d_D[G_m] = Σ_i (-1)^i (∂^i)_*[G_{m-1}]` at the residue level.
pub fn verify_goncharov_boundary(m: i64) -> Report {
    let mut report = Report::new("goncharov-boundary").param("m", m);
    if m < 1 {
        report.fail(json!({"error": "m must be at least 1", "m": m}));
        return report;
    }
    let m = m as u32;
    run(&mut report, |r| {
        boundary_sweep(0, m, r)?;
        non_face_sweep(Ambient::new(0, m), Ambient::new(1, m), r)
    });
    report
}

/// The boundary formula of `M_{n,m}` including the `(-1)^n` cross sign.
pub fn verify_mixed_boundary(n: i64, m: i64) -> Report {
    let mut report = Report::new("mixed-boundary").param("n", n).param("m", m);
    if n < 0 || m < 0 || n + m < 1 {
        report.fail(json!({"error": "need n, m >= 0 and n + m >= 1", "n": n, "m": m}));
        return report;
    }
    run(&mut report, |r| boundary_sweep(n as u32, m as u32, r));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use Coordinate::{X, Y, Z};

    fn t(i: u32) -> CoordFunction {
        CoordFunction::ratio(Y(i), X(i))
    }
    fn zr(k: u32, l: u32) -> CoordFunction {
        CoordFunction::ratio(Z(k), Z(l))
    }
    fn div(a: Ambient, c: Coordinate) -> FaceDivisor {
        FaceDivisor::new(a, c).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let a = Ambient::new(1, 2);
        assert_eq!(valuation(&t(1), &div(a, Y(1))), 1);
        assert_eq!(valuation(&t(1), &div(a, X(1))), -1);
        assert_eq!(valuation(&zr(2, 0), &div(a, Z(1))), 0);
    }

    #[test]
    fn restrict_examples() {
        let a = Ambient::new(2, 0);
        assert_eq!(restrict(&t(2), &div(a, Y(1))).unwrap(), t(1));
        let p = Ambient::new(0, 3);
        assert_eq!(restrict(&zr(2, 1), &div(p, Z(0))).unwrap(), zr(1, 0));
        assert!(matches!(restrict(&t(1), &div(a, Y(1))), Err(Error::NonUnit(_))));
    }

    #[test]
    fn validation_rejects_bad_functions() {
        let a = Ambient::new(1, 1);
        assert!(CoordFunction::from_exponents([(Y(1), 1)]).validate(&a).is_err());
        assert!(t(2).validate(&a).is_err());
        assert!(CoordFunction::from_exponents([(Y(1), 2), (X(1), -2)]).validate(&a).is_ok());
        assert!(FaceDivisor::new(a, Z(2)).is_err());
    }

    #[test]
    fn wedge_canonical_form() {
        let a = Ambient::new(2, 0);
        let w = WedgeElement::from_tuple(a, &[t(1), t(2)]).unwrap();
        let swapped = WedgeElement::from_tuple(a, &[t(2), t(1)]).unwrap();
        assert_eq!(swapped, w.neg());
        assert!(WedgeElement::from_tuple(a, &[t(1), t(1)]).unwrap().is_zero());
        let sq = WedgeElement::from_tuple(a, &[t(1).pow(2), t(2).mul(&t(1))]).unwrap();
        assert_eq!(sq, w.scale(&BigInt::from(2)));
    }

    #[test]
    fn wang_residue_signs() {
        // Res_{y_i = 0}(∧ y_k/x_k) = (-1)^{i+1} (…without slot i…).
        let a = Ambient::new(3, 0);
        let w = WedgeElement::from_tuple(a, &a.basis()).unwrap();
        for i in 1..=3u32 {
            let d = div(a, Y(i));
            let rest = WedgeElement::from_tuple(d.target(), &d.target().basis()).unwrap();
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(residue(&w, &d).unwrap(), rest.scale(&BigInt::from(sign)));
            let d = div(a, X(i));
            assert_eq!(residue(&w, &d).unwrap(), rest.scale(&BigInt::from(-sign)));
        }
    }

    #[test]
    fn goncharov_residue_at_z0() {
        // Res_{z0}(z1/z0 ∧ z2/z0 ∧ z3/z0) = -(z2/z1 ∧ z3/z1)|.
        let p = Ambient::new(0, 3);
        let w = WedgeElement::from_tuple(p, &p.basis()).unwrap();
        let d = div(p, Z(0));
        let expected = WedgeElement::from_tuple(d.target(), &[zr(1, 0), zr(2, 0)]).unwrap().neg();
        assert_eq!(residue(&w, &d).unwrap(), expected);
        // The same element written with z_k/z_1 entries gives the same residue.
        let w2 = WedgeElement::from_tuple(p, &[zr(1, 0), zr(2, 1), zr(3, 1)]).unwrap();
        assert_eq!(w2, w);
    }

    #[test]
    fn residue_of_units_is_zero() {
        let a = Ambient::new(2, 1);
        let d = div(a, Y(1));
        let w = WedgeElement::from_tuple(a, &[t(2), zr(1, 0)]).unwrap();
        assert!(residue(&w, &d).unwrap().is_zero());
    }

    #[test]
    fn small_boundary_checks() {
        let r = verify_wang_boundary(1);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(verify_wang_boundary(2).passed());
        assert!(verify_goncharov_boundary(1).passed());
        assert!(verify_goncharov_boundary(2).passed());
        assert!(verify_mixed_boundary(1, 1).passed());
        assert!(!verify_mixed_boundary(0, 0).passed());
    }
}
