//! Chain complexes of free abelian groups, chain maps and simple complexes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use super::matrix::{smith, IntegerMatrix};
use crate::error::{Error, Result};
use crate::report::Report;

/// `C_lo, …, C_hi` of the given ranks with `d_n : C_n → C_{n-1}` stored
/// as `rank(n-1) × rank(n)` matrices for `lo < n ≤ hi`. All other groups
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<IntegerMatrix>,
}

/// `H_n ≅ ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl ChainComplex {
    /// `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntegerMatrix>) -> Result<Self> {
        let c = ChainComplex { lo, ranks, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// A single group in degree `n`.
    pub fn concentrated(n: i64, rank: usize) -> Self {
        ChainComplex { lo: n, ranks: vec![rank], diffs: Vec::new() }
    }

    /// Builds a complex from `d_n` given for every `n` in `lo+1..=hi`.
    pub fn from_differentials(lo: i64, hi: i64, ranks: Vec<usize>, d: impl Fn(i64) -> IntegerMatrix) -> Result<Self> {
        let diffs = (lo + 1..=hi).map(d).collect();
        Self::new(lo, ranks, diffs)
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.ranks.len().saturating_sub(1);
        if self.diffs.len() != expected {
            return Err(Error::InvalidComplex(format!(
                "{} groups need {expected} differentials, got {}",
                self.ranks.len(),
                self.diffs.len()
            )));
        }
        for n in self.lo + 1..=self.hi() {
            let d = self.d(n);
            if d.shape() != (self.rank(n - 1), self.rank(n)) {
                return Err(Error::InvalidComplex(format!(
                    "d_{n} has shape {:?}, expected {:?}",
                    d.shape(),
                    (self.rank(n - 1), self.rank(n))
                )));
            }
            if n > self.lo + 1 && !self.d(n - 1).mul(&d).is_zero() {
                return Err(Error::InvalidComplex(format!("d_{} ∘ d_{n} ≠ 0", n - 1)));
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for an empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n`, a zero matrix of the right shape outside the stored range.
    pub fn d(&self, n: i64) -> IntegerMatrix {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            IntegerMatrix::zeros(self.rank(n - 1), self.rank(n))
        }
    }

    /// `d_{n-1} ∘ d_n = 0` everywhere.
    pub fn is_complex(&self) -> bool {
        (self.lo + 2..=self.hi()).all(|n| self.d(n - 1).mul(&self.d(n)).is_zero())
    }

    /// `H_n = ker d_n / im d_{n+1}`. The free rank is
    /// `rank C_n - rank d_n - rank d_{n+1}`; torsion is read off the
    /// invariant factors of `d_{n+1}` because `ker d_n` is saturated.
    pub fn homology(&self, n: i64) -> Homology {
        let out = smith(&self.d(n)).rank();
        let inc = smith(&self.d(n + 1));
        let torsion: Vec<BigInt> =
            inc.invariant_factors().into_iter().filter(|x| *x > BigInt::one()).collect();
        Homology { rank: self.rank(n) - out - inc.rank(), torsion }
    }

    /// Betti numbers over ℚ for every degree in range.
    pub fn betti(&self) -> Vec<(i64, usize)> {
        (self.lo..=self.hi())
            .map(|n| (n, self.rank(n) - self.d(n).rank() - self.d(n + 1).rank()))
            .collect()
    }

    /// `A[k]_n = A_{n-k}` with differential `(-1)^k d`.
    pub fn translate(&self, k: i64) -> ChainComplex {
        let sign = if k.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
        ChainComplex {
            lo: self.lo + k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Canonical truncation `τ_{≤n}` in the cochain view `A^i = A_{-i}`:
    /// cochain degrees below `n` are kept, degree `n` becomes `ker d`,
    /// higher degrees vanish. Returned as a chain complex.
    pub fn truncate_leq(&self, n: i64) -> ChainComplex {
        let chain_n = -n;
        let lo = chain_n.max(self.lo);
        let hi = self.hi();
        if lo > hi {
            return ChainComplex { lo: chain_n, ranks: Vec::new(), diffs: Vec::new() };
        }
        // Kernel of the cochain differential leaving degree n, i.e. of d_{-n}.
        let kernel = if lo == chain_n {
            Some(smith(&self.d(chain_n)).kernel_basis())
        } else {
            None
        };
        let mut ranks: Vec<usize> = (lo..=hi).map(|k| self.rank(k)).collect();
        let mut diffs: Vec<IntegerMatrix> = (lo + 1..=hi).map(|k| self.d(k)).collect();
        if let Some(kb) = kernel {
            ranks[0] = kb.cols();
            if let Some(first) = diffs.first_mut() {
                // Image of d_{lo+1} lies in ker d_lo; rewrite it in the kernel basis.
                *first = coordinates_in(&kb, first).expect("boundaries are cycles");
            }
        }
        ChainComplex { lo, ranks, diffs }
    }

    /// `C ⊕ D` degreewise.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        if hi < lo {
            return ChainComplex::zero();
        }
        let ranks = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (lo + 1..=hi)
            .map(|n| {
                IntegerMatrix::block(
                    &[self.rank(n - 1), other.rank(n - 1)],
                    &[self.rank(n), other.rank(n)],
                    &[vec![Some(&self.d(n)), None], vec![None, Some(&other.d(n))]],
                )
            })
            .collect();
        ChainComplex { lo, ranks, diffs }
    }

    /// Base change `C_n ↦ P_n C_n`, i.e. `d_n ↦ P_{n-1} d_n P_n⁻¹`.
    pub fn conjugate(&self, p: &[(IntegerMatrix, IntegerMatrix)]) -> ChainComplex {
        let diffs = (self.lo + 1..=self.hi())
            .map(|n| {
                let k = (n - self.lo) as usize;
                p[k - 1].0.mul(&self.d(n)).mul(&p[k].1)
            })
            .collect();
        ChainComplex { lo: self.lo, ranks: self.ranks.clone(), diffs }
    }
}

/// Solves `basis · x = targets` column by column over ℤ, where `basis` has
/// independent columns spanning a saturated sublattice.
pub fn coordinates_in(basis: &IntegerMatrix, targets: &IntegerMatrix) -> Result<IntegerMatrix> {
    let s = smith(basis);
    let r = s.rank();
    // basis = U⁻¹ D V⁻¹, so x = V · D⁻¹ · (U · targets) on the first r rows.
    let ut = s.u.mul(targets);
    let mut y = IntegerMatrix::zeros(basis.cols(), targets.cols());
    for j in 0..targets.cols() {
        for i in 0..ut.rows() {
            let v = ut.get(i, j);
            if i >= r {
                if !v.is_zero() {
                    return Err(Error::InvalidComplex("vector outside the given lattice".into()));
                }
                continue;
            }
            let d = s.d.get(i, i);
            if !(v % d).is_zero() {
                return Err(Error::InvalidComplex("vector outside the given lattice".into()));
            }
            y.set(i, j, v / d);
        }
    }
    Ok(s.v.mul(&y))
}

/// Degreewise matrices `f_n : A_n → B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    maps: Vec<(i64, IntegerMatrix)>,
}

impl ChainMap {
    /// `f(n)` must have shape `rank B_n × rank A_n`; checks `d f = f d`.
    pub fn new(source: ChainComplex, target: ChainComplex, f: impl Fn(i64) -> IntegerMatrix) -> Result<Self> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps = (lo..=hi).map(|n| (n, f(n))).collect();
        let m = ChainMap { source, target, maps };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(source: ChainComplex, target: ChainComplex) -> Self {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps = (lo..=hi)
            .map(|n| (n, IntegerMatrix::zeros(target.rank(n), source.rank(n))))
            .collect();
        ChainMap { source, target, maps }
    }

    pub fn identity(c: ChainComplex) -> Self {
        let maps = (c.lo()..=c.hi()).map(|n| (n, IntegerMatrix::identity(c.rank(n)))).collect();
        ChainMap { source: c.clone(), target: c, maps }
    }

    pub fn at(&self, n: i64) -> IntegerMatrix {
        self.maps
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| IntegerMatrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn validate(&self) -> Result<()> {
        for (n, m) in &self.maps {
            let shape = (self.target.rank(*n), self.source.rank(*n));
            if m.shape() != shape {
                return Err(Error::NotChainMap(format!(
                    "f_{n} has shape {:?}, expected {shape:?}",
                    m.shape()
                )));
            }
        }
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi + 1 {
            let left = self.target.d(n).mul(&self.at(n));
            let right = self.at(n - 1).mul(&self.source.d(n));
            if left != right {
                return Err(Error::NotChainMap(format!("d f ≠ f d in degree {n}")));
            }
        }
        Ok(())
    }
}

/// `s(f)_k = A_k ⊕ B_{k+1}` with `d(a, b) = (d a, f(a) - d b)`: the simple
/// complex of a cochain map read in chain degrees (`A^n = A_{-n}`).
pub fn simple_of_map(f: &ChainMap) -> Result<ChainComplex> {
    f.validate()?;
    let (a, b) = (&f.source, &f.target);
    let lo = a.lo().min(b.lo() - 1);
    let hi = a.hi().max(b.hi() - 1);
    if hi < lo {
        return Ok(ChainComplex::zero());
    }
    let ranks = (lo..=hi).map(|k| a.rank(k) + b.rank(k + 1)).collect();
    ChainComplex::from_differentials(lo, hi, ranks, |k| {
        let neg_db = b.d(k + 1).neg();
        let fk = f.at(k);
        IntegerMatrix::block(
            &[a.rank(k - 1), b.rank(k)],
            &[a.rank(k), b.rank(k + 1)],
            &[vec![Some(&a.d(k)), None], vec![Some(&fk), Some(&neg_db)]],
        )
    })
}

/// Three complexes with chain maps `g : A → B` and `r : A → C`.
#[derive(Clone, Debug)]
pub struct TwoArrowDiagram {
    pub g: ChainMap,
    pub r: ChainMap,
}

impl TwoArrowDiagram {
    pub fn new(g: ChainMap, r: ChainMap) -> Result<Self> {
        if g.source != r.source {
            return Err(Error::InvalidComplex("the two arrows have different sources".into()));
        }
        g.validate()?;
        r.validate()?;
        Ok(TwoArrowDiagram { g, r })
    }

    pub fn a(&self) -> &ChainComplex {
        &self.g.source
    }
    pub fn b(&self) -> &ChainComplex {
        &self.g.target
    }
    pub fn c(&self) -> &ChainComplex {
        &self.r.target
    }
}

/// Degree `n` is `A_{n-1} ⊕ B_n ⊕ C_n` and
/// `d(α₁, α₂, α₃) = (-dα₁, dα₂ + g(α₁), dα₃ - r(α₁))`.
pub fn simple_of_diagram(diagram: &TwoArrowDiagram) -> Result<ChainComplex> {
    let (a, b, c) = (diagram.a(), diagram.b(), diagram.c());
    let lo = (a.lo() + 1).min(b.lo()).min(c.lo());
    let hi = (a.hi() + 1).max(b.hi()).max(c.hi());
    if hi < lo {
        return Ok(ChainComplex::zero());
    }
    let ranks = (lo..=hi).map(|n| a.rank(n - 1) + b.rank(n) + c.rank(n)).collect();
    ChainComplex::from_differentials(lo, hi, ranks, |n| {
        let neg_da = a.d(n - 1).neg();
        let g = diagram.g.at(n - 1);
        let neg_r = diagram.r.at(n - 1).neg();
        let (db, dc) = (b.d(n), c.d(n));
        IntegerMatrix::block(
            &[a.rank(n - 2), b.rank(n - 1), c.rank(n - 1)],
            &[a.rank(n - 1), b.rank(n), c.rank(n)],
            &[
                vec![Some(&neg_da), None, None],
                vec![Some(&g), Some(&db), None],
                vec![Some(&neg_r), None, Some(&dc)],
            ],
        )
    })
}

/// Rank over ℚ of the map induced on homology by `phi : X_k → Y_j`.
fn induced_rank(phi: &IntegerMatrix, x: &ChainComplex, k: i64, y: &ChainComplex, j: i64) -> usize {
    let cycles = smith(&x.d(k)).kernel_basis();
    let boundaries = y.d(j + 1);
    let image = phi.mul(&cycles);
    image.hstack(&boundaries).rank() - boundaries.rank()
}

/// Checks rank-exactness over ℚ of
/// `… → H_{k+1}(B) → H_k(s f) → H_k(A) → H_k(B) → H_{k-1}(s f) → …`.
/// The connecting map is realised as "lift along `a ↦ (a, 0)`, apply `d_s`,
/// read off the `B` component".
pub fn verify_les_exactness(f: &ChainMap) -> Report {
    let mut report = Report::new("les-exactness");
    let s = match simple_of_map(f) {
        Ok(s) => s,
        Err(e) => {
            report.fail(json!({"error": e.to_string()}));
            return report;
        }
    };
    let (a, b) = (&f.source, &f.target);
    let lo = s.lo().min(a.lo()).min(b.lo()) - 1;
    let hi = s.hi().max(a.hi()).max(b.hi()) + 1;

    // Each node: (complex, degree, dimension of homology).
    #[derive(Clone, Copy)]
    enum Node {
        B(i64),
        S(i64),
        A(i64),
    }
    let dim = |node: Node| -> usize {
        let (c, k) = match node {
            Node::B(k) => (b, k),
            Node::S(k) => (&s, k),
            Node::A(k) => (a, k),
        };
        c.rank(k) - c.d(k).rank() - c.d(k + 1).rank()
    };
    // Rank of the map leaving each node.
    let out_rank = |node: Node| -> usize {
        match node {
            Node::B(k) => {
                // B_k → s_{k-1} = A_{k-1} ⊕ B_k, b ↦ (0, b).
                let incl = IntegerMatrix::block(
                    &[a.rank(k - 1), b.rank(k)],
                    &[b.rank(k)],
                    &[vec![None], vec![Some(&IntegerMatrix::identity(b.rank(k)))]],
                );
                induced_rank(&incl, b, k, &s, k - 1)
            }
            Node::S(k) => {
                let proj = IntegerMatrix::block(
                    &[a.rank(k)],
                    &[a.rank(k), b.rank(k + 1)],
                    &[vec![Some(&IntegerMatrix::identity(a.rank(k))), None]],
                );
                induced_rank(&proj, &s, k, a, k)
            }
            Node::A(k) => {
                let section = IntegerMatrix::block(
                    &[a.rank(k), b.rank(k + 1)],
                    &[a.rank(k)],
                    &[vec![Some(&IntegerMatrix::identity(a.rank(k)))], vec![None]],
                );
                let pick_b = IntegerMatrix::block(
                    &[b.rank(k)],
                    &[a.rank(k - 1), b.rank(k)],
                    &[vec![None, Some(&IntegerMatrix::identity(b.rank(k)))]],
                );
                let connecting = pick_b.mul(&s.d(k)).mul(&section);
                induced_rank(&connecting, a, k, b, k)
            }
        }
    };
    let mut nodes = Vec::new();
    for k in (lo..=hi).rev() {
        nodes.push(Node::B(k + 1));
        nodes.push(Node::S(k));
        nodes.push(Node::A(k));
    }
    let mut checked = 0u64;
    for w in nodes.windows(2) {
        let (prev, node) = (w[0], w[1]);
        let incoming = out_rank(prev);
        let outgoing = out_rank(node);
        let d = dim(node);
        checked += 1;
        report.check(incoming + outgoing == d, || {
            let name = match node {
                Node::B(k) => format!("H_{k}(B)"),
                Node::S(k) => format!("H_{k}(s)"),
                Node::A(k) => format!("H_{k}(A)"),
            };
            json!({"node": name, "incoming_rank": incoming, "outgoing_rank": outgoing, "dimension": d})
        });
    }
    report.stat("nodes", checked);
    report
}
