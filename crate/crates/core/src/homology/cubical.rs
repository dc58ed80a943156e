//! Free cubical abelian groups given by explicit face and degeneracy matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::json;

use super::complex::{coordinates_in, ChainComplex};
use super::matrix::{smith, IntegerMatrix};
use crate::error::{Error, Result};
use crate::report::Report;

/// Levels `C_0, …, C_N` with faces `δ_i^j : C_n → C_{n-1}` (`1 ≤ i ≤ n`,
/// `j ∈ {0, 1}`) and degeneracies `σ_i : C_n → C_{n+1}` (`1 ≤ i ≤ n+1`,
/// `n < N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalGroup {
    ranks: Vec<usize>,
    faces: BTreeMap<(usize, usize, usize), IntegerMatrix>,
    degeneracies: BTreeMap<(usize, usize), IntegerMatrix>,
}

impl CubicalGroup {
    /// `faces[(n, i, j)]` and `degeneracies[(n, i)]` are keyed by the source level.
    pub fn new(
        ranks: Vec<usize>,
        faces: BTreeMap<(usize, usize, usize), IntegerMatrix>,
        degeneracies: BTreeMap<(usize, usize), IntegerMatrix>,
    ) -> Result<Self> {
        let c = CubicalGroup { ranks, faces, degeneracies };
        c.validate()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize, j: usize) -> &IntegerMatrix {
        &self.faces[&(n, i, j)]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &IntegerMatrix {
        &self.degeneracies[&(n, i)]
    }

    pub fn faces(&self) -> &BTreeMap<(usize, usize, usize), IntegerMatrix> {
        &self.faces
    }

    pub fn degeneracies(&self) -> &BTreeMap<(usize, usize), IntegerMatrix> {
        &self.degeneracies
    }

    /// Checks presence and shapes of all maps, `δ_i^j σ_i = id` and
    /// `δ_i^a δ_j^b = δ_{j-1}^b δ_i^a` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCubical(m));
        if self.ranks.is_empty() {
            return bad("no levels".into());
        }
        let top = self.top();
        let expected_faces: usize = (1..=top).map(|n| 2 * n).sum();
        let expected_degs: usize = (0..top).map(|n| n + 1).sum();
        if self.faces.len() != expected_faces || self.degeneracies.len() != expected_degs {
            return bad(format!(
                "expected {expected_faces} faces and {expected_degs} degeneracies, got {} and {}",
                self.faces.len(),
                self.degeneracies.len()
            ));
        }
        for n in 1..=top {
            for i in 1..=n {
                for j in 0..2 {
                    let Some(f) = self.faces.get(&(n, i, j)) else {
                        return bad(format!("missing face ({n}, {i}, {j})"));
                    };
                    if f.shape() != (self.ranks[n - 1], self.ranks[n]) {
                        return bad(format!("face ({n}, {i}, {j}) has shape {:?}", f.shape()));
                    }
                }
            }
        }
        for n in 0..top {
            for i in 1..=n + 1 {
                let Some(s) = self.degeneracies.get(&(n, i)) else {
                    return bad(format!("missing degeneracy ({n}, {i})"));
                };
                if s.shape() != (self.ranks[n + 1], self.ranks[n]) {
                    return bad(format!("degeneracy ({n}, {i}) has shape {:?}", s.shape()));
                }
                for j in 0..2 {
                    if !self.face(n + 1, i, j).mul(s).is_identity() {
                        return bad(format!("δ_{i}^{j} σ_{i} ≠ id on level {n}"));
                    }
                }
            }
        }
        for n in 2..=top {
            for i in 1..=n {
                for jdx in i + 1..=n {
                    for a in 0..2 {
                        for b in 0..2 {
                            let lhs = self.face(n - 1, i, a).mul(self.face(n, jdx, b));
                            let rhs = self.face(n - 1, jdx - 1, b).mul(self.face(n, i, a));
                            if lhs != rhs {
                                return bad(format!(
                                    "δ_{i}^{a} δ_{jdx}^{b} ≠ δ_{}^{b} δ_{i}^{a} on level {n}",
                                    jdx - 1
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn boundary(&self, n: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.ranks[n - 1], self.ranks[n]);
        for i in 1..=n {
            for j in 0..2 {
                let f = self.face(n, i, j);
                d = if (i + j) % 2 == 0 { d.add(f) } else { d.sub(f) };
            }
        }
        d
    }

    /// `C_*` with `δ = Σ_i Σ_j (-1)^{i+j} δ_i^j`.
    pub fn associated_complex(&self) -> Result<ChainComplex> {
        let diffs = (1..=self.top()).map(|n| self.boundary(n)).collect();
        ChainComplex::new(0, self.ranks.clone(), diffs)
    }

    /// `NC_n = ⋂_i ker δ_i^1` (an integer kernel basis) with
    /// `δ = Σ_i (-1)^i δ_i^0`.
    pub fn normalized_complex(&self) -> Result<ChainComplex> {
        let bases = self.normalized_bases();
        let mut diffs = Vec::new();
        for n in 1..=self.top() {
            let mut d = IntegerMatrix::zeros(self.ranks[n - 1], self.ranks[n]);
            for i in 1..=n {
                let f = self.face(n, i, 0);
                d = if i % 2 == 0 { d.add(f) } else { d.sub(f) };
            }
            let image = d.mul(&bases[n]);
            diffs.push(coordinates_in(&bases[n - 1], &image).map_err(|_| {
                Error::InvalidCubical(format!("δ does not preserve NC on level {n}"))
            })?);
        }
        ChainComplex::new(0, bases.iter().map(|b| b.cols()).collect(), diffs)
    }

    /// Column bases of `NC_n` inside `C_n`.
    pub fn normalized_bases(&self) -> Vec<IntegerMatrix> {
        (0..=self.top())
            .map(|n| {
                let mut stack = IntegerMatrix::zeros(0, self.ranks[n]);
                for i in 1..=n {
                    stack = stack.vstack(self.face(n, i, 1));
                }
                smith(&stack).kernel_basis()
            })
            .collect()
    }

    /// Column bases of `D_n = Σ_i im σ_i` inside `C_n`.
    pub fn degenerate_bases(&self) -> Vec<IntegerMatrix> {
        (0..=self.top())
            .map(|n| {
                let mut gens = IntegerMatrix::zeros(self.ranks[n], 0);
                if n > 0 {
                    for i in 1..=n {
                        gens = gens.hstack(self.degeneracy(n - 1, i));
                    }
                }
                smith(&gens).image_basis()
            })
            .collect()
    }

    /// The subcomplex of degenerate elements.
    pub fn degenerate_complex(&self) -> Result<ChainComplex> {
        let bases = self.degenerate_bases();
        let mut diffs = Vec::new();
        for n in 1..=self.top() {
            let image = self.boundary(n).mul(&bases[n]);
            diffs.push(coordinates_in(&bases[n - 1], &image).map_err(|_| {
                Error::InvalidCubical(format!("δ does not preserve D on level {n}"))
            })?);
        }
        ChainComplex::new(0, bases.iter().map(|b| b.cols()).collect(), diffs)
    }
}

/// `C_n = NC_n ⊕ D_n` over ℚ levelwise, and the Betti numbers of `C_*`
/// split as those of `NC_*` plus those of `D_*`.
pub fn decomposition_check(c: &CubicalGroup) -> Report {
    let mut report = Report::new("cubical-decomposition").param("levels", c.ranks().len() as i64);
    let nc = c.normalized_bases();
    let dg = c.degenerate_bases();
    for n in 0..=c.top() {
        let (a, b) = (nc[n].cols(), dg[n].cols());
        let joint = nc[n].hstack(&dg[n]).rank();
        report.check(a + b == c.ranks()[n] && joint == a + b, || {
            json!({"level": n, "rank": c.ranks()[n], "normalized": a, "degenerate": b, "joint_rank": joint})
        });
    }
    let complexes = (c.associated_complex(), c.normalized_complex(), c.degenerate_complex());
    match complexes {
        (Ok(full), Ok(norm), Ok(degen)) => {
            for n in 0..=c.top() as i64 {
                let betti = |x: &ChainComplex| x.homology(n).rank;
                let (bf, bn, bd) = (betti(&full), betti(&norm), betti(&degen));
                report.check(bf == bn + bd, || {
                    json!({"degree": n, "full": bf, "normalized": bn, "degenerate": bd})
                });
            }
        }
        (a, b, d) => {
            for e in [a.err(), b.err(), d.err()].into_iter().flatten() {
                report.fail(json!({"error": e.to_string()}));
            }
        }
    }
    report
}

/// The free cubical abelian group on the representable cubical set `□^k`,
/// truncated at level `top`. An `n`-cube is a word of length `k` over
/// `{0, 1, x_1, …, x_n}` in which the variables that occur appear in
/// increasing order.
pub fn representable(k: usize, top: usize) -> CubicalGroup {
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Letter {
        Const(u8),
        Var(usize),
    }
    fn words(k: usize, n: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        fn rec(k: usize, n: usize, next: usize, w: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
            if w.len() == k {
                out.push(w.clone());
                return;
            }
            for c in 0..2 {
                w.push(Letter::Const(c));
                rec(k, n, next, w, out);
                w.pop();
            }
            for v in next..=n {
                w.push(Letter::Var(v));
                rec(k, n, v + 1, w, out);
                w.pop();
            }
        }
        rec(k, n, 1, &mut Vec::new(), &mut out);
        out
    }
    let levels: Vec<Vec<Vec<Letter>>> = (0..=top).map(|n| words(k, n)).collect();
    let index: Vec<BTreeMap<Vec<Letter>, usize>> = levels
        .iter()
        .map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    let matrix_of = |src: usize, dst: usize, act: &dyn Fn(&[Letter]) -> Vec<Letter>| {
        let mut m = IntegerMatrix::zeros(levels[dst].len(), levels[src].len());
        for (col, w) in levels[src].iter().enumerate() {
            let image = act(w);
            m.set(index[dst][&image], col, BigInt::from(1));
        }
        m
    };
    let mut faces = BTreeMap::new();
    let mut degeneracies = BTreeMap::new();
    for n in 1..=top {
        for i in 1..=n {
            for j in 0..2u8 {
                let act = |w: &[Letter]| -> Vec<Letter> {
                    w.iter()
                        .map(|&l| match l {
                            Letter::Var(v) if v == i => Letter::Const(j),
                            Letter::Var(v) if v > i => Letter::Var(v - 1),
                            other => other,
                        })
                        .collect()
                };
                faces.insert((n, i, j as usize), matrix_of(n, n - 1, &act));
            }
        }
    }
    for n in 0..top {
        for i in 1..=n + 1 {
            let act = |w: &[Letter]| -> Vec<Letter> {
                w.iter()
                    .map(|&l| match l {
                        Letter::Var(v) if v >= i => Letter::Var(v + 1),
                        other => other,
                    })
                    .collect()
            };
            degeneracies.insert((n, i), matrix_of(n, n + 1, &act));
        }
    }
    let ranks = levels.iter().map(Vec::len).collect();
    CubicalGroup { ranks, faces, degeneracies }
}

/// Degreewise direct sum.
pub fn direct_sum(a: &CubicalGroup, b: &CubicalGroup) -> CubicalGroup {
    assert_eq!(a.top(), b.top(), "direct sum of cubical groups of different heights");
    let sum = |x: &IntegerMatrix, y: &IntegerMatrix| {
        IntegerMatrix::block(
            &[x.rows(), y.rows()],
            &[x.cols(), y.cols()],
            &[vec![Some(x), None], vec![None, Some(y)]],
        )
    };
    CubicalGroup {
        ranks: a.ranks.iter().zip(&b.ranks).map(|(x, y)| x + y).collect(),
        faces: a.faces.iter().map(|(k, f)| (*k, sum(f, &b.faces[k]))).collect(),
        degeneracies: a
            .degeneracies
            .iter()
            .map(|(k, s)| (*k, sum(s, &b.degeneracies[k])))
            .collect(),
    }
}

/// Base change `C_n ↦ P_n C_n` on every level; `p[n] = (P_n, P_n⁻¹)`.
pub fn conjugate(c: &CubicalGroup, p: &[(IntegerMatrix, IntegerMatrix)]) -> CubicalGroup {
    CubicalGroup {
        ranks: c.ranks.clone(),
        faces: c
            .faces
            .iter()
            .map(|(&(n, i, j), f)| ((n, i, j), p[n - 1].0.mul(f).mul(&p[n].1)))
            .collect(),
        degeneracies: c
            .degeneracies
            .iter()
            .map(|(&(n, i), s)| ((n, i), p[n + 1].0.mul(s).mul(&p[n].1)))
            .collect(),
    }
}
