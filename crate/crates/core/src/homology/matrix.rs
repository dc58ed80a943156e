//! Dense integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Row-major matrix of arbitrary-precision integers. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_big_rows(rows.first().map_or(0, |r| r.len()), big)
    }

    /// `cols` is needed to describe matrices with no rows.
    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntegerMatrix { rows: n, cols, data }
    }

    pub fn diagonal(rows: usize, cols: usize, entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntegerMatrix) -> IntegerMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntegerMatrix {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> IntegerMatrix {
        let data = self.data.iter().map(|a| a * k).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Columns `range` of the matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rows_range(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        self.transpose().columns(range).transpose()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_big_rows(self.cols + other.cols, rows)
    }

    /// `self` above `other`.
    pub fn vstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntegerMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Assembles a block matrix; `row_sizes`/`col_sizes` fix the shape of
    /// missing (zero) blocks.
    pub fn block(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&IntegerMatrix>>],
    ) -> IntegerMatrix {
        let mut out = Self::zeros(row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!(b.shape(), (rs, cs), "block ({bi}, {bj}) has the wrong shape");
                    for i in 0..rs {
                        for j in 0..cs {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    /// Rank over ℚ by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let a = pivot_row[col].clone();
                let b = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &a * &*x - &b * y;
                }
                let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                if g > BigInt::one() {
                    for x in row.iter_mut() {
                        *x /= &g;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Bareiss determinant; panics on a non-square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Uniform entries in `[-bound, bound]`.
    pub fn random(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Self {
        let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        IntegerMatrix { rows, cols, data }
    }

    /// A random unimodular matrix together with its inverse.
    pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> (Self, Self) {
        let mut p = Self::identity(n);
        let mut q = Self::identity(n);
        if n == 0 {
            return (p, q);
        }
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            if n > 1 && rng.gen_bool(0.8) {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                // p ← E p with E = I + c e_ij; q ← q E⁻¹.
                p.add_row_multiple(i, j, &c);
                q.add_col_multiple(j, i, &-c);
            } else {
                p.negate_row(i);
                q.negate_col(i);
            }
        }
        (p, q)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_target += c · row_source`.
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(source, j) * c;
            self.data[target * self.cols + j] += v;
        }
    }

    /// `col_target += c · col_source`.
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, source) * c;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d₁ | d₂ | …`. The inverses of `U` and `V` are kept
/// for kernel and image computations.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// A ℤ-basis of the kernel, as columns.
    pub fn kernel_basis(&self) -> IntegerMatrix {
        self.v.columns(self.rank()..self.v.cols)
    }

    /// A ℤ-basis of the image lattice, as columns.
    pub fn image_basis(&self) -> IntegerMatrix {
        let r = self.rank();
        let mut b = self.u_inv.columns(0..r);
        for (j, d) in self.invariant_factors().iter().enumerate() {
            for i in 0..b.rows {
                let v = b.get(i, j) * d;
                b.set(i, j, v);
            }
        }
        b
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith(m);
    (s.u, s.d, s.v)
}

/// Full Smith decomposition. Pivots are chosen of least absolute value to
/// keep intermediate entries small.
pub fn smith(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut u_inv = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    // Row op on d is mirrored on u; its inverse acts on the columns of u_inv.
    macro_rules! row_add {
        ($t:expr, $s:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_row_multiple($t, $s, &c);
            u.add_row_multiple($t, $s, &c);
            u_inv.add_col_multiple($s, $t, &-c);
        }};
    }
    macro_rules! col_add {
        ($t:expr, $s:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_col_multiple($t, $s, &c);
            v.add_col_multiple($t, $s, &c);
            v_inv.add_row_multiple($s, $t, &-c);
        }};
    }

    for t in 0..rows.min(cols) {
        loop {
            // Pivot of least absolute value in the lower-right block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v, u_inv, v_inv);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_add!(i, t, -q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_add!(j, t, -q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row with a non-multiple into row t.
            let p = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => row_add!(t, i, BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    finish(u, d, v, u_inv, v_inv)
}

fn finish(
    u: IntegerMatrix,
    d: IntegerMatrix,
    v: IntegerMatrix,
    u_inv: IntegerMatrix,
    v_inv: IntegerMatrix,
) -> SmithForm {
    SmithForm { u, d, v, u_inv, v_inv }
}

/// Invariant factors by the determinantal-divisor oracle:
/// `d_k = D_k / D_{k-1}` with `D_k` the gcd of all `k × k` minors.
pub fn invariant_factors_by_minors(m: &IntegerMatrix) -> Vec<BigInt> {
    let (rows, cols) = m.shape();
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = IntegerMatrix::from_big_rows(
                    k,
                    rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect(),
                );
                g = g.gcd(&minor.determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}
