//! Exact matrices over the rationals.
//!
//! Rank and kernel dimension use fraction-free (Bareiss) elimination on an
//! integer copy of the matrix, so intermediate entries are minors of the
//! input and never need reduction. Nothing here touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::permgroup::GroupElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("{0}x{1} matrix is not square")]
    NotSquare(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::BadLength { expected: rows * cols, got: entries.len() });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinError> {
        Self::new(rows, cols, entries.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<BigRational>]) -> Result<Self, LinError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinError::BadLength { expected: rows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize, LinError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinError::NotSquare(self.rows, self.cols))
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
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
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64) -> Result<RationalMatrix, LinError> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<BigRational, LinError> {
        let n = self.require_square()?;
        Ok((0..n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i)))
    }

    fn zip(&self, other: &RationalMatrix, op: &'static str, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<RationalMatrix, LinError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinError::DimensionMismatch { op, left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinError> {
        self.zip(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinError> {
        self.zip(other, "sub", |a, b| a - b)
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Result<RationalMatrix, LinError> {
        let n = self.require_square()?;
        self.sub(&Self::identity(n))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rows of all `blocks` stacked vertically.
    pub fn stack(blocks: &[RationalMatrix]) -> Result<RationalMatrix, LinError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(LinError::DimensionMismatch { op: "stack", left: (rows, cols), right: (b.rows, b.cols) });
            }
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Each row multiplied by the lcm of its denominators.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        (rows, scale)
    }

    /// Bareiss elimination: returns the rank, the sign of the row permutation
    /// and the last pivot (the determinant of the scaled matrix when square
    /// and of full rank).
    fn bareiss(&self) -> (usize, i32, BigInt, BigInt) {
        let (mut m, scale) = self.integer_rows();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut sign = 1;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                sign = -sign;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    debug_assert!((&t % &prev).is_zero(), "Bareiss division must be exact");
                    m[i][j] = t / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        (r, sign, prev, scale)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// `cols - rank`, the dimension of the right kernel.
    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn determinant(&self) -> Result<BigRational, LinError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let (rank, sign, pivot, scale) = self.bareiss();
        if rank < n {
            return Ok(BigRational::zero());
        }
        Ok(BigRational::new(pivot * BigInt::from(sign), scale))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RationalMatrix, LinError> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(LinError::Singular)?;
            if p != c {
                for j in 0..n {
                    a.entries.swap(p * n + j, c * n + j);
                    inv.entries.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).recip();
            for j in 0..n {
                a.entries[c * n + j] *= &piv;
                inv.entries[c * n + j] *= &piv;
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let da = &f * a.get(c, j);
                    let di = &f * inv.get(c, j);
                    a.entries[i * n + j] -= da;
                    inv.entries[i * n + j] -= di;
                }
            }
        }
        Ok(inv)
    }

    /// True if every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Largest absolute numerator or denominator, as a size indicator.
    pub fn height(&self) -> BigInt {
        self.entries.iter().map(|x| x.numer().abs().max(x.denom().clone())).max().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Matrices act on column vectors, so `a.then(b)` (act by `a`, then by `b`)
/// is the matrix product `b * a`.
impl GroupElement for RationalMatrix {
    fn then(&self, other: &Self) -> Self {
        other.mul(self).expect("square matrices of equal size")
    }

    fn inverse(&self) -> Self {
        RationalMatrix::inverse(self).expect("group elements are invertible")
    }

    fn is_identity(&self) -> bool {
        RationalMatrix::is_identity(self)
    }

    fn identity_like(&self) -> Self {
        RationalMatrix::identity(self.rows)
    }
}

/// Parses whitespace-separated rationals `p` or `p/q`.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(token.parse().ok()?)),
    }
}

/// Parses square matrices written one row per line, entries separated by
/// whitespace, consecutive matrices separated by blank lines. `#` starts a
/// comment line. Errors carry 1-based line numbers.
pub fn parse_matrices(text: &str) -> Result<Vec<RationalMatrix>, (usize, String)> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut start = 0;
    let flush = |rows: &mut Vec<Vec<BigRational>>, start: usize, out: &mut Vec<RationalMatrix>| {
        if rows.is_empty() {
            return Ok(());
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err((start, format!("matrix starting here is not square ({n} rows)")));
        }
        let entries = rows.drain(..).flatten().collect();
        out.push(RationalMatrix::new(n, n, entries).expect("n*n entries"));
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('#') {
            continue;
        }
        if t.is_empty() {
            flush(&mut rows, start, &mut out)?;
            continue;
        }
        if rows.is_empty() {
            start = i + 1;
        }
        let row = t
            .split_whitespace()
            .map(|tok| parse_rational(tok).ok_or_else(|| (i + 1, format!("bad rational `{tok}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    flush(&mut rows, start, &mut out)?;
    Ok(out)
}
