use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Builds an [`IntMatrix`] from nested row literals.
///
/// ```
/// let m = torus_cancel::int_matrix![[2, 1], [5, 3]];
/// assert_eq!(m.determinant().to_string(), "1");
/// ```
#[macro_export]
macro_rules! int_matrix {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::intmat::IntMatrix::from_rows(vec![$(vec![$(::num_bigint::BigInt::from($x)),*]),*])
            .expect("rows of equal length")
    };
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            data.extend(row.into_iter().map(Into::into));
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt>>(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e.into();
        }
        m
    }

    /// Column vector.
    pub fn column<T: Into<BigInt>>(entries: Vec<T>) -> Self {
        let n = entries.len();
        IntMatrix {
            rows: n,
            cols: 1,
            data: entries.into_iter().map(Into::into).collect(),
        }
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

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::Shape(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix::new(self.rows + other.rows, cols, data)
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out[(i - r0, j - c0)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Principal submatrix on the given indices, in order.
    pub fn select(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics on a non-square matrix.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                let piv = a[(rank, c)].clone();
                let g = f.gcd(&piv);
                let (mf, mp) = (&f / &g, &piv / &g);
                for j in c..a.cols {
                    let v = &a[(i, j)] * &mp - &a[(rank, j)] * &mf;
                    a[(i, j)] = v;
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * factor;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * factor;
            self[(r, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

/// Renders as `[[a,b],[c,d]]`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Square integer matrix with determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix(IntMatrix);

impl UnimodularMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "unimodular matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let det = m.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(UnimodularMatrix(m))
    }

    pub(crate) fn new_unchecked(m: IntMatrix) -> Self {
        debug_assert!(m.determinant().abs().is_one());
        UnimodularMatrix(m)
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix(IntMatrix::identity(n))
    }

    /// `I + s·e_ij`, i ≠ j.
    pub fn transvection(n: usize, i: usize, j: usize, s: i64) -> Self {
        assert_ne!(i, j);
        let mut m = IntMatrix::identity(n);
        m[(i, j)] = BigInt::from(s);
        UnimodularMatrix(m)
    }

    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut m = IntMatrix::identity(n);
        m.swap_rows(i, j);
        UnimodularMatrix(m)
    }

    pub fn negation(n: usize, i: usize) -> Self {
        let mut m = IntMatrix::identity(n);
        m[(i, i)] = BigInt::from(-1);
        UnimodularMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_inner(self) -> IntMatrix {
        self.0
    }

    pub fn determinant(&self) -> BigInt {
        self.0.determinant()
    }

    pub fn mul(&self, rhs: &UnimodularMatrix) -> Result<UnimodularMatrix> {
        Ok(UnimodularMatrix(self.0.mul(&rhs.0)?))
    }

    /// Exact inverse; the Hermite form of a unimodular matrix is the identity,
    /// so the accumulated row transform is the inverse.
    pub fn inverse(&self) -> UnimodularMatrix {
        let (h, u) = super::hermite::hermite_normal_form(&self.0);
        debug_assert_eq!(h, IntMatrix::identity(self.dim()));
        u
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl AsRef<IntMatrix> for UnimodularMatrix {
    fn as_ref(&self) -> &IntMatrix {
        &self.0
    }
}
