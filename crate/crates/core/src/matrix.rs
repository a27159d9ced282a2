//! Dense matrices with exact arithmetic.
//!
//! `Matrix<T>` is a plain row-major container with ring operations. The two
//! instantiations used throughout the crate are [`IntMatrix`] (machine
//! integers, for adjacency data whose entries stay tiny) and [`ExactMatrix`]
//! (arbitrary-precision rationals, for everything decision-relevant:
//! determinants, nullspaces, characteristic polynomials). There is no
//! floating point anywhere.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::Rational;

pub type ExactMatrix = Matrix<Rational>;
pub type IntMatrix = Matrix<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("color index {index} out of range for {count} matrices")]
    IndexOutOfRange { index: usize, count: usize },
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            data,
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

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)] == self[(c, r)]))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    /// Panics on an inner-dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = &self[(r, m)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(m, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(r, c)].clone();
                    out[(r, c)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + other[(r, c)].clone()
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + Sub<Output = T>,
{
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - other[(r, c)].clone()
        })
    }
}

impl<T: Clone + Neg<Output = T>> Matrix<T> {
    pub fn neg(&self) -> Self {
        self.map(|x| x.clone().neg())
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> ExactMatrix {
        self.map(|&x| Rational::from_integer(BigInt::from(x)))
    }
}

/// Result of Gauss-Jordan elimination.
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

impl ExactMatrix {
    /// Reduced row echelon form over the rationals.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                m.data.swap(pivot * m.cols + c, row * m.cols + c);
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = m[(row, c)].clone() * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - &factor * &m[(row, c)];
                    m[(r, c)] = v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Exact basis of `{x : Mx = 0}` as column vectors; `cols - rank` of them.
    pub fn nullspace_basis(&self) -> Vec<ExactMatrix> {
        let rref = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in rref.pivot_cols.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = ExactMatrix::zeros(self.cols, 1);
            vec[(free, 0)] = Rational::one();
            for (prow, &pcol) in rref.pivot_cols.iter().enumerate() {
                let v = -rref.matrix[(prow, free)].clone();
                vec[(pcol, 0)] = v;
            }
            basis.push(vec);
        }
        basis
    }

    /// Exact determinant by fraction-free Bareiss elimination. Denominators
    /// are cleared row by row first so the elimination runs over integers.
    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut denom = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut row_lcm = BigInt::one();
            for c in 0..n {
                row_lcm = row_lcm.lcm(self[(r, c)].denom());
            }
            let row = (0..n)
                .map(|c| {
                    let e = &self[(r, c)];
                    e.numer() * (&row_lcm / e.denom())
                })
                .collect();
            denom *= &row_lcm;
            m.push(row);
        }

        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != k {
                m.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::new(&m[n - 1][n - 1] * BigInt::from(sign), denom))
    }

    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let rref = aug.rref();
        if rref.pivot_cols.iter().take_while(|&&c| c < n).count() < n {
            return Err(LinalgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| {
            rref.matrix[(r, n + c)].clone()
        }))
    }

    /// Exact characteristic polynomial `det(xI - M)`, lowest degree first,
    /// computed by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<Polynomial, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        if n == 0 {
            return Ok(Polynomial::new(coeffs));
        }
        let identity = ExactMatrix::identity(n);
        let mut m = self.clone();
        for k in 1..=n {
            if k > 1 {
                let shifted = m.add(&identity.scale(&coeffs[n - k + 1]));
                m = self.mul(&shifted);
            }
            coeffs[n - k] = -(m.trace() / Rational::from_integer(BigInt::from(k as i64)));
        }
        Ok(Polynomial::new(coeffs))
    }
}

/// Trace of the product `mats[word[0]] * mats[word[1]] * ...`; the empty word
/// contributes the identity, so its trace is the common dimension.
pub fn word_trace(mats: &[ExactMatrix], word: &[usize]) -> Result<Rational, LinalgError> {
    let n = match mats.first() {
        Some(m) => {
            if !m.is_square() {
                return Err(LinalgError::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            m.rows()
        }
        None => 0,
    };
    for m in mats {
        if m.rows() != n || m.cols() != n {
            return Err(LinalgError::ShapeMismatch(n, n, m.rows(), m.cols()));
        }
    }
    for &c in word {
        if c >= mats.len() {
            return Err(LinalgError::IndexOutOfRange {
                index: c,
                count: mats.len(),
            });
        }
    }
    let Some((&first, rest)) = word.split_first() else {
        return Ok(Rational::from_integer(BigInt::from(n as i64)));
    };
    let mut acc = mats[first].clone();
    for &c in rest {
        acc = acc.mul(&mats[c]);
    }
    Ok(acc.trace())
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        let mut widths = vec![0usize; self.cols];
        for row in &rendered {
            for (c, s) in row.iter().enumerate() {
                widths[c] = widths[c].max(s.len());
            }
        }
        for row in &rendered {
            write!(f, "[")?;
            for (c, s) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s:>width$}", width = widths[c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}
