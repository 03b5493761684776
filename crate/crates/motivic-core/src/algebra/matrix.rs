//! Dense matrices over any [`Ring`].
//!
//! Determinants use cofactor expansion: every use in this crate is at desk
//! scale (at most ~8 rows), and cofactor expansion needs nothing from the
//! coefficient ring beyond `+`, `-`, `*`.

use std::fmt;

use super::Ring;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    /// Row-major construction; `data.len()` must equal `rows * cols` and be
    /// non-empty.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn identity(n: usize, sample: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn zero(rows: usize, cols: usize, sample: &T) -> Self {
        let z = sample.zero_like();
        Matrix::new(rows, cols, vec![z; rows * cols])
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

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// A sample entry, for recovering ring context.
    pub fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|e| f(e)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|e| e.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = self.data[0].zero_like();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Kronecker (tensor) product: block `(i,j)` is `self[i][j] * rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            let (bi, ri) = (i / rhs.rows, i % rhs.rows);
            let (bj, rj) = (j / rhs.cols, j % rhs.cols);
            self.at(bi, bj).mul(rhs.at(ri, rj))
        })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let zero = self.data[0].zero_like();
        Matrix::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                rhs.at(i - self.rows, j - self.cols).clone()
            } else {
                zero.clone()
            }
        })
    }

    /// The square submatrix indexed by `rows` x `cols` position lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    /// Determinant by cofactor expansion along the first column.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        det_rec(&self.data, self.rows)
    }

    /// Adjugate matrix (transpose of cofactors), satisfying
    /// `self * adj = det * id` over any commutative ring.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1, &self.data[0]);
        }
        Matrix::from_fn(n, n, |i, j| {
            // cofactor C_{j,i}
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.submatrix(&rows, &cols).det();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
    }
}

fn det_rec<T: Ring>(data: &[T], n: usize) -> T {
    if n == 1 {
        return data[0].clone();
    }
    if n == 2 {
        return data[0].mul(&data[3]).sub(&data[1].mul(&data[2]));
    }
    let mut acc = data[0].zero_like();
    for i in 0..n {
        let c = &data[i * n];
        if c.is_zero() {
            continue;
        }
        // minor: drop row i and column 0
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for cidx in 1..n {
                minor.push(data[r * n + cidx].clone());
            }
        }
        let m = det_rec(&minor, n - 1);
        let term = c.mul(&m);
        acc = if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{}){:?}", self.rows, self.cols, self.data)
    }
}
