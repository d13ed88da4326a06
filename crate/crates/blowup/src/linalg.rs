//! Exact linear algebra over the rationals: fraction-free Bareiss
//! determinants and Gaussian elimination for small dense systems.

use crate::error::{Error, Result};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense matrix of rationals (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParams("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The square submatrix picking the given columns (all rows), in the
    /// given column order.
    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Matrix product.
    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidParams("matrix dimension mismatch".into()));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant: clear row denominators, run fraction-free Bareiss
    /// over the integers, divide back.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::InvalidParams("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self[(i, j)].denom());
            }
            let row: Vec<BigInt> = (0..n)
                .map(|j| self[(i, j)].numer() * (&lcm / self[(i, j)].denom()))
                .collect();
            scale *= &lcm;
            m.push(row);
        }
        Ok(Rat::new(bareiss_int_det(m), scale))
    }

    /// Solve A·x = b for square nonsingular A.  Returns `None` when A is
    /// singular.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::InvalidParams("solve: dimension mismatch".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero());
            let Some(pr) = pivot else {
                return Ok(None);
            };
            if pr != col {
                for j in 0..n {
                    let tmp = a[(pr, j)].clone();
                    a[(pr, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                rhs.swap(pr, col);
            }
            let inv = {
                let p = a[(col, col)].clone();
                Rat::one() / p
            };
            for j in col..n {
                let t = &a[(col, j)] * &inv;
                a[(col, j)] = t;
            }
            let t = &rhs[col] * &inv;
            rhs[col] = t;
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in col..n {
                    let t = &a[(i, j)] - &f * &a[(col, j)];
                    a[(i, j)] = t;
                }
                let t = &rhs[i] - &f * &rhs[col];
                rhs[i] = t;
            }
        }
        Ok(Some(rhs))
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let pivot = (rank..r).find(|&i| !a[(i, col)].is_zero());
            let Some(pr) = pivot else { continue };
            if pr != rank {
                for j in 0..c {
                    let tmp = a[(pr, j)].clone();
                    a[(pr, j)] = a[(rank, j)].clone();
                    a[(rank, j)] = tmp;
                }
            }
            for i in (rank + 1)..r {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &a[(rank, col)];
                for j in col..c {
                    let t = &a[(i, j)] - &f * &a[(rank, j)];
                    a[(i, j)] = t;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free Bareiss determinant of an integer matrix.
fn bareiss_int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = t;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}
