//! Dense matrices over exact rationals, plus Gaussian elimination.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Signed, Zero};

/// Row-major dense matrix of [`Rational`] entries. Always nonempty.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix must have at least one row and one column".into(),
            ));
        }
        Ok(Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(n, n)?;
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Matrix> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch(
                "matrix must have at least one row and one column".into(),
            ));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "all matrix rows must have the same length".into(),
            ));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-literal constructor, mainly for tests and fixed gadgets.
    pub fn from_int_rows<const N: usize>(rows: &[[i64; N]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
        )
        .expect("integer literal matrix is rectangular and nonempty")
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

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows).expect("transpose of nonempty matrix");
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    /// `A y` for a column vector `y`.
    pub fn mul_vec(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns but vector has {} entries",
                self.cols,
                y.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(y)
                    .map(|(a, v)| a * v)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    /// `x^T A` for a column vector `x`, returned as a plain vector.
    pub fn vec_mul(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows but vector has {} entries",
                self.rows,
                x.len()
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.at(i, j) * &x[i])
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let ay = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows but vector has {} entries",
                self.rows,
                x.len()
            )));
        }
        Ok(x.iter()
            .zip(&ay)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "matrix addition requires equal shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "matrix subtraction requires equal shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Outer product `c d^T`.
    pub fn outer(c: &[Rational], d: &[Rational]) -> Result<Matrix> {
        let mut m = Matrix::zeros(c.len(), d.len())?;
        for i in 0..c.len() {
            for j in 0..d.len() {
                *m.at_mut(i, j) = &c[i] * &d[j];
            }
        }
        Ok(m)
    }

    pub fn min_entry(&self) -> &Rational {
        self.data.iter().min().expect("matrix is nonempty")
    }

    pub fn max_entry(&self) -> &Rational {
        self.data.iter().max().expect("matrix is nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn all_positive(&self) -> bool {
        self.data.iter().all(|v| v.is_positive())
    }
}

/// Outcome of solving `A z = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// No solution.
    Inconsistent,
    /// Consistent with at least one free variable.
    Underdetermined,
}

/// Gaussian elimination on the augmented system `[A | b]`. `A` need not be
/// square; uniqueness means the column rank equals the number of unknowns.
pub fn solve_linear_system(a: &Matrix, b: &[Rational]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but rhs has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let rows = a.rows();
    let cols = a.cols();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rational> = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, src);
        let inv = aug[pivot_row][col].clone().recip();
        for v in aug[pivot_row][col..].iter_mut() {
            *v *= &inv;
        }
        let prow: Vec<Rational> = aug[pivot_row][col..].to_vec();
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for (k, pval) in prow.iter().enumerate() {
                    let delta = &factor * pval;
                    aug[r][col + k] -= delta;
                }
            }
        }
        pivot_col_of_row.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    let rank = pivot_row;
    for r in rank..rows {
        if !aug[r][cols].is_zero() {
            return Ok(LinearSolution::Inconsistent);
        }
    }
    if rank < cols {
        return Ok(LinearSolution::Underdetermined);
    }
    let mut solution = vec![Rational::zero(); cols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        solution[col] = aug[r][cols].clone();
    }
    Ok(LinearSolution::Unique(solution))
}
