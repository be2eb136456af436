//! Exact dense matrices and linear solving over a [`Scalar`] field.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixError<T> {
    NotSquare,
    /// Singular input, reported with its exact determinant (always zero for
    /// a genuinely singular square matrix; carried for the error message).
    Singular { determinant: T },
    DimensionMismatch,
}

impl<T: fmt::Debug> fmt::Display for MatrixError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare => write!(f, "matrix is not square"),
            MatrixError::Singular { determinant } => {
                write!(f, "singular matrix (determinant {:?})", determinant)
            }
            MatrixError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

impl<T: fmt::Debug> std::error::Error for MatrixError<T> {}

/// General solution of a (possibly non-square) exact linear system.
#[derive(Clone, Debug)]
pub struct LinearSolution<T> {
    /// One solution, `None` when the system is inconsistent.
    pub particular: Option<Vec<T>>,
    /// Basis of the homogeneous solution space.
    pub nullspace: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    acc = acc + self.get(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-full Gaussian elimination.
    pub fn determinant(&self) -> Result<T, MatrixError<T>> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Ok(T::zero());
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det = det * pv.clone();
            for r in (col + 1)..n {
                let factor = m.get(r, col).clone() / pv.clone();
                for c in col..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    *m.get_mut(r, c) = v;
                }
            }
        }
        Ok(det)
    }

    /// Solve a square nonsingular system exactly; a singular matrix is
    /// reported together with its exact determinant.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>, MatrixError<T>> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare);
        }
        if rhs.len() != self.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(MatrixError::Singular { determinant: det });
        }
        let sol = self.solve_general(rhs);
        Ok(sol.particular.expect("nonsingular system is consistent"))
    }

    /// Row-reduce an arbitrary system, returning a particular solution (or
    /// inconsistency) plus a nullspace basis. Pivoting picks the first
    /// nonzero entry, so the result is deterministic.
    pub fn solve_general(&self, rhs: &[T]) -> LinearSolution<T> {
        assert_eq!(rhs.len(), self.rows);
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !a.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..cols {
                    a.data.swap(p * cols + c, row * cols + c);
                }
                b.swap(p, row);
            }
            let pv = a.get(row, col).clone();
            for c in 0..cols {
                let v = a.get(row, c).clone() / pv.clone();
                *a.get_mut(row, c) = v;
            }
            b[row] = b[row].clone() / pv;
            for r in 0..rows {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..cols {
                    let v = a.get(r, c).clone() - factor.clone() * a.get(row, c).clone();
                    *a.get_mut(r, c) = v;
                }
                b[r] = b[r].clone() - factor * b[row].clone();
            }
            pivot_cols.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        let consistent = (row..rows).all(|r| b[r].is_zero());
        let particular = consistent.then(|| {
            let mut x = vec![T::zero(); cols];
            for (i, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = b[i].clone();
            }
            x
        });
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let nullspace = free_cols
            .iter()
            .map(|&fc| {
                let mut v = vec![T::zero(); cols];
                v[fc] = T::one();
                for (i, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -a.get(i, fc).clone();
                }
                v
            })
            .collect();
        LinearSolution {
            particular,
            nullspace,
        }
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rati, RatMatrix};

    #[test]
    fn identity_solve() {
        let m = RatMatrix::identity(2);
        assert_eq!(m.solve(&[rati(3), rati(7)]).unwrap(), vec![rati(3), rati(7)]);
    }

    #[test]
    fn singular_reports_zero_determinant() {
        let m = RatMatrix::from_rows(vec![vec![rati(1), rati(1)], vec![rati(1), rati(1)]]);
        match m.solve(&[rati(1), rati(2)]) {
            Err(MatrixError::Singular { determinant }) => assert_eq!(determinant, rati(0)),
            other => panic!("expected singular error, got {:?}", other),
        }
    }

    #[test]
    fn exact_solution_round_trip() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 3), rati(2)],
            vec![rat(2, 3), rat(1, 3)],
        ]);
        let rhs = vec![rati(8), rati(2)];
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
    }

    #[test]
    fn general_solver_nullspace_and_inconsistency() {
        // x + y = 1 has a one-dimensional solution family
        let m = RatMatrix::from_rows(vec![vec![rati(1), rati(1)]]);
        let s = m.solve_general(&[rati(1)]);
        assert!(s.particular.is_some());
        assert_eq!(s.nullspace.len(), 1);
        // inconsistent stacked system
        let m2 = RatMatrix::from_rows(vec![vec![rati(1), rati(1)], vec![rati(1), rati(1)]]);
        let s2 = m2.solve_general(&[rati(1), rati(2)]);
        assert!(s2.particular.is_none());
    }

    #[test]
    fn determinant_3x3() {
        let m = RatMatrix::from_rows(vec![
            vec![rati(2), rati(0), rati(1)],
            vec![rati(1), rati(1), rati(0)],
            vec![rati(0), rati(3), rati(1)],
        ]);
        assert_eq!(m.determinant().unwrap(), rati(5));
    }
}
