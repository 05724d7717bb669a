//! Exact matrix arithmetic: reduced row echelon form, rank and rank
//! factorisation.
//!
//! Row reduction takes the first nonzero entry in column order as pivot and
//! scales pivots to exactly one, so results are deterministic and comparable
//! entry for entry. All-zero rows are dropped from the reduced form.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(
                format!("{} entries for {rows}x{cols}", rows * cols),
                data.len(),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(format!("{cols} columns"), format!("row {i} with {}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    /// Columns at the given indices, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(self.rows, cols.len(), |r, i| self.get(r, cols[i]).clone())
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }
}

impl<T: Zero + Clone> Matrix<T> {
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

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }
}

impl<T: ExactScalar> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn matmul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::dims(
                format!("{} rows on the right", self.cols),
                rhs.rows,
            ));
        }
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * rhs.cols + c;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Matrix<i8> {
    /// Lifts a small-integer matrix into an exact field.
    pub fn to_exact<T: ExactScalar>(&self) -> Matrix<T> {
        self.map(|&v| T::from_int(v as i64))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = cells[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|s| format!("{s:>width$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with zero rows removed.
#[derive(Clone, PartialEq, Debug)]
pub struct RrefResult<T> {
    pub rref: Matrix<T>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<T: ExactScalar> RrefResult<T> {
    /// True when every entry of the reduced form is `-1`, `0` or `1`.
    pub fn is_signed_binary(&self) -> bool {
        self.rref.as_slice().iter().all(|v| v.is_zero() || v.is_unit())
    }
}

pub fn rref<T: ExactScalar>(m: &Matrix<T>) -> RrefResult<T> {
    let (rows, cols) = m.shape();
    let mut work: Vec<Vec<T>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut lead = 0;

    for c in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(lead, p);

        let pivot = work[lead][c].clone();
        if !pivot.is_one() {
            for v in work[lead].iter_mut().filter(|v| !v.is_zero()) {
                *v = v.clone() / pivot.clone();
            }
        }

        let pivot_row = std::mem::take(&mut work[lead]);
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in work.iter_mut().enumerate() {
            if i == lead || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        }
        work[lead] = pivot_row;

        pivot_cols.push(c);
        lead += 1;
    }

    let rank = pivot_cols.len();
    work.truncate(rank);
    let data = work.into_iter().flatten().collect();
    RrefResult {
        rref: Matrix {
            rows: rank,
            cols,
            data,
        },
        rank,
        pivot_cols,
    }
}

pub fn rank<T: ExactScalar>(m: &Matrix<T>) -> usize {
    rref(m).rank
}

/// Factors `m = C * R` with `R = rref(m)` and `C` the pivot columns of `m`.
///
/// Applying `m` to a vector through the factors costs `rank(m)` scalings of
/// intermediate values instead of one per nonzero of `m`.
pub fn rank_factor<T: ExactScalar>(m: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let reduced = rref(m);
    if reduced.rank == 0 {
        return Err(Error::ZeroMatrix);
    }
    let c = m.select_columns(&reduced.pivot_cols);
    Ok((c, reduced.rref))
}

/// Stacks `b` below `a`.
pub fn vstack<T: Clone>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols != b.cols {
        return Err(Error::dims(format!("{} columns", a.cols), format!("{} columns", b.cols)));
    }
    let mut data = a.data.clone();
    data.extend_from_slice(&b.data);
    Ok(Matrix {
        rows: a.rows + b.rows,
        cols: a.cols,
        data,
    })
}

pub fn matvec_exact<T: ExactScalar>(m: &Matrix<T>, v: &[T]) -> Result<Vec<T>> {
    if v.len() != m.cols {
        return Err(Error::dims(format!("vector of length {}", m.cols), v.len()));
    }
    Ok(m
        .row_iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect())
}
