use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ragged rows: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn scalar(n: usize, value: &ExactScalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self, MatrixError> {
        let expected = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * expected);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != expected {
                return Err(MatrixError::Ragged { row, len: r.len(), expected });
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols: expected, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::scalar::int(x)).collect())
                .collect(),
        )
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<ExactScalar>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Whether every listed column is identically zero.
    pub fn columns_are_zero(&self, cols: &[usize]) -> bool {
        cols.iter().all(|&c| (0..self.rows).all(|r| self.get(r, c).is_zero()))
    }

    /// Whether `self` and `other` agree on the listed columns.
    pub fn agrees_on_columns(&self, other: &ExactMatrix, cols: &[usize]) -> bool {
        self.shape() == other.shape()
            && cols
                .iter()
                .all(|&c| (0..self.rows).all(|r| self.get(r, c) == other.get(r, c)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn try_add(&self, other: &ExactMatrix) -> Result<Self, MatrixError> {
        self.check_same(other, "add")?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &ExactMatrix) -> Result<Self, MatrixError> {
        self.check_same(other, "sub")?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Product skipping zero entries of the left factor; generator matrices are
    /// very sparse, so this is far cheaper than the naive triple loop.
    pub fn try_mul(&self, other: &ExactMatrix) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
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
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok(self.apply(v))
    }

    /// Matrix-vector product. Panics on a length mismatch.
    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        let mut out = vec![ExactScalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Kronecker product; the index of `(i, j)` is `i * other.rows + j`.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(j, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + j, k * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &ExactMatrix) -> Result<Self, MatrixError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).fold(ExactScalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Rank by rational elimination; rows already zero in the pivot column are skipped,
    /// so banded matrices stay cheap.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<ExactScalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut().filter(|row| !row[c].is_zero()) {
                let factor = &row[c] / &pivot_row[c];
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &factor * &pivot_row[j];
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Exact basis of `{v : self * v = 0}`; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        let ech = echelon_integer(self);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| pivot_set[c].is_none()) {
            let mut x = vec![ExactScalar::zero(); self.cols];
            x[free] = ExactScalar::one();
            for (r, &p) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[r];
                let mut acc = ExactScalar::zero();
                for c in p + 1..self.cols {
                    if !row[c].is_zero() && !x[c].is_zero() {
                        acc += BigRational::from_integer(row[c].clone()) * &x[c];
                    }
                }
                x[p] = -acc / BigRational::from_integer(row[p].clone());
            }
            basis.push(x);
        }
        basis
    }

    fn check_same(&self, other: &ExactMatrix, op: &'static str) -> Result<(), MatrixError> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }
}

struct IntegerEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Clears denominators row by row, then runs fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the integer matrix, so the divisions
/// by the previous pivot are exact.
fn echelon_integer(m: &ExactMatrix) -> IntegerEchelon {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..m.cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            // columns left of c in this row are already zero
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    IntegerEchelon { rows, pivots }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-ExactScalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    #[test]
    fn zero_row_has_full_kernel() {
        let m = ExactMatrix::zeros(1, 2);
        assert_eq!(m.kernel_basis().len(), 2);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_minus_one_minus_one() {
        let m = ExactMatrix::from_i64(&[&[-1, -1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn kernel_with_fractions_and_skipped_pivot_column() {
        let m = ExactMatrix::from_rows(vec![
            vec![int(0), frac(1, 2), int(1), frac(-1, 3)],
            vec![int(0), int(1), int(2), int(5)],
        ])
        .unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = ExactMatrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).unwrap_err();
        assert!(matches!(err, MatrixError::Ragged { row: 1, .. }));
    }

    #[test]
    fn multiplication_dimensions_checked() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert_eq!(a.try_mul(&ExactMatrix::zeros(3, 1)).unwrap().shape(), (2, 1));
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        let b = ExactMatrix::from_i64(&[&[0, 5], &[6, 7]]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.get(2 + 1, 1), &int(3 * 7));
        assert_eq!(k.get(1, 2), &int(2 * 6));
    }
}
