//! Dense matrices over Q(t).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraError, RatFunc};

/// Row-major dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

/// Reduced row echelon form together with its pivot data.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, entries: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = RatFunc::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<RatFunc>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape { expected: (rows, cols), found: entries.len() });
        }
        Ok(FieldMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(AlgebraError::Shape { expected: (r, c), found: bad.len() });
        }
        Ok(FieldMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// 1x1 matrix holding `x`.
    pub fn scalar(x: RatFunc) -> Self {
        FieldMatrix { rows: 1, cols: 1, entries: vec![x] }
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

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        FieldMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FieldMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &FieldMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &self[(r0 + i, c0 + j)] + &block[(i, j)];
                self[(r0 + i, c0 + j)] = v;
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FieldMatrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FieldMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(i, j)] = self[(r, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> FieldMatrix {
        self.transpose().select_rows(idx).transpose()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
        if self.rows != rhs.rows {
            return Err(AlgebraError::DimensionMismatch { left: (self.rows, self.cols), right: (rhs.rows, rhs.cols) });
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, rhs);
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch { left: (self.rows, self.cols), right: (rhs.rows, rhs.cols) });
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
                    if b.is_zero() {
                        continue;
                    }
                    let v = &out[(i, j)] + &(a * b);
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        rhs: &FieldMatrix,
        f: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Result<FieldMatrix, AlgebraError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(AlgebraError::DimensionMismatch { left: (self.rows, self.cols), right: (rhs.rows, rhs.cols) });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(FieldMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn checked_add(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] - &(&factor * &m[(row, j)]);
                    m[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Determinant by Gaussian elimination with exact division.
    pub fn det(&self) -> Result<RatFunc, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = RatFunc::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(RatFunc::zero());
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..n {
                    if m[(col, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] - &(&factor * &m[(col, j)]);
                    m[(r, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse via Gauss-Jordan on `[self | I]`.
    pub fn inverse(&self) -> Result<FieldMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?.rref();
        if aug.pivots.iter().take(n).copied().ne(0..n) || aug.rank < n {
            return Err(AlgebraError::Singular);
        }
        Ok(aug.matrix.block(0, n, n, n))
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = RatFunc;
    fn index(&self, (i, j): (usize, usize)) -> &RatFunc {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RatFunc {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the checked_* methods on
// untrusted shapes.
impl<'a> Mul<&'a FieldMatrix> for &'a FieldMatrix {
    type Output = FieldMatrix;
    fn mul(self, rhs: &FieldMatrix) -> FieldMatrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Add<&'a FieldMatrix> for &'a FieldMatrix {
    type Output = FieldMatrix;
    fn add(self, rhs: &FieldMatrix) -> FieldMatrix {
        self.checked_add(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Sub<&'a FieldMatrix> for &'a FieldMatrix {
    type Output = FieldMatrix;
    fn sub(self, rhs: &FieldMatrix) -> FieldMatrix {
        self.checked_sub(rhs).expect("matrix shapes agree")
    }
}

impl Neg for &FieldMatrix {
    type Output = FieldMatrix;
    fn neg(self) -> FieldMatrix {
        FieldMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn c(v: &[i64]) -> RatFunc {
        RatFunc::from_poly(Polynomial::from_ints(v))
    }

    /// The boundary matrix C_2 -> C_1 of the standard trefoil example.
    fn trefoil_d2() -> FieldMatrix {
        FieldMatrix::from_rows(vec![
            vec![c(&[0, -1]), c(&[-1]), c(&[0])],
            vec![c(&[1]), c(&[1]), c(&[1])],
            vec![c(&[0]), c(&[0, -1]), c(&[-1])],
            vec![c(&[-1]), c(&[0]), c(&[0, -1])],
        ])
        .unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = FieldMatrix::identity(3).rref();
        assert!(r.matrix.is_identity());
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero() {
        assert_eq!(FieldMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn trefoil_boundary_has_full_column_rank() {
        assert_eq!(trefoil_d2().rank(), 3);
    }

    #[test]
    fn trefoil_even_to_odd_determinant() {
        let inv = RatFunc::new(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[-1, 1])).unwrap();
        let g1 = FieldMatrix::from_rows(vec![vec![inv], vec![c(&[0])], vec![c(&[0])], vec![c(&[0])]]).unwrap();
        let m = trefoil_d2().hstack(&g1).unwrap();
        let expected = RatFunc::new(Polynomial::from_ints(&[1, -1, 1]), Polynomial::from_ints(&[1, -1])).unwrap();
        assert_eq!(m.det().unwrap(), expected);
    }

    #[test]
    fn det_identity_and_repeated_row() {
        assert_eq!(FieldMatrix::identity(4).det().unwrap(), RatFunc::one());
        let m = FieldMatrix::from_rows(vec![vec![c(&[1, 1]), c(&[2])], vec![c(&[1, 1]), c(&[2])]]).unwrap();
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(trefoil_d2().det(), Err(AlgebraError::NotSquare { rows: 4, cols: 3 }));
    }

    #[test]
    fn inverse_round_trip() {
        let m = FieldMatrix::from_rows(vec![vec![c(&[0, 1]), c(&[1])], vec![c(&[1]), c(&[1, 1])]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(FieldMatrix::zeros(2, 2).inverse(), Err(AlgebraError::Singular));
    }

    #[test]
    fn shape_errors() {
        assert!(FieldMatrix::from_entries(2, 2, vec![RatFunc::one()]).is_err());
        assert!(trefoil_d2().checked_mul(&trefoil_d2()).is_err());
    }
}
