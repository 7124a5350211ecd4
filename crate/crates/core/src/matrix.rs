//! Dense matrices over an exact field.
//!
//! Rank, determinant and independence tests use fraction-free (Bareiss)
//! elimination: over the rationals every row is first scaled to integer
//! entries, after which all intermediate values stay integral and each
//! division is exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    nrows: usize,
    ncols: usize,
    data: Vec<F>,
}

/// Outcome of a fraction-free elimination pass.
struct Echelon {
    rank: usize,
    pivots: Vec<usize>,
    /// Parity of the row swaps performed.
    swaps_odd: bool,
}

fn bareiss<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Echelon {
    for row in rows.iter_mut() {
        F::clear_denominators(row);
    }
    let nrows = rows.len();
    let mut prev = F::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut swaps_odd = false;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps_odd = !swaps_odd;
        }
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for k in (c + 1)..ncols {
                // row[k] = (piv * row[k] - lead * pivot_row[k]) / prev
                let mut v = piv.clone() * row[k].clone();
                if !lead.is_zero() && !pivot_row[k].is_zero() {
                    v -= &(lead.clone() * pivot_row[k].clone());
                }
                row[k] = v.exact_div(&prev);
            }
            row[c] = F::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rank: r,
        pivots,
        swaps_odd,
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![F::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `ncols`.
    pub fn from_rows(rows: Vec<Vec<F>>, ncols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ArityMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { nrows, ncols, data })
    }

    /// Integer matrix embedded in `F`; panics on ragged rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
            .collect();
        Self::from_rows(rows, ncols).expect("ragged integer matrix")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.rows().map(<[F]>::to_vec).collect()
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.ncols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: self.ncols,
            });
        }
        let rows = self
            .rows()
            .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Self::from_rows(rows, idx.len())
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        bareiss(&mut rows, self.ncols).rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<F> {
        if self.nrows != self.ncols {
            return Err(Error::ArityMismatch {
                expected: self.nrows,
                found: self.ncols,
            });
        }
        if self.nrows == 0 {
            return Ok(F::one());
        }
        // Scale rows to integers, remembering the factors; the last Bareiss
        // pivot is then the determinant of the scaled matrix.
        let mut rows = self.to_rows();
        let mut scale = F::one();
        for row in rows.iter_mut() {
            let before = row.iter().find(|c| !c.is_zero()).cloned();
            F::clear_denominators(row);
            if let Some(b) = before {
                let after = row.iter().find(|c| !c.is_zero()).cloned().unwrap();
                scale *= &(after / b);
            }
        }
        let n = self.nrows;
        let ech = bareiss(&mut rows, n);
        if ech.rank < n {
            return Ok(F::zero());
        }
        let mut d = rows[n - 1][n - 1].clone();
        if ech.swaps_odd {
            d = -d;
        }
        Ok(d / scale)
    }

    /// Whether the selected columns are linearly independent.
    pub fn columns_independent(&self, idx: &[usize]) -> Result<bool> {
        let sub = self.select_columns(idx)?;
        Ok(idx.len() <= self.nrows && sub.rank() == idx.len())
    }

    /// Reduced row echelon form with leftmost pivots, zero rows dropped.
    /// Returns the nonzero rows and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut rows = self.to_rows();
        let ech = bareiss(&mut rows, self.ncols);
        rows.truncate(ech.rank);
        // Back substitution over the field on the (small) echelon form.
        for (r, &c) in ech.pivots.iter().enumerate() {
            let inv = rows[r][c].inv();
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
            for above in 0..r {
                let f = rows[above][c].clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..self.ncols {
                    let t = f.clone() * rows[r][k].clone();
                    rows[above][k] -= &t;
                }
            }
        }
        let m = Matrix::from_rows(rows, self.ncols).expect("consistent widths");
        (m, ech.pivots)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.nrows != self.ncols {
            return Err(Error::SingularSubmatrix);
        }
        let n = self.nrows;
        let rows: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let aug = Matrix::from_rows(rows, 2 * n)?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularSubmatrix);
        }
        let inv = red.rows().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(inv, n)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::ArityMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.ncols + j;
                        out.data[idx] += &(a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use num_traits::Zero;

    fn q(rows: &[Vec<i64>]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rank_and_det() {
        let m = q(&[vec![1, 1, -1, 4], vec![1, -1, -1, 0]]);
        assert_eq!(m.rank(), 2);
        assert!(!m.columns_independent(&[0, 2]).unwrap());
        assert!(m.columns_independent(&[0, 1]).unwrap());
        assert!(m.columns_independent(&[0, 9]).is_err());
        let s = q(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(s.det().unwrap(), Rational::from_integer(6.into()));
        let z = q(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        assert!(z.det().unwrap().is_zero());
        let sw = q(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(sw.det().unwrap(), Rational::from_integer((-1).into()));
    }

    #[test]
    fn det_with_fractions() {
        let m = Matrix::from_rows(
            vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(2, 7)]],
            2,
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), rat(1, 7) - rat(1, 15));
    }

    #[test]
    fn rref_is_canonical() {
        let m = q(&[vec![2, 4, 0, 2], vec![1, 2, 1, 0], vec![3, 6, 1, 2]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r, q(&[vec![1, 2, 0, 1], vec![0, 0, 1, -1]]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[vec![1, 1], vec![1, -1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(q(&[vec![1, 1], vec![2, 2]]).inverse().is_err());
    }

    #[test]
    fn prime_field_rank() {
        type F7 = Fp<7>;
        let m: Matrix<F7> = Matrix::from_i64_rows(&[vec![1, 2], vec![4, 1]]);
        // det = 1 - 8 = -7 = 0 mod 7
        assert_eq!(m.rank(), 1);
        assert!(m.det().unwrap().is_zero());
    }
}
