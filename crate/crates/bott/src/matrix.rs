//! The matrix encoding of a Bott manifold.
//!
//! A stage-`n` Bott manifold is encoded by a strictly upper triangular
//! integer matrix `A`.  Row indices are the "superscript" and column indices
//! the "subscript" of the classical notation: `entry(i, j)` is the
//! coefficient of the generator `x_i` in the twisting class `alpha_j` of
//! stage `j`.  All indices in the public API are 1-based.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Int;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct BottMatrix {
    n: usize,
    // row-major n x n; entries[i][j] == 0 whenever i >= j (0-based)
    entries: Vec<Vec<Int>>,
}

impl BottMatrix {
    /// Validates squareness, `n >= 1` and strict upper triangularity.
    pub fn new(entries: Vec<Vec<Int>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::ZeroStage);
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "expected {} columns, found {}",
                    n,
                    row.len()
                )));
            }
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate().take(i + 1) {
                if !v.is_zero() {
                    return Err(Error::NotUpperTriangular { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(BottMatrix { n, entries })
    }

    /// The zero matrix; encodes the product of `n` projective lines.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "stage must be at least 1");
        BottMatrix {
            n,
            entries: vec![vec![Int::zero(); n]; n],
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from the strictly-upper entries listed row by row:
    /// positions `(1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n)`.
    pub fn from_upper_entries(n: usize, vals: &[Int]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroStage);
        }
        let expect = n * (n - 1) / 2;
        if vals.len() != expect {
            return Err(Error::InvalidInput(format!(
                "expected {} upper entries for stage {}, found {}",
                expect,
                n,
                vals.len()
            )));
        }
        let mut m = BottMatrix::zero(n);
        let mut k = 0;
        for i in 1..n {
            for j in (i + 1)..=n {
                m.entries[i - 1][j - 1] = vals[k].clone();
                k += 1;
            }
        }
        Ok(m)
    }

    pub fn stage(&self) -> usize {
        self.n
    }

    /// Entry `A^i_j` (1-based).  Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> &Int {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.entries[i - 1][j - 1]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Int) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                n: self.n,
            });
        }
        if i >= j && !v.is_zero() {
            return Err(Error::NotUpperTriangular { i, j });
        }
        self.entries[i - 1][j - 1] = v;
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.entries
    }

    /// The coefficients of `alpha_j` as a length-`n` vector (entries `i >= j`
    /// are zero).
    pub fn alpha_column(&self, j: usize) -> Result<Vec<Int>> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok((1..=self.n).map(|i| self.entry(i, j).clone()).collect())
    }

    /// True iff every coefficient of `alpha_j` is even.
    pub fn alpha_is_even(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.n);
        (1..j).all(|i| is_even(self.entry(i, j)))
    }

    /// True iff every entry is even.
    pub fn is_even(&self) -> bool {
        (1..=self.n).all(|j| self.alpha_is_even(j))
    }
}

pub(crate) fn is_even(v: &Int) -> bool {
    use num_integer::Integer;
    v.is_even()
}

impl std::fmt::Display for BottMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, row) in self.entries.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (l, v) in row.iter().enumerate() {
                if l > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_stage_zero() {
        assert!(matches!(BottMatrix::new(vec![]), Err(Error::ZeroStage)));
    }

    #[test]
    fn rejects_lower_entries() {
        let err = BottMatrix::from_rows(&[&[0, 1], &[1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotUpperTriangular { i: 2, j: 1 }));
        let err = BottMatrix::from_rows(&[&[1, 0], &[0, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotUpperTriangular { i: 1, j: 1 }));
    }

    #[test]
    fn stage_one_is_allowed() {
        let m = BottMatrix::from_rows(&[&[0]]).unwrap();
        assert_eq!(m.stage(), 1);
        assert!(m.is_even());
    }

    #[test]
    fn upper_entries_order_is_row_major() {
        let vals: Vec<Int> = [1, 2, 3].iter().map(|&v| Int::from(v)).collect();
        let m = BottMatrix::from_upper_entries(3, &vals).unwrap();
        assert_eq!(m.entry(1, 2), &Int::from(1));
        assert_eq!(m.entry(1, 3), &Int::from(2));
        assert_eq!(m.entry(2, 3), &Int::from(3));
    }

    #[test]
    fn parity_queries() {
        let m = BottMatrix::from_rows(&[&[0, 2, 1], &[0, 0, 2], &[0, 0, 0]]).unwrap();
        assert!(m.alpha_is_even(1));
        assert!(m.alpha_is_even(2));
        assert!(!m.alpha_is_even(3));
        assert!(!m.is_even());
    }
}
