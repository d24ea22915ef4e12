use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
/// Empty shapes (0×n, n×0) are legal everywhere.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::validation(format!(
                "matrix data length {} does not match shape {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// Convenience constructor from nested rows; rows must be equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::validation("ragged rows in matrix literal"));
        }
        let entries = rows.iter().flatten().map(|&e| BigInt::from(e)).collect();
        Self::new(r, c, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::validation(format!(
                "shape mismatch in product: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        Ok(out)
    }

    /// Column j as a vector of length `rows`.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Result<IntMatrix> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::validation("column length mismatch"));
        }
        let mut m = IntMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        Ok(m)
    }

    /// Horizontal concatenation [self | other].
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::validation("row count mismatch in concatenation"));
        }
        let mut m = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::validation("vector length mismatch in apply"));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// The empty 0×0 matrix has determinant 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::validation("determinant of non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(idx(k, j), idx(p, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)];
                    // Bareiss: division is exact.
                    a[idx(i, j)] = num / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        Ok(sign * a[idx(n - 1, n - 1)].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Exact inverse of a unimodular matrix via the adjugate. Errors when
    /// the matrix is not unimodular (the inverse would not be integral).
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.determinant()?;
        if !det.abs().is_one() {
            return Err(Error::validation(format!(
                "matrix with determinant {det} has no integer inverse"
            )));
        }
        let n = self.rows;
        let mut inv = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ji, transposed into (i, j)
                let minor_entries: Vec<BigInt> = (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(move |c| self[(r, c)].clone())
                    })
                    .collect();
                let minor = IntMatrix::new(n.saturating_sub(1), n.saturating_sub(1), minor_entries)?;
                let mut cof = minor.determinant()?;
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                inv[(i, j)] = &cof * &det; // det = ±1, so this divides by det
            }
        }
        Ok(inv)
    }

    /// Parse the bracketed-rows text form, e.g. `[[0,-2],[-1,-1]]`.
    /// Whitespace is ignored. `[[]]`-style empty rows are rejected; the
    /// fully empty matrix is written `[]`.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                line: None,
                msg: format!("matrix must be enclosed in brackets: `{text}`"),
            })?;
        if body.is_empty() {
            return Ok(IntMatrix::zero(0, 0));
        }
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut rest = body;
        loop {
            let inner = rest.strip_prefix('[').ok_or_else(|| Error::Parse {
                line: None,
                msg: format!("expected `[` starting a row in `{text}`"),
            })?;
            let (row_src, tail) = inner.split_once(']').ok_or_else(|| Error::Parse {
                line: None,
                msg: format!("unterminated row in `{text}`"),
            })?;
            let row = row_src
                .split(',')
                .map(|tok| {
                    tok.parse::<i128>().map_err(|_| Error::Parse {
                        line: None,
                        msg: format!("invalid integer `{tok}` in matrix"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
            if tail.is_empty() {
                break;
            }
            rest = tail.strip_prefix(',').ok_or_else(|| Error::Parse {
                line: None,
                msg: format!("expected `,` between rows in `{text}`"),
            })?;
        }
        let c = rows[0].len();
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Parse {
                line: None,
                msg: format!("ragged rows in `{text}`"),
            });
        }
        let entries = rows.iter().flatten().map(|&e| BigInt::from(e)).collect();
        IntMatrix::new(rows.len(), c, entries)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let term = q * &self[(source, j)];
            self[(target, j)] += term;
        }
    }

    /// col[target] += q * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let term = q * &self[(i, source)];
            self[(i, target)] += term;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// Bracketed rows: `[[0,-2],[-1,-1]]`; the 0×0 matrix prints `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return write!(f, "[]");
        }
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]).unwrap());
    }

    #[test]
    fn determinant_bareiss() {
        let a = IntMatrix::from_rows(&[vec![0, -2], vec![-1, -1]]).unwrap();
        assert_eq!(a.determinant().unwrap(), BigInt::from(-2));
        let b = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]).unwrap();
        // Laplace by hand: 2*(1) - 0 + 1*(3) = 5
        assert_eq!(b.determinant().unwrap(), BigInt::from(5));
        assert_eq!(IntMatrix::zero(0, 0).determinant().unwrap(), BigInt::one());
        assert!(IntMatrix::identity(3).is_unimodular());
        assert!(!IntMatrix::zero(2, 2).is_unimodular());
    }

    #[test]
    fn parse_round_trip() {
        for src in ["[[0,-2],[-1,-1]]", "[[1]]", "[]", "[[1,2,3]]"] {
            let m = IntMatrix::parse(src).unwrap();
            assert_eq!(m.to_string(), src);
        }
        let spaced = IntMatrix::parse(" [[ 1, -2 ], [3, 4]] ").unwrap();
        assert_eq!(spaced.to_string(), "[[1,-2],[3,4]]");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(IntMatrix::parse("[[1,2],[3]]").is_err());
        assert!(IntMatrix::parse("1,2").is_err());
        assert!(IntMatrix::parse("[[1,x]]").is_err());
    }

    #[test]
    fn unimodular_inverse() {
        let u = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = u.inverse_unimodular().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert_eq!(inv.mul(&u).unwrap(), IntMatrix::identity(2));
        let not_uni = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(not_uni.inverse_unimodular().is_err());
    }

    #[test]
    fn empty_shapes_are_legal() {
        let e = IntMatrix::zero(0, 3);
        let f = IntMatrix::zero(3, 0);
        assert_eq!(e.mul(&f).unwrap(), IntMatrix::zero(0, 0));
        let g = f.mul(&e).unwrap();
        assert_eq!(g, IntMatrix::zero(3, 3));
    }
}
