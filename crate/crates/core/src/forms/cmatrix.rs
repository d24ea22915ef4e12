use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix, row-major. Sizes here are tiny (representation
/// matrices, projections), so everything is dense and straightforward.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    a: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            a: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::validation("complex matrix must be square"));
        }
        Ok(CMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let v = self[(i, k)];
                if v == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += v * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        CMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        CMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> CMatrix {
        self.scale(-Complex64::ONE)
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// xy − yx.
    pub fn commutator(x: &CMatrix, y: &CMatrix) -> CMatrix {
        x.mul(y).sub(&y.mul(x))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series.
    pub fn exp(&self) -> CMatrix {
        let norm = self.max_abs() * self.n as f64;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));
        let mut sum = CMatrix::identity(self.n);
        let mut term = CMatrix::identity(self.n);
        for k in 1..=24 {
            term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }

    /// Unitary whose columns are the Gram–Schmidt orthonormalization of this
    /// matrix's columns. Fails on (numerically) rank-deficient input.
    pub fn gram_schmidt_unitary(&self) -> Result<CMatrix> {
        let n = self.n;
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)]).collect())
            .collect();
        for j in 0..n {
            for k in 0..j {
                let dot: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let d = dot * cols[k][i];
                    cols[j][i] -= d;
                }
            }
            let norm: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                return Err(Error::guard(
                    "Gram-Schmidt input is numerically rank-deficient",
                ));
            }
            for i in 0..n {
                cols[j][i] /= norm;
            }
        }
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            for i in 0..n {
                out[(i, j)] = cols[j][i];
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let v = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Solve A·x = b for a complex matrix given as rows (not necessarily
/// square) by Gaussian elimination with partial pivoting. Returns None if
/// the system is inconsistent beyond `tol`.
pub fn solve_linear_complex(
    a: &[Vec<Complex64>],
    b: &[Complex64],
    tol: f64,
) -> Option<Vec<Complex64>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).max_by(|&x, &y| {
            m[x][c]
                .norm()
                .partial_cmp(&m[y][c].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            break;
        };
        if m[p][c].norm() <= tol {
            continue;
        }
        m.swap(r, p);
        let inv = Complex64::ONE / m[r][c];
        for j in c..=cols {
            m[r][j] *= inv;
        }
        for i in 0..rows {
            if i != r && m[i][c].norm() > 0.0 {
                let f = m[i][c];
                for j in c..=cols {
                    let d = f * m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent rows?
    for row in m.iter().skip(r) {
        if row[cols].norm() > tol {
            return None;
        }
    }
    let mut x = vec![Complex64::ZERO; cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}
