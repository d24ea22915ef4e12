//! Smith normal form and the lattice utilities built on it.
//!
//! `snf` produces U·M·V = S with S diagonal, S₁₁ | S₂₂ | …, and U, V
//! unimodular. Everything downstream (kernels, images, cokernels, lattice
//! membership) reduces to it.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Result of `snf`: S = U·M·V with U, V unimodular and S in Smith form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// The nonzero diagonal entries d₁ | d₂ | … (all positive).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form of an arbitrary integer matrix (any shape, including
/// empty). Total: never fails.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());

    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = select_pivot(&s, t) else {
            break; // remaining submatrix is zero
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row t and column t; each reduction pass strictly shrinks
        // |pivot| when a remainder shows up, so this terminates.
        loop {
            let mut clean = true;
            for i in (t + 1..s.rows()).chain(0..t) {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                if !q.is_zero() {
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
                if !s[(i, t)].is_zero() {
                    // Remainder smaller than the pivot: swap it up and redo.
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in (t + 1..s.cols()).chain(0..t) {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                if !q.is_zero() {
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // Divisibility sweep: the pivot must divide every entry of the
        // untouched block. Fold an offending row in and re-eliminate.
        let mut redo = false;
        'scan: for i in t + 1..s.rows() {
            for j in t + 1..s.cols() {
                if (&s[(i, j)] % &s[(t, t)]).is_zero() {
                    continue;
                }
                let one = BigInt::from(1);
                s.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                redo = true;
                break 'scan;
            }
        }
        if redo {
            continue; // re-run elimination at the same t
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition { s, u, v }
}

fn select_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if s[(b.0, b.1)].abs() <= s[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Solve M·x = b over the integers. Returns None when no integer solution
/// exists.
pub(crate) fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::validation("right-hand side length mismatch"));
    }
    let dec = snf(m);
    let rank = dec.rank();
    let y = dec.u.apply(b)?;
    let mut z = vec![BigInt::zero(); m.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < rank {
            let d = &dec.s[(i, i)];
            if !(yi % d).is_zero() {
                return Ok(None);
            }
            z[i] = yi / d;
        } else if !yi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(dec.v.apply(&z)?))
}

/// Does the column lattice of M contain x?
pub(crate) fn lattice_contains(m: &IntMatrix, x: &[BigInt]) -> Result<bool> {
    Ok(solve(m, x)?.is_some())
}

/// Do two matrices with the same row count span the same column lattice?
pub(crate) fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::validation("lattice ambient rank mismatch"));
    }
    for j in 0..b.cols() {
        if !lattice_contains(a, &b.column(j))? {
            return Ok(false);
        }
    }
    for j in 0..a.cols() {
        if !lattice_contains(b, &a.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis (as matrix columns) for the column lattice of M. The basis has
/// exactly rank(M) columns.
pub(crate) fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    let dec = snf(m);
    let rank = dec.rank();
    // M·V has its first `rank` columns spanning the lattice: M·V = U⁻¹·S,
    // and S's nonzero columns are the first `rank`.
    let mv = m.mul(&dec.v).expect("shape");
    let cols: Vec<Vec<BigInt>> = (0..rank).map(|j| mv.column(j)).collect();
    IntMatrix::from_columns(m.rows(), &cols).expect("shape")
}

/// A basis for the kernel lattice {x : M·x = 0}.
pub(crate) fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let dec = snf(m);
    let rank = dec.rank();
    let cols: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| dec.v.column(j)).collect();
    IntMatrix::from_columns(m.cols(), &cols).expect("shape")
}
