use num_complex::Complex64;

use super::cmatrix::CMatrix;
use super::Tolerances;
use crate::error::{Error, Result};

/// A finite-dimensional real Lie algebra given by structure constants,
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`. Validated for antisymmetry and the Jacobi
/// identity at construction.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<f64>, // c[(i*dim + j)*dim + k]
}

impl LieAlgebra {
    pub fn new(dim: usize, structure_constants: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(dim, structure_constants, &Tolerances::default())
    }

    pub fn with_tolerances(
        dim: usize,
        structure_constants: Vec<f64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if structure_constants.len() != dim * dim * dim {
            return Err(Error::validation(format!(
                "structure constants need {} entries for dimension {dim}, got {}",
                dim * dim * dim,
                structure_constants.len()
            )));
        }
        let lie = LieAlgebra {
            dim,
            c: structure_constants,
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if (lie.c(i, j, k) + lie.c(j, i, k)).abs() > tol.validation {
                        return Err(Error::validation(format!(
                            "structure constants are not antisymmetric at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        // Jacobi: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let mut sum = 0.0;
                        for m in 0..dim {
                            sum += lie.c(i, j, m) * lie.c(m, k, l)
                                + lie.c(j, k, m) * lie.c(m, i, l)
                                + lie.c(k, i, m) * lie.c(m, j, l);
                        }
                        if sum.abs() > tol.validation {
                            return Err(Error::validation(format!(
                                "Jacobi identity fails at ({i}, {j}, {k}; {l}) by {sum:e}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(lie)
    }

    /// so(3): `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
    pub fn so3() -> Self {
        let mut c = vec![0.0; 27];
        let mut set = |i: usize, j: usize, k: usize, v: f64| {
            c[(i * 3 + j) * 3 + k] = v;
            c[(j * 3 + i) * 3 + k] = -v;
        };
        set(0, 1, 2, 1.0);
        set(1, 2, 0, 1.0);
        set(2, 0, 1, 1.0);
        LieAlgebra { dim: 3, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.c
    }

    /// The matrix of ad_X on the basis, `(ad_X)_kj = sum_i x_i c[i][j][k]`.
    pub fn ad(&self, x: &[f64]) -> CMatrix {
        assert_eq!(x.len(), self.dim);
        let mut m = CMatrix::zeros(self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                let mut v = 0.0;
                for (i, xi) in x.iter().enumerate() {
                    v += xi * self.c(i, j, k);
                }
                m[(k, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }
}
