//! JSON problem descriptions for the `chern` subcommand.

use num_complex::Complex64;
use serde::Deserialize;

use cosphere::error::{Error, Result};
use cosphere::forms::{
    CMatrix, LieAlgebra, Projection, SmoothAlgebra, Tolerances, TraceFunctional,
};

/// Complex entries are `[re, im]` pairs; matrices are row-major nested
/// arrays.
#[derive(Deserialize)]
pub struct ChernProblem {
    pub lie_algebra: LieAlgebraSpec,
    /// one n×n matrix per basis element
    pub representation: Vec<Vec<Vec<[f64; 2]>>>,
    pub projection: Vec<Vec<[f64; 2]>>,
    #[serde(default = "default_normalization")]
    pub trace_normalization: f64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
}

fn default_normalization() -> f64 {
    1.0
}

fn default_k_max() -> usize {
    1
}

#[derive(Deserialize)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    /// `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`
    pub structure_constants: Vec<Vec<Vec<f64>>>,
}

fn to_cmatrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    CMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect(),
    )
}

impl ChernProblem {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: Some(e.line()),
            msg: format!("chern problem: {e}"),
        })
    }

    pub fn build(
        &self,
        validation_tol: f64,
    ) -> Result<(SmoothAlgebra, Projection, TraceFunctional, usize)> {
        let tol = Tolerances {
            validation: validation_tol,
            ..Tolerances::default()
        };
        let dim = self.lie_algebra.dim;
        let mut flat = Vec::with_capacity(dim * dim * dim);
        if self.lie_algebra.structure_constants.len() != dim {
            return Err(Error::Validation(
                "structure_constants must have `dim` outer entries".into(),
            ));
        }
        for plane in &self.lie_algebra.structure_constants {
            if plane.len() != dim || plane.iter().any(|row| row.len() != dim) {
                return Err(Error::Validation(
                    "structure_constants must be a dim×dim×dim array".into(),
                ));
            }
            for row in plane {
                flat.extend_from_slice(row);
            }
        }
        let lie = LieAlgebra::with_tolerances(dim, flat, &tol)?;
        let rho = self
            .representation
            .iter()
            .map(|m| to_cmatrix(m))
            .collect::<Result<Vec<_>>>()?;
        let alg = SmoothAlgebra::with_tolerances(lie, rho, &tol)?;
        let projection = Projection::with_tolerances(to_cmatrix(&self.projection)?, &tol)?;
        let trace = TraceFunctional::scaled(alg.matrix_size(), self.trace_normalization);
        trace.validate(&alg, &tol)?;
        Ok((alg, projection, trace, self.k_max))
    }
}
