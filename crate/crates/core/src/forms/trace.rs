use num_complex::Complex64;

use super::algebra::{random_matrix, SmoothAlgebra};
use super::cmatrix::CMatrix;
use super::Tolerances;
use crate::error::{Error, Result};
use crate::numeric::SplitMix64;

/// A linear functional τ(a) = tr(w·a) on M_n(C) with a normalization
/// constant baked into the weight. The trace used throughout is a positive
/// multiple of the matrix trace; `validate` checks traciality, positivity
/// and infinitesimal invariance against a concrete algebra.
#[derive(Clone, Debug)]
pub struct TraceFunctional {
    weight: CMatrix,
    normalization: f64,
}

impl TraceFunctional {
    /// The plain matrix trace.
    pub fn matrix_trace(n: usize) -> Self {
        TraceFunctional {
            weight: CMatrix::identity(n),
            normalization: 1.0,
        }
    }

    /// tr / n, so that τ(I) = 1.
    pub fn normalized(n: usize) -> Self {
        Self::scaled(n, 1.0 / n as f64)
    }

    /// c · tr.
    pub fn scaled(n: usize, c: f64) -> Self {
        TraceFunctional {
            weight: CMatrix::identity(n).scale(Complex64::new(c, 0.0)),
            normalization: c,
        }
    }

    /// An arbitrary weight; `validate` decides whether it is a trace.
    pub fn from_weight(weight: CMatrix) -> Self {
        TraceFunctional {
            weight,
            normalization: 1.0,
        }
    }

    pub fn size(&self) -> usize {
        self.weight.size()
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn apply(&self, a: &CMatrix) -> Complex64 {
        self.weight.mul(a).trace()
    }

    /// Check traciality, positivity, and G-invariance (infinitesimally,
    /// τ(δ_X a) = 0) on random probes.
    pub fn validate(&self, alg: &SmoothAlgebra, tol: &Tolerances) -> Result<()> {
        if self.weight.size() != alg.matrix_size() {
            return Err(Error::validation("trace weight size does not match algebra"));
        }
        let mut rng = SplitMix64::new(0x7ace);
        for _ in 0..8 {
            let a = random_matrix(self.size(), &mut rng);
            let b = random_matrix(self.size(), &mut rng);
            let tracial = (self.apply(&a.mul(&b)) - self.apply(&b.mul(&a))).norm();
            if tracial > tol.validation {
                return Err(Error::validation(format!(
                    "functional is not tracial (defect {tracial:e})"
                )));
            }
            let pos = self.apply(&a.adjoint().mul(&a));
            if pos.im.abs() > tol.validation || pos.re < -tol.validation {
                return Err(Error::validation(format!(
                    "functional is not positive on a*a (value {pos})"
                )));
            }
            for i in 0..alg.lie().dim() {
                let inv = self.apply(&alg.derivation(i, &a)).norm();
                if inv > tol.validation {
                    return Err(Error::validation(format!(
                        "functional is not invariant: tau(delta_{i}(a)) = {inv:e}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_trace_validates_on_spin() {
        let alg = SmoothAlgebra::spin_so3();
        let tol = Tolerances::default();
        TraceFunctional::matrix_trace(2).validate(&alg, &tol).unwrap();
        TraceFunctional::normalized(2).validate(&alg, &tol).unwrap();
        assert!((TraceFunctional::normalized(2).apply(&CMatrix::identity(2)) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn skew_weight_is_rejected() {
        let alg = SmoothAlgebra::spin_so3();
        let mut w = CMatrix::zeros(2);
        w[(0, 0)] = Complex64::new(1.0, 0.0);
        w[(0, 1)] = Complex64::new(0.5, 0.0);
        w[(1, 1)] = Complex64::new(1.0, 0.0);
        let t = TraceFunctional::from_weight(w);
        assert!(t.validate(&alg, &Tolerances::default()).is_err());
    }

    #[test]
    fn negative_weight_fails_positivity() {
        let alg = SmoothAlgebra::spin_so3();
        let w = CMatrix::identity(2).scale(Complex64::new(-1.0, 0.0));
        let t = TraceFunctional::from_weight(w);
        let err = t.validate(&alg, &Tolerances::default()).unwrap_err();
        assert!(err.to_string().contains("positive") || err.to_string().contains("tracial"));
    }
}
