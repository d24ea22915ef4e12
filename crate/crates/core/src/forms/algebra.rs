use num_complex::Complex64;

use super::cmatrix::CMatrix;
use super::lie::LieAlgebra;
use super::Tolerances;
use crate::error::{Error, Result};
use crate::numeric::SplitMix64;

/// A matrix algebra M_n(C) carrying a Lie algebra action by inner
/// derivations δ_X = [ρ(X), ·] for a representation ρ.
///
/// Construction checks, on random probe matrices, that each δᵢ is a
/// derivation and that δ realizes the bracket:
/// `δ_{[X,Y]} = δ_X δ_Y − δ_Y δ_X`.
#[derive(Clone, Debug)]
pub struct SmoothAlgebra {
    lie: LieAlgebra,
    rho: Vec<CMatrix>,
    n: usize,
}

impl SmoothAlgebra {
    pub fn new(lie: LieAlgebra, rho: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerances(lie, rho, &Tolerances::default())
    }

    pub fn with_tolerances(lie: LieAlgebra, rho: Vec<CMatrix>, tol: &Tolerances) -> Result<Self> {
        if rho.len() != lie.dim() {
            return Err(Error::validation(format!(
                "need one representation matrix per basis element: {} != {}",
                rho.len(),
                lie.dim()
            )));
        }
        let n = rho.first().map_or(0, CMatrix::size);
        if n == 0 || rho.iter().any(|m| m.size() != n) {
            return Err(Error::validation(
                "representation matrices must be square of equal positive size",
            ));
        }
        let alg = SmoothAlgebra { lie, rho, n };
        alg.validate(tol)?;
        Ok(alg)
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        let mut rng = SplitMix64::new(0x5ca1ab1e);
        for _ in 0..5 {
            let a = random_matrix(self.n, &mut rng);
            let b = random_matrix(self.n, &mut rng);
            for i in 0..self.lie.dim() {
                // Leibniz on the probe pair
                let lhs = self.derivation(i, &a.mul(&b));
                let rhs = self.derivation(i, &a).mul(&b).add(&a.mul(&self.derivation(i, &b)));
                let err = lhs.max_abs_diff(&rhs);
                if err > tol.validation {
                    return Err(Error::validation(format!(
                        "delta_{i} is not a derivation (defect {err:e})"
                    )));
                }
            }
            for i in 0..self.lie.dim() {
                for j in 0..self.lie.dim() {
                    // bracket realization on the probe
                    let lhs = self
                        .derivation(i, &self.derivation(j, &a))
                        .sub(&self.derivation(j, &self.derivation(i, &a)));
                    let mut rhs = CMatrix::zeros(self.n);
                    for k in 0..self.lie.dim() {
                        let c = self.lie.c(i, j, k);
                        if c != 0.0 {
                            rhs = rhs.add(&self.derivation(k, &a).scale(Complex64::new(c, 0.0)));
                        }
                    }
                    let err = lhs.max_abs_diff(&rhs);
                    if err > tol.validation {
                        return Err(Error::validation(format!(
                            "delta does not realize the bracket at ({i}, {j}) (defect {err:e})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The spin representation of so(3) on C²: ρ(eᵢ) = −(i/2)σᵢ.
    pub fn spin_so3() -> Self {
        let c = Complex64::new;
        let rho = vec![
            CMatrix::from_rows(vec![
                vec![c(0.0, 0.0), c(0.0, -0.5)],
                vec![c(0.0, -0.5), c(0.0, 0.0)],
            ])
            .unwrap(),
            CMatrix::from_rows(vec![
                vec![c(0.0, 0.0), c(-0.5, 0.0)],
                vec![c(0.5, 0.0), c(0.0, 0.0)],
            ])
            .unwrap(),
            CMatrix::from_rows(vec![
                vec![c(0.0, -0.5), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(0.0, 0.5)],
            ])
            .unwrap(),
        ];
        SmoothAlgebra::new(LieAlgebra::so3(), rho).expect("spin rep is exact")
    }

    /// The adjoint representation of so(3) on C³.
    pub fn adjoint_so3() -> Self {
        let lie = LieAlgebra::so3();
        let rho = vec![
            lie.ad(&[1.0, 0.0, 0.0]),
            lie.ad(&[0.0, 1.0, 0.0]),
            lie.ad(&[0.0, 0.0, 1.0]),
        ];
        SmoothAlgebra::new(lie, rho).expect("adjoint rep is exact")
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn rep(&self, i: usize) -> &CMatrix {
        &self.rho[i]
    }

    pub fn unit(&self) -> CMatrix {
        CMatrix::identity(self.n)
    }

    /// δᵢ(a) = [ρ(eᵢ), a].
    pub fn derivation(&self, i: usize, a: &CMatrix) -> CMatrix {
        CMatrix::commutator(&self.rho[i], a)
    }

    /// δ_X(a) for X given in basis coordinates.
    pub fn derivation_along(&self, x: &[f64], a: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0.0 {
                out = out.add(&self.derivation(i, a).scale(Complex64::new(*xi, 0.0)));
            }
        }
        out
    }

    /// A conjugated copy of this algebra: ρ'ᵢ = S ρᵢ S⁻¹ for a unitary S.
    /// Useful for generating further exact representations in tests.
    pub fn conjugated_by(&self, s: &CMatrix) -> Result<Self> {
        if s.size() != self.n {
            return Err(Error::validation("conjugator size mismatch"));
        }
        let s_inv = s.adjoint(); // unitary assumed; validation will catch abuse
        let rho = self.rho.iter().map(|r| s.mul(r).mul(&s_inv)).collect();
        SmoothAlgebra::new(self.lie.clone(), rho)
    }
}

pub(crate) fn random_matrix(n: usize, rng: &mut SplitMix64) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(rng.next_signed(), rng.next_signed());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_rep_validates() {
        let alg = SmoothAlgebra::spin_so3();
        assert_eq!(alg.matrix_size(), 2);
        // [ρ1, ρ2] = ρ3 exactly (dyadic entries)
        let comm = CMatrix::commutator(alg.rep(0), alg.rep(1));
        assert_eq!(comm.max_abs_diff(alg.rep(2)), 0.0);
    }

    #[test]
    fn adjoint_rep_validates() {
        let alg = SmoothAlgebra::adjoint_so3();
        assert_eq!(alg.matrix_size(), 3);
    }

    #[test]
    fn non_representation_is_rejected() {
        // ρᵢ = σᵢ does not realize the so(3) bracket ([σ1,σ2] = 2iσ3 ≠ σ3)
        let c = Complex64::new;
        let rho = vec![
            CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap(),
            CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]).unwrap(),
            CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]).unwrap(),
        ];
        assert!(SmoothAlgebra::new(LieAlgebra::so3(), rho).is_err());
    }

    #[test]
    fn unitary_conjugation_stays_a_representation() {
        let mut rng = SplitMix64::new(99);
        let alg = SmoothAlgebra::spin_so3();
        let s = random_matrix(2, &mut rng).gram_schmidt_unitary().unwrap();
        let conj = alg.conjugated_by(&s).unwrap();
        assert_eq!(conj.matrix_size(), 2);
    }
}
