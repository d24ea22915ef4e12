use num_complex::Complex64;

use super::algebra::SmoothAlgebra;
use super::cmatrix::CMatrix;
use super::form::{ce_differential, wedge, Cochain, Form};
use super::trace::TraceFunctional;
use super::Tolerances;
use crate::error::{Error, Result};

/// A self-adjoint idempotent in M_n(C): p² = p and p* = p, both checked to
/// the validation tolerance at construction.
#[derive(Clone, Debug)]
pub struct Projection {
    p: CMatrix,
}

impl Projection {
    pub fn new(p: CMatrix) -> Result<Self> {
        Self::with_tolerances(p, &Tolerances::default())
    }

    pub fn with_tolerances(p: CMatrix, tol: &Tolerances) -> Result<Self> {
        let idem = p.mul(&p).max_abs_diff(&p);
        if idem > tol.validation {
            return Err(Error::validation(format!(
                "matrix is not idempotent (|p^2 - p| = {idem:e})"
            )));
        }
        if !p.is_hermitian(tol.validation) {
            return Err(Error::validation("projection must be self-adjoint"));
        }
        Ok(Projection { p })
    }

    pub fn identity(n: usize) -> Self {
        Projection {
            p: CMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Projection {
            p: CMatrix::zeros(n),
        }
    }

    /// diag(1, 0, ..) conjugated by a unitary.
    pub fn conjugated_diagonal(rank: usize, u: &CMatrix) -> Result<Self> {
        let n = u.size();
        let mut d = CMatrix::zeros(n);
        for i in 0..rank.min(n) {
            d[(i, i)] = Complex64::ONE;
        }
        Projection::new(u.mul(&d).mul(&u.adjoint()))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.p
    }

    pub fn size(&self) -> usize {
        self.p.size()
    }
}

/// The curvature of the grassmannian connection ∇⁰ = p∘δ on p·Aⁿ:
/// the 2-form Θ₀ = p·(dp ∧ dp).
pub fn grassmannian_curvature(p: &Projection, alg: &SmoothAlgebra) -> Result<Form> {
    if p.size() != alg.matrix_size() {
        return Err(Error::validation("projection size does not match algebra"));
    }
    let gdim = alg.lie().dim();
    let dp = ce_differential(&Form::scalar(gdim, p.matrix().clone()), alg)?;
    Ok(wedge(&dp, &dp)?.left_mul(p.matrix()))
}

/// The curvature `Θ(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}` of the perturbed
/// connection ∇ = ∇⁰ + ω, computed from the defining formula applied to the
/// module generator and compressed back into p·M_n·p.
///
/// ω must be a degree-1 form with coefficients compressed by p (pωp = ω).
pub fn curvature_from_connection(
    p: &Projection,
    omega: &Form,
    alg: &SmoothAlgebra,
) -> Result<Form> {
    curvature_from_connection_with(p, omega, alg, &Tolerances::default())
}

pub fn curvature_from_connection_with(
    p: &Projection,
    omega: &Form,
    alg: &SmoothAlgebra,
    tol: &Tolerances,
) -> Result<Form> {
    if omega.degree() != 1 {
        return Err(Error::validation("connection perturbation must be a 1-form"));
    }
    if omega.matrix_size() != p.size() || omega.gdim() != alg.lie().dim() {
        return Err(Error::validation("perturbation does not match the module"));
    }
    let pm = p.matrix();
    for i in 0..alg.lie().dim() {
        let w = omega.coeff(&[i]);
        let compressed = pm.mul(w).mul(pm);
        let defect = compressed.max_abs_diff(w);
        if defect > tol.validation {
            return Err(Error::validation(format!(
                "perturbation is not compressed by p (p w p != w by {defect:e} at index {i})"
            )));
        }
    }
    let gdim = alg.lie().dim();
    // ∇_X(ξ) = p δ_X(ξ) + ω(X)·ξ, applied to the generator ξ = p.
    let nabla = |i: usize, xi: &CMatrix| -> CMatrix {
        pm.mul(&alg.derivation(i, xi)).add(&omega.coeff(&[i]).mul(xi))
    };
    let mut out = Form::zero(gdim, p.size(), 2)?;
    for idx in super::form::multi_indices(gdim, 2) {
        let (i, j) = (idx[0], idx[1]);
        let mut f = nabla(i, &nabla(j, pm)).sub(&nabla(j, &nabla(i, pm)));
        for k in 0..gdim {
            let c = alg.lie().c(i, j, k);
            if c != 0.0 {
                f = f.sub(&nabla(k, pm).scale(Complex64::new(c, 0.0)));
            }
        }
        *out.coeff_mut(&idx) = pm.mul(&f).mul(pm);
    }
    Ok(out)
}

/// τ_k: the trace pairing of k matrix-valued forms,
/// τ_k(a₁⊗w₁, …, a_k⊗w_k) = τ(a₁…a_k)·w₁∧…∧w_k — concretely, the wedge of
/// the forms with matrix multiplication, followed by τ coefficientwise.
/// A single degree-0 argument recovers τ₀ = τ.
pub fn tau_k(forms: &[Form], tau: &TraceFunctional) -> Result<Cochain> {
    let Some(first) = forms.first() else {
        return Err(Error::validation("tau_k needs at least one form"));
    };
    if first.matrix_size() != tau.size() {
        return Err(Error::validation("trace size does not match the forms"));
    }
    let mut product = first.clone();
    for w in &forms[1..] {
        product = wedge(&product, w)?;
    }
    let mut out = Cochain::zero(product.gdim(), product.degree())?;
    for idx in super::form::multi_indices(product.gdim(), product.degree()) {
        *out.coeff_mut(&idx) = tau.apply(product.coeff(&idx));
    }
    Ok(out)
}

/// The character cochains of a projection through degree 2·k_max:
/// degree 0 is τ(p); degree 2k is (1/((2πi)^k k!))·τ(p(dp∧dp)^k).
pub fn chern_character(
    p: &Projection,
    alg: &SmoothAlgebra,
    tau: &TraceFunctional,
    k_max: usize,
) -> Result<Vec<Cochain>> {
    let gdim = alg.lie().dim();
    if k_max > gdim / 2 {
        return Err(Error::validation(format!(
            "k_max = {k_max} exceeds floor(dim/2) = {}",
            gdim / 2
        )));
    }
    if p.size() != alg.matrix_size() || tau.size() != p.size() {
        return Err(Error::validation("projection, algebra, and trace sizes must agree"));
    }
    let mut out = vec![Cochain::constant(gdim, tau.apply(p.matrix()))];
    if k_max == 0 {
        return Ok(out);
    }
    let dp = ce_differential(&Form::scalar(gdim, p.matrix().clone()), alg)?;
    let dpdp = wedge(&dp, &dp)?;
    let mut power = dpdp.clone();
    for k in 1..=k_max {
        let form = power.left_mul(p.matrix());
        let cochain = tau_k(&[form], tau)?;
        // 1/((2πi)^k k!)
        let mut scale = Complex64::ONE;
        for m in 1..=k {
            scale /= Complex64::new(0.0, 2.0 * std::f64::consts::PI) * m as f64;
        }
        out.push(cochain.scale(scale));
        if k < k_max {
            power = wedge(&power, &dpdp)?;
        }
    }
    Ok(out)
}

/// Largest imaginary part of iᵏ·τ(p(dp∧dp)ᵏ) over all multi-indices; the
/// pairing is real for a positive trace, so this measures roundoff only.
pub fn reality_defect(
    p: &Projection,
    alg: &SmoothAlgebra,
    tau: &TraceFunctional,
    k: usize,
) -> Result<f64> {
    let gdim = alg.lie().dim();
    let cochain = if k == 0 {
        Cochain::constant(gdim, tau.apply(p.matrix()))
    } else {
        let dp = ce_differential(&Form::scalar(gdim, p.matrix().clone()), alg)?;
        let dpdp = wedge(&dp, &dp)?;
        let mut power = dpdp.clone();
        for _ in 1..k {
            power = wedge(&power, &dpdp)?;
        }
        tau_k(&[power.left_mul(p.matrix())], tau)?
    };
    let ik = Complex64::new(0.0, 1.0).powu(k as u32);
    Ok(cochain.scale(ik).max_imag())
}

/// iᵏ·τ(p(dp∧dp)ᵏ) is real up to `tol`.
pub fn reality_check(
    p: &Projection,
    alg: &SmoothAlgebra,
    tau: &TraceFunctional,
    k: usize,
    tol: f64,
) -> Result<bool> {
    Ok(reality_defect(p, alg, tau, k)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::form::{closedness_check, cohomologous_defect};
    use crate::numeric::SplitMix64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin_projection() -> Projection {
        // p = (I + σ₃)/2 = diag(1, 0)
        let mut p = CMatrix::zeros(2);
        p[(0, 0)] = Complex64::ONE;
        Projection::new(p).unwrap()
    }

    fn random_projection(n: usize, rank: usize, rng: &mut SplitMix64) -> Projection {
        let seed = super::super::algebra::random_matrix(n, rng);
        let u = seed.gram_schmidt_unitary().unwrap();
        Projection::conjugated_diagonal(rank, &u).unwrap()
    }

    #[test]
    fn projection_validation() {
        assert!(Projection::new(CMatrix::identity(3)).is_ok());
        assert!(Projection::new(CMatrix::zeros(2)).is_ok());
        let mut not_idem = CMatrix::zeros(2);
        not_idem[(0, 0)] = c(0.5, 0.0);
        assert!(Projection::new(not_idem).is_err());
        let mut not_sa = CMatrix::zeros(2);
        not_sa[(0, 0)] = c(1.0, 0.0);
        not_sa[(0, 1)] = c(0.3, 0.0);
        assert!(Projection::new(not_sa).is_err());
    }

    /// Oracle (symbolic 2x2): Θ₀(e₁,e₂) = p·(i/2)σ₃ = (i/2)·diag(1, 0).
    #[test]
    fn grassmannian_curvature_spin_example() {
        let alg = SmoothAlgebra::spin_so3();
        let theta = grassmannian_curvature(&spin_projection(), &alg).unwrap();
        let mut expected = CMatrix::zeros(2);
        expected[(0, 0)] = c(0.0, 0.5);
        assert_eq!(theta.coeff(&[0, 1]).max_abs_diff(&expected), 0.0);
        assert_eq!(theta.coeff(&[0, 2]).max_abs(), 0.0);
        assert_eq!(theta.coeff(&[1, 2]).max_abs(), 0.0);
    }

    #[test]
    fn curvature_of_the_identity_and_zero_projections() {
        let alg = SmoothAlgebra::spin_so3();
        // dI = 0, so the curvature vanishes
        let theta = grassmannian_curvature(&Projection::identity(2), &alg).unwrap();
        assert_eq!(theta.max_abs(), 0.0);
        let theta = grassmannian_curvature(&Projection::zero(2), &alg).unwrap();
        assert_eq!(theta.max_abs(), 0.0);
    }

    #[test]
    fn perturbed_connection_reduces_to_grassmannian_at_zero() {
        let alg = SmoothAlgebra::spin_so3();
        let p = spin_projection();
        let zero = Form::zero(3, 2, 1).unwrap();
        let a = curvature_from_connection(&p, &zero, &alg).unwrap();
        let b = grassmannian_curvature(&p, &alg).unwrap();
        // dyadic data: the two routes agree exactly
        assert_eq!(a.sub(&b).unwrap().max_abs(), 0.0);

        // p = I over an abelian-like direction: identity module, zero
        // perturbation, curvature is zero
        let a = curvature_from_connection(&Projection::identity(2), &zero, &alg).unwrap();
        assert_eq!(a.max_abs(), 0.0);
    }

    #[test]
    fn uncompressed_perturbation_is_rejected() {
        let alg = SmoothAlgebra::spin_so3();
        let p = spin_projection();
        let mut w = Form::zero(3, 2, 1).unwrap();
        *w.coeff_mut(&[0]) = CMatrix::identity(2); // p·I·p ≠ I
        assert!(curvature_from_connection(&p, &w, &alg).is_err());
    }

    /// Oracle (symbolic 2x2): τ₁(Θ₀) = (i/2)·e₁*∧e₂* with the matrix trace.
    #[test]
    fn tau_of_curvature_spin_example() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let theta = grassmannian_curvature(&spin_projection(), &alg).unwrap();
        let t1 = tau_k(&[theta], &tau).unwrap();
        assert!((t1.coeff(&[0, 1]) - c(0.0, 0.5)).norm() == 0.0);
        assert_eq!(t1.coeff(&[0, 2]), Complex64::ZERO);
        assert_eq!(t1.coeff(&[1, 2]), Complex64::ZERO);
        // and it is closed
        assert!(closedness_check(&t1, alg.lie(), 1e-10).unwrap());
    }

    #[test]
    fn tau_k_basics() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::normalized(2);
        // τ₀ of the unit with the normalized trace is 1
        let unit = Form::scalar(3, alg.unit());
        let t0 = tau_k(&[unit], &tau).unwrap();
        assert!((t0.coeff(&[]) - Complex64::ONE).norm() < 1e-15);
        // τ of a commutator-valued 0-form vanishes by traciality
        let mut rng = SplitMix64::new(21);
        let a = super::super::algebra::random_matrix(2, &mut rng);
        let b = super::super::algebra::random_matrix(2, &mut rng);
        let comm = Form::scalar(3, CMatrix::commutator(&a, &b));
        let t = tau_k(&[comm], &TraceFunctional::matrix_trace(2)).unwrap();
        assert!(t.max_abs() < 1e-14);
    }

    /// Oracle (symbolic 2x2): the spin character has degree-0 term 1 and
    /// degree-2 term 1/(4π) on (e₁, e₂) with the plain matrix trace.
    #[test]
    fn chern_character_spin_example() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let ch = chern_character(&spin_projection(), &alg, &tau, 1).unwrap();
        assert_eq!(ch.len(), 2);
        assert!((ch[0].coeff(&[]) - Complex64::ONE).norm() <= 1e-12);
        let expected = 1.0 / (4.0 * std::f64::consts::PI);
        assert!((ch[1].coeff(&[0, 1]) - c(expected, 0.0)).norm() <= 1e-12);
        assert!(ch[1].coeff(&[0, 2]).norm() <= 1e-15);
        assert!(ch[1].coeff(&[1, 2]).norm() <= 1e-15);
    }

    #[test]
    fn identity_character_is_the_trace_alone() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let ch = chern_character(&Projection::identity(2), &alg, &tau, 1).unwrap();
        assert!((ch[0].coeff(&[]) - c(2.0, 0.0)).norm() == 0.0);
        assert_eq!(ch[1].max_abs(), 0.0);
        let ch = chern_character(&Projection::zero(2), &alg, &tau, 1).unwrap();
        assert_eq!(ch[0].coeff(&[]), Complex64::ZERO);
        assert_eq!(ch[1].max_abs(), 0.0);
    }

    #[test]
    fn degree_zero_term_equals_trace_of_projection() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let mut rng = SplitMix64::new(8);
        for _ in 0..20 {
            let p = random_projection(2, 1, &mut rng);
            let ch = chern_character(&p, &alg, &tau, 1).unwrap();
            let direct = tau.apply(p.matrix());
            assert!((ch[0].coeff(&[]) - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn k_max_is_bounded_by_half_the_dimension() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        assert!(chern_character(&spin_projection(), &alg, &tau, 2).is_err());
    }

    #[test]
    fn reality_spin_and_identity() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        // i·(i/2) = -1/2 is real
        assert!(reality_check(&spin_projection(), &alg, &tau, 1, 1e-10).unwrap());
        assert!(reality_check(&Projection::identity(2), &alg, &tau, 0, 1e-10).unwrap());
        assert!(reality_check(&Projection::identity(2), &alg, &tau, 1, 1e-10).unwrap());
    }

    #[test]
    fn reality_on_random_projections() {
        let spin = SmoothAlgebra::spin_so3();
        let adj = SmoothAlgebra::adjoint_so3();
        let tau2 = TraceFunctional::matrix_trace(2);
        let tau3 = TraceFunctional::matrix_trace(3);
        let mut rng = SplitMix64::new(0xbead);
        for t in 0..50 {
            let (alg, tau, n) = if t % 2 == 0 {
                (&spin, &tau2, 2)
            } else {
                (&adj, &tau3, 3)
            };
            let rank = 1 + (t % (n - 1).max(1));
            let p = random_projection(n, rank, &mut rng);
            let defect = reality_defect(&p, alg, tau, 1).unwrap();
            assert!(defect <= 1e-10, "reality defect {defect:e} on trial {t}");
        }
    }

    /// Connection independence at the cochain level: τ₁ of the curvature
    /// for ∇⁰ and for ∇⁰ + ω are both closed and differ by an exact
    /// cochain, found by exact linear algebra on the 3-dimensional spaces.
    #[test]
    fn character_class_is_connection_independent() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let p = spin_projection();
        let pm = p.matrix();
        let mut rng = SplitMix64::new(0xc0ffee);
        for trial in 0..20 {
            // random small perturbation compressed by p
            let mut omega = Form::zero(3, 2, 1).unwrap();
            for i in 0..3 {
                let r = super::super::algebra::random_matrix(2, &mut rng).scale(c(0.1, 0.0));
                *omega.coeff_mut(&[i]) = pm.mul(&r).mul(pm);
            }
            let theta0 = grassmannian_curvature(&p, &alg).unwrap();
            let theta = curvature_from_connection(&p, &omega, &alg).unwrap();
            let t0 = tau_k(&[theta0], &tau).unwrap();
            let t1 = tau_k(std::slice::from_ref(&theta), &tau).unwrap();
            assert!(closedness_check(&t0, alg.lie(), 1e-10).unwrap());
            assert!(closedness_check(&t1, alg.lie(), 1e-10).unwrap());
            let defect = cohomologous_defect(&t1, &t0, alg.lie()).unwrap();
            assert!(defect <= 1e-10, "classes differ by {defect:e} on trial {trial}");
            // and generically the cochains themselves differ
            if trial == 0 {
                assert!(t1.sub(&t0).unwrap().max_abs() > 1e-6);
            }
        }
    }

    /// Conjugating the projection by a group unitary u = exp(ρ(X)) moves the
    /// character cochains by the coadjoint change of basis exp(−ad_X).
    #[test]
    fn character_is_equivariant_under_group_unitaries() {
        let alg = SmoothAlgebra::spin_so3();
        let tau = TraceFunctional::matrix_trace(2);
        let p = spin_projection();
        let mut rng = SplitMix64::new(0x0dd);
        for _ in 0..10 {
            let x: Vec<f64> = (0..3).map(|_| 0.3 * rng.next_signed()).collect();
            // u = exp(ρ(X))
            let mut rho_x = CMatrix::zeros(2);
            for (i, xi) in x.iter().enumerate() {
                rho_x = rho_x.add(&alg.rep(i).scale(c(*xi, 0.0)));
            }
            let u = rho_x.exp();
            let q = Projection::new(u.mul(p.matrix()).mul(&u.adjoint())).unwrap();

            let ch_p = chern_character(&p, &alg, &tau, 1).unwrap();
            let ch_q = chern_character(&q, &alg, &tau, 1).unwrap();

            // Ad_{exp(X)}⁻¹ = exp(−ad_X) on the Lie algebra
            let b = alg.lie().ad(&x).neg().exp();
            for k in 0..ch_p.len() {
                let pulled = ch_p[k].pullback(&b).unwrap();
                let defect = pulled.sub(&ch_q[k]).unwrap().max_abs();
                assert!(defect <= 1e-10, "equivariance defect {defect:e} in degree {}", 2 * k);
            }
        }
    }
}
