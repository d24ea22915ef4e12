//! Lie-algebra valued differential forms over matrix algebras and the
//! Chern character pairing.
//!
//! The complex is M_n(C) ⊗ Λ𝔤* with the Chevalley–Eilenberg differential
//! induced by inner derivations δ_X = [ρ(X), ·]. Connections on p·Aⁿ,
//! their curvature, the trace pairings τ_k, and the character sum
//! Σ (2πi)⁻ᵏ(k!)⁻¹ τ(p(dp∧dp)ᵏ) are all computed exactly up to roundoff.

mod algebra;
mod chern;
mod cmatrix;
mod form;
mod lie;
mod trace;

pub use algebra::SmoothAlgebra;
pub use chern::{
    chern_character, curvature_from_connection, grassmannian_curvature, reality_check,
    reality_defect, tau_k, Projection,
};
pub use cmatrix::CMatrix;
pub use form::{
    ce_differential, closedness_check, closedness_defect, cohomologous_defect, multi_indices,
    scalar_ce_differential, wedge, Cochain, Form,
};
pub use lie::LieAlgebra;
pub use trace::TraceFunctional;

/// Numerical tolerances: `validation` guards construction-time invariants,
/// `identity` guards derived identities.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub validation: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            validation: 1e-12,
            identity: 1e-10,
        }
    }
}
