//! The full pipeline report: K-theory, the invariant trace, and the image
//! of the character map, serialized as deterministic JSON.

use serde::Serialize;

use crate::error::Result;
use crate::exactseq::FactFlag;
use crate::forms::{chern_character, CMatrix, LieAlgebra, Projection, SmoothAlgebra, TraceFunctional};

use super::field::{trace_symbol, SymbolField};
use super::ktheory::{
    reproduce_algebra_ktheory, reproduce_cosphere_ktheory, KTheoryConfig, KTheoryReport,
};
use super::quad::QuadratureSpec;

#[derive(Clone, Debug, Default)]
pub struct PipelineConfig {
    pub quad: QuadratureSpec,
    pub ktheory: KTheoryConfig,
    pub facts: Vec<FactFlag>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraKTheorySection {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<KTheoryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KTheorySection {
    pub cosphere: KTheoryReport,
    pub algebra: AlgebraKTheorySection,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSection {
    pub tau_of_identity: f64,
    pub normalization: f64,
    pub quadrature: QuadratureSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterSection {
    pub degree0: f64,
    /// "R" when τ(I) ≠ 0, "{0}" for a trace vanishing on the identity.
    pub image: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereReport {
    pub ktheory: KTheorySection,
    pub trace: TraceSection,
    pub character: CharacterSection,
}

impl SphereReport {
    pub fn to_json(&self) -> String {
        let mut json = serde_json::to_string_pretty(self).expect("report serializes");
        json.push('\n');
        json
    }
}

/// The trace of the identity symbol: quadrature of the constant 1 field.
pub fn tau_of_identity(quad: &QuadratureSpec) -> Result<f64> {
    trace_symbol(&SymbolField::constant(quad, 1.0), quad)
}

/// The character-image report: computes τ(I) by quadrature, evaluates the
/// degree-0 character of the identity class through the forms engine with
/// the same normalization, and states the image of the character map.
pub fn chern_image_report(quad: &QuadratureSpec) -> Result<CharacterSection> {
    let tau_i = tau_of_identity(quad)?;

    // Cross-module consistency: the identity class pairs with τ through the
    // degree-0 character. Model the fixed identity as the unit of a trivial
    // one-dimensional module carrying the trivial so(3) action.
    let lie = LieAlgebra::so3();
    let alg = SmoothAlgebra::new(lie, vec![CMatrix::zeros(1); 3])?;
    let tau = TraceFunctional::scaled(1, tau_i);
    let cochains = chern_character(&Projection::identity(1), &alg, &tau, 1)?;
    let degree0 = cochains[0].coefficients()[0].re;
    debug_assert!((degree0 - tau_i).abs() <= 1e-12 * tau_i.abs().max(1.0));

    let mut notes = vec![
        "higher-degree terms vanish: the identity is fixed by the action, so dI = 0".to_string(),
        "the torsion summand Z/2 dies: any homomorphism from a finite group to a real vector space is zero".to_string(),
    ];
    let image = if tau_i != 0.0 {
        notes.push(format!(
            "the free summand Z·[I] maps onto tau(I)·Z = {tau_i:.12}·Z, whose real span is all of R"
        ));
        "R".to_string()
    } else {
        notes.push(
            "tau(I) = 0 (Wodzicki-type trace): the character kills the class of the identity"
                .to_string(),
        );
        "{0}".to_string()
    };
    Ok(CharacterSection {
        degree0,
        image,
        notes,
    })
}

/// Run the whole pipeline. The algebra K-theory section reports a refusal
/// (rather than failing the run) when the index-map fact is not supplied.
pub fn sphere_report(config: &PipelineConfig) -> Result<SphereReport> {
    let cosphere = reproduce_cosphere_ktheory(&config.ktheory)?;
    let q0 = cosphere.group("K0(C(S*S2))").expect("cosphere K0").clone();
    let q1 = cosphere.group("K1(C(S*S2))").expect("cosphere K1").clone();
    let algebra = match reproduce_algebra_ktheory((&q0, &q1), &config.facts) {
        Ok(report) => AlgebraKTheorySection {
            status: "solved".into(),
            report: Some(report),
            reason: None,
        },
        Err(err @ crate::Error::MissingFact { .. }) => AlgebraKTheorySection {
            status: "refused".into(),
            report: None,
            reason: Some(err.to_string()),
        },
        Err(other) => return Err(other),
    };
    let tau_i = tau_of_identity(&config.quad)?;
    let character = chern_image_report(&config.quad)?;
    Ok(SphereReport {
        ktheory: KTheorySection {
            cosphere,
            algebra,
        },
        trace: TraceSection {
            tau_of_identity: tau_i,
            normalization: config.quad.normalization,
            quadrature: config.quad.clone(),
        },
        character,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn default_normalization_gives_eight_pi_squared() {
        let quad = QuadratureSpec::default();
        let section = chern_image_report(&quad).unwrap();
        assert!((section.degree0 - 8.0 * PI * PI).abs() < 1e-10);
        assert_eq!(section.image, "R");
    }

    #[test]
    fn rescaled_trace_normalizes_to_one() {
        let quad = QuadratureSpec::new(32, 64, 32, 1.0 / (8.0 * PI * PI)).unwrap();
        let section = chern_image_report(&quad).unwrap();
        assert!((section.degree0 - 1.0).abs() < 1e-12);
        assert_eq!(section.image, "R");
    }

    #[test]
    fn vanishing_trace_reports_trivial_image() {
        let quad = QuadratureSpec::new(32, 64, 32, 0.0).unwrap();
        let section = chern_image_report(&quad).unwrap();
        assert_eq!(section.degree0, 0.0);
        assert_eq!(section.image, "{0}");
        assert!(section.notes.iter().any(|n| n.contains("Wodzicki")));
    }

    #[test]
    fn full_report_with_and_without_the_fact() {
        let mut config = PipelineConfig::default();
        let report = sphere_report(&config).unwrap();
        assert_eq!(report.ktheory.algebra.status, "refused");
        assert!(report.ktheory.algebra.reason.as_deref().unwrap().contains("index_map_surjective"));

        config.facts = vec![FactFlag::index_map_surjective()];
        let report = sphere_report(&config).unwrap();
        assert_eq!(report.ktheory.algebra.status, "solved");
        let algebra = report.ktheory.algebra.report.as_ref().unwrap();
        assert_eq!(algebra.group("K0(A)").unwrap().to_string(), "Z + Z/2");
        assert_eq!(algebra.group("K1(A)").unwrap().to_string(), "0");
        assert!((report.trace.tau_of_identity - 8.0 * PI * PI).abs() < 1e-10);
    }

    #[test]
    fn report_json_is_deterministic() {
        let config = PipelineConfig {
            facts: vec![FactFlag::index_map_surjective()],
            ..Default::default()
        };
        let a = sphere_report(&config).unwrap().to_json();
        let b = sphere_report(&config).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"tau_of_identity\""));
    }
}
