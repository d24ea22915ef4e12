//! The end-to-end pipeline over the cosphere bundle of S²: exact K-theory
//! from the numerically derived clutching data, the invariant trace on
//! symbols by product quadrature, and the character-image report.

mod field;
mod ktheory;
mod quad;
mod report;
mod rotate;
mod sh;

pub use field::{trace_symbol, SymbolField};
pub use ktheory::{
    reproduce_algebra_ktheory, reproduce_cosphere_ktheory, reproduce_cosphere_ktheory_with_chart,
    GroupEntry, KTheoryConfig, KTheoryReport,
};
pub use quad::{fiber_vector, frame, gauss_legendre, point, Grid, QuadratureSpec};
pub use report::{
    chern_image_report, sphere_report, tau_of_identity, AlgebraKTheorySection, CharacterSection,
    KTheorySection, PipelineConfig, SphereReport, TraceSection,
};
pub use rotate::{rotate_symbol, rotation_matrix};
pub use sh::{analyze, legendre_table, synthesize, ShCoefficients};
