//! Six-term cyclic exact diagrams and their solvers.
//!
//! A diagram has six nodes and six arrows, arrow i pointing from node i to
//! node i+1 mod 6. For the Mayer–Vietoris diagram of a pullback square, the
//! node order is K₀(A), K₀(B₁)⊕K₀(B₂), K₀(B), K₁(A), K₁(B₁)⊕K₁(B₂), K₁(B),
//! with difference arrows at positions 1 and 4 and boundary maps at 2 and 5.

mod diagram;
mod format;
mod solve;

pub use diagram::{
    difference_on_sum, mayer_vietoris_assemble, ExactnessReport, FactFlag, SixTermDiagram,
    INDEX_MAP_SURJECTIVE,
};
pub use format::{parse_diagram, serialize_diagram};
pub use solve::{solve_all, solve_ideal_sequence, solve_unknown, IdealSequenceSolution, SolvedDiagram, SolvedNode};
