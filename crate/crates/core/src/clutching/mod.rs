//! The transition map of the circle bundle over S² from the stereographic
//! chart change, and winding-number bookkeeping turning circle-valued maps
//! into matrices on K₁ of the torus.

mod chart;
mod torus;
mod winding;

pub use chart::ChartChange;
pub use torus::{
    assemble_mv_k0_map, assemble_mv_k1_map, k0_restriction_map, k1_restriction_map,
    k1_transition_map, torus_map_k1_matrix, torus_map_k1_matrix_based,
    transition_from_chart_change, TorusMap,
};
pub use winding::{winding_number, LoopSample};
