//! Workbench for the K-theory of the cosphere bundle of S² and the
//! Chern character of matrix dynamical systems.
//!
//! The crate is organized around five subsystems:
//!
//! * [`fgab`] — exact arithmetic for finitely generated abelian groups
//!   via Smith normal form of arbitrary-precision integer matrices.
//! * [`exactseq`] — six-term cyclic exact diagrams (Mayer–Vietoris and
//!   ideal sequences) and solvers for their unknown corners.
//! * [`clutching`] — numerical derivation of the torus transition map of
//!   the circle bundle over S² and winding-number bookkeeping on K₁.
//! * [`forms`] — Lie-algebra valued differential forms over matrix
//!   algebras: connections, curvature, trace pairings, the Chern character.
//! * [`sphere`] — the end-to-end pipeline: cosphere K-theory, the invariant
//!   trace on symbols by quadrature, and the character-image report.

pub mod clutching;
pub mod error;
pub mod exactseq;
pub mod fgab;
pub mod forms;
pub mod numeric;
pub mod sphere;

pub use error::{Error, Result};
