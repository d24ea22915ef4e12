use std::sync::Arc;

use num_complex::Complex64;

use super::chart::ChartChange;
use super::winding::{winding_number, LoopSample};
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, IntMatrix};

/// Components must be unit-modulus to this tolerance on validation grids.
const UNIT_MODULUS_TOL: f64 = 1e-12;

/// Determinants and fiber images below this are treated as singular.
const SINGULAR_TOL: f64 = 1e-12;

type Component = Arc<dyn Fn(Complex64, Complex64) -> Complex64 + Send + Sync>;

/// A self-map of the torus S¹×S¹ given by two circle-valued component
/// samplers. Samplers are re-entrant; grid evaluations carry no ordering
/// contract.
#[derive(Clone)]
pub struct TorusMap {
    first: Component,
    second: Component,
}

impl TorusMap {
    pub fn new(
        first: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
        second: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        TorusMap {
            first: Arc::new(first),
            second: Arc::new(second),
        }
    }

    pub fn identity() -> Self {
        TorusMap::new(|z, _| z, |_, w| w)
    }

    pub fn swap() -> Self {
        TorusMap::new(|_, w| w, |z, _| z)
    }

    /// (z, w) ↦ (z^a w^b, z^c w^d); negative exponents are conjugates on S¹.
    pub fn monomial(a: i32, b: i32, c: i32, d: i32) -> Self {
        TorusMap::new(
            move |z: Complex64, w: Complex64| z.powi(a) * w.powi(b),
            move |z: Complex64, w: Complex64| z.powi(c) * w.powi(d),
        )
    }

    /// The closed form of the cosphere gluing map, (z, w) ↦ (z, −z²·conj(w)).
    pub fn cosphere_closed_form() -> Self {
        TorusMap::new(|z, _| z, |z: Complex64, w: Complex64| -(z * z) * w.conj())
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
        ((self.first)(z, w), (self.second)(z, w))
    }

    pub fn component(&self, i: usize, z: Complex64, w: Complex64) -> Complex64 {
        match i {
            0 => (self.first)(z, w),
            _ => (self.second)(z, w),
        }
    }

    /// g ∘ self.
    pub fn then(&self, g: &TorusMap) -> TorusMap {
        let (f1a, f2a) = (self.first.clone(), self.second.clone());
        let (f1b, f2b) = (self.first.clone(), self.second.clone());
        let g1 = g.first.clone();
        let g2 = g.second.clone();
        TorusMap {
            first: Arc::new(move |z, w| g1(f1a(z, w), f2a(z, w))),
            second: Arc::new(move |z, w| g2(f1b(z, w), f2b(z, w))),
        }
    }

    /// Check unit modulus of both components on an n×n grid.
    pub fn validate_on_grid(&self, n: usize) -> Result<()> {
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / n as f64);
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
                let (a, b) = self.eval(z, w);
                for (label, v) in [("first", a), ("second", b)] {
                    if (v.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                        return Err(Error::validation(format!(
                            "{label} component has modulus {:.15} off the circle at grid ({i}, {j})",
                            v.norm()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sup-distance to another map over an n×n grid.
    pub fn sup_distance_on_grid(&self, other: &TorusMap, n: usize) -> f64 {
        let mut sup: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / n as f64);
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
                let (a1, b1) = self.eval(z, w);
                let (a2, b2) = other.eval(z, w);
                sup = sup.max((a1 - a2).norm()).max((b1 - b2).norm());
            }
        }
        sup
    }
}

impl std::fmt::Debug for TorusMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TorusMap(sampled)")
    }
}

/// The map induced on unit tangent vectors over the unit circle by a chart
/// change: the base point moves by the chart map and the fiber vector by
/// the numerical Jacobian, renormalized back to the circle (the Jacobian
/// scales lengths). Validated on a `grid`×`grid` sample for unit modulus
/// and Jacobian regularity.
pub fn transition_from_chart_change(chart: &ChartChange, grid: usize) -> Result<TorusMap> {
    let base_chart = chart.clone();
    let fiber_chart = chart.clone();
    let map = TorusMap {
        first: Arc::new(move |z: Complex64, _| {
            base_chart.eval_complex(z).unwrap_or(Complex64::new(f64::NAN, 0.0))
        }),
        second: Arc::new(move |z: Complex64, w: Complex64| {
            match fiber_chart.jacobian(z.re, z.im) {
                Ok(j) => {
                    let v = Complex64::new(
                        j[0][0] * w.re + j[0][1] * w.im,
                        j[1][0] * w.re + j[1][1] * w.im,
                    );
                    let n = v.norm();
                    if n < SINGULAR_TOL {
                        Complex64::new(f64::NAN, 0.0)
                    } else {
                        v / n
                    }
                }
                Err(_) => Complex64::new(f64::NAN, 0.0),
            }
        }),
    };
    // Construction-time validation over the grid: singular Jacobians and
    // off-circle base images surface here as refusals, not NaNs downstream.
    for i in 0..grid {
        let theta = std::f64::consts::TAU * i as f64 / grid as f64;
        let z = Complex64::from_polar(1.0, theta);
        let j = chart.jacobian(z.re, z.im)?;
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < SINGULAR_TOL {
            return Err(Error::guard(format!(
                "chart Jacobian is singular at angle {theta:.6} (det = {det:.3e})"
            )));
        }
        let k = chart.eval_complex(z)?;
        if (k.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
            return Err(Error::validation(format!(
                "chart map leaves the unit circle at angle {theta:.6} (|K| = {:.15})",
                k.norm()
            )));
        }
    }
    map.validate_on_grid(grid.min(64))?;
    Ok(map)
}

/// K₁ matrix of a torus map in the basis (`[z]`, `[w]`): entry (i, j) is the
/// winding of component i along the j-th fundamental loop, the other
/// coordinate frozen at 1.
pub fn torus_map_k1_matrix(map: &TorusMap, samples: usize) -> Result<IntMatrix> {
    torus_map_k1_matrix_based(map, samples, Complex64::new(1.0, 0.0))
}

/// Same, with the frozen coordinate at an arbitrary base point on the
/// circle; all base points give homotopic loops.
pub fn torus_map_k1_matrix_based(
    map: &TorusMap,
    samples: usize,
    base: Complex64,
) -> Result<IntMatrix> {
    let mut entries = [[0i64; 2]; 2];
    for comp in 0..2 {
        for loop_idx in 0..2 {
            let m = map.clone();
            let sample = LoopSample::from_fn(samples, |t| {
                let (z, w) = if loop_idx == 0 { (t, base) } else { (base, t) };
                m.component(comp, z, w)
            })?;
            entries[comp][loop_idx] = winding_number(&sample)?;
        }
    }
    IntMatrix::from_rows(&[
        vec![entries[0][0], entries[0][1]],
        vec![entries[1][0], entries[1][1]],
    ])
}

/// π₁* on K₁: the restriction C(D×S¹) → C(S¹×S¹) sends `[w]` to `[w]` = (0, 1)
/// in the basis (`[z]`, `[w]`).
pub fn k1_restriction_map() -> GroupHom {
    GroupHom::new(
        FgAbGroup::free(1),
        FgAbGroup::free(2),
        IntMatrix::from_rows(&[vec![0], vec![1]]).unwrap(),
    )
    .unwrap()
}

/// π₂* on K₁: composition with the torus map sends `[w]` to the class of the
/// second component, i.e. the bottom row of the K₁ matrix.
pub fn k1_transition_map(k1_matrix: &IntMatrix) -> Result<GroupHom> {
    if k1_matrix.rows() != 2 || k1_matrix.cols() != 2 {
        return Err(Error::validation("K1 matrix of a torus map must be 2x2"));
    }
    GroupHom::new(
        FgAbGroup::free(1),
        FgAbGroup::free(2),
        IntMatrix::from_columns(
            2,
            &[vec![k1_matrix[(1, 0)].clone(), k1_matrix[(1, 1)].clone()]],
        )?,
    )
}

/// π₁* = π₂* on K₀: both restrictions send the unit class to
/// (1, 0) in the basis (`[1]_0`, suspension generator).
pub fn k0_restriction_map() -> GroupHom {
    GroupHom::new(
        FgAbGroup::free(1),
        FgAbGroup::free(2),
        IntMatrix::from_rows(&[vec![1], vec![0]]).unwrap(),
    )
    .unwrap()
}

/// The degree-1 Mayer–Vietoris difference map (x, y) ↦ π₂*(y) − π₁*(x)
/// on `Z[w] ⊕ Z[w] → Z[z] ⊕ Z[w]`, assembled from a torus-map K₁ matrix.
pub fn assemble_mv_k1_map(k1_matrix: &IntMatrix) -> Result<GroupHom> {
    if k1_matrix.rows() != 2 || k1_matrix.cols() != 2 {
        return Err(Error::validation("K1 matrix of a torus map must be 2x2"));
    }
    let m10 = k1_matrix[(1, 0)].clone();
    let m11 = k1_matrix[(1, 1)].clone();
    GroupHom::new(
        FgAbGroup::free(2),
        FgAbGroup::free(2),
        IntMatrix::new(
            2,
            2,
            vec![0.into(), m10, (-1).into(), m11],
        )?,
    )
}

/// The degree-0 Mayer–Vietoris difference map (x, y) ↦ (y − x, 0)
/// on `Z[1] ⊕ Z[1] → Z[1] ⊕ Z·θ[w]`: both restrictions hit
/// the unit class and nothing hits the suspension generator.
pub fn assemble_mv_k0_map() -> GroupHom {
    GroupHom::new(
        FgAbGroup::free(2),
        FgAbGroup::free(2),
        IntMatrix::from_rows(&[vec![-1, 1], vec![0, 0]]).unwrap(),
    )
    .unwrap()
}
