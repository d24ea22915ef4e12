use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

use super::quad::{fiber_vector, point, QuadratureSpec};

/// A real function on the unit tangent bundle of S², sampled on the
/// product grid of a `QuadratureSpec`: Gauss–Legendre nodes in cos θ,
/// uniform azimuths, uniform fiber angles. Row-major `[l][j][k]`.
#[derive(Clone, Debug)]
pub struct SymbolField {
    l: usize,
    m: usize,
    f: usize,
    values: Vec<f64>,
}

impl SymbolField {
    pub fn new(spec: &QuadratureSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.l * spec.m * spec.f {
            return Err(Error::validation(format!(
                "field needs {} samples for the ({}, {}, {}) grid, got {}",
                spec.l * spec.m * spec.f,
                spec.l,
                spec.m,
                spec.f,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("field contains non-finite samples"));
        }
        Ok(SymbolField {
            l: spec.l,
            m: spec.m,
            f: spec.f,
            values,
        })
    }

    pub fn constant(spec: &QuadratureSpec, value: f64) -> Self {
        SymbolField {
            l: spec.l,
            m: spec.m,
            f: spec.f,
            values: vec![value; spec.l * spec.m * spec.f],
        }
    }

    /// Sample a function of the chart angles (θ, φ, ψ).
    pub fn from_angles(spec: &QuadratureSpec, g: impl Fn(f64, f64, f64) -> f64) -> Result<Self> {
        let grid = spec.grid();
        let mut values = Vec::with_capacity(spec.l * spec.m * spec.f);
        for &theta in &grid.thetas {
            for &phi in &grid.phis {
                for &psi in &grid.psis {
                    values.push(g(theta, phi, psi));
                }
            }
        }
        SymbolField::new(spec, values)
    }

    /// Sample a function of the ambient base point and unit tangent vector.
    pub fn from_point_fn(
        spec: &QuadratureSpec,
        g: impl Fn([f64; 3], [f64; 3]) -> f64,
    ) -> Result<Self> {
        SymbolField::from_angles(spec, |theta, phi, psi| {
            g(point(theta, phi), fiber_vector(theta, phi, psi))
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.l, self.m, self.f)
    }

    pub fn matches(&self, spec: &QuadratureSpec) -> bool {
        (self.l, self.m, self.f) == (spec.l, spec.m, spec.f)
    }

    #[inline]
    pub fn value(&self, l: usize, j: usize, k: usize) -> f64 {
        self.values[(l * self.m + j) * self.f + k]
    }

    #[inline]
    pub(crate) fn value_mut(&mut self, l: usize, j: usize, k: usize) -> &mut f64 {
        &mut self.values[(l * self.m + j) * self.f + k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymbolField {
        SymbolField {
            l: self.l,
            m: self.m,
            f: self.f,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn add(&self, other: &SymbolField) -> Result<SymbolField> {
        if self.dims() != other.dims() {
            return Err(Error::validation("field grids differ"));
        }
        Ok(SymbolField {
            l: self.l,
            m: self.m,
            f: self.f,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Quadrature of a symbol field over the cosphere bundle with the measure
/// induced by the surface measure on S² times the fiber arc length,
/// scaled by the quadrature's normalization. The constant 1 field integrates to
/// normalization·8π². Summation is pairwise with a fixed order, so the
/// result is bit-for-bit deterministic.
pub fn trace_symbol(field: &SymbolField, spec: &QuadratureSpec) -> Result<f64> {
    if !field.matches(spec) {
        return Err(Error::validation(format!(
            "field grid {:?} does not match quadrature ({}, {}, {})",
            field.dims(),
            spec.l,
            spec.m,
            spec.f
        )));
    }
    let grid = spec.grid();
    let mut weighted = Vec::with_capacity(spec.l * spec.m * spec.f);
    for l in 0..spec.l {
        let w = grid.weights[l];
        for j in 0..spec.m {
            for k in 0..spec.f {
                weighted.push(w * field.value(l, j, k));
            }
        }
    }
    let cell = (std::f64::consts::TAU / spec.m as f64) * (std::f64::consts::TAU / spec.f as f64);
    Ok(spec.normalization * cell * pairwise_sum(&weighted))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn total_mass_is_eight_pi_squared() {
        // Oracle: vol(S²)·vol(S¹) = 4π·2π.
        let spec = QuadratureSpec::default();
        let one = SymbolField::constant(&spec, 1.0);
        let t = trace_symbol(&one, &spec).unwrap();
        assert!((t - 8.0 * PI * PI).abs() < 1e-10, "tau(1) = {t}");
    }

    #[test]
    fn odd_harmonics_integrate_to_zero() {
        let spec = QuadratureSpec::default();
        // z = cos θ is odd under the antipode; Gauss-Legendre nodes are
        // symmetric, so the quadrature kills it exactly.
        let f = SymbolField::from_angles(&spec, |theta, _, _| theta.cos()).unwrap();
        let t = trace_symbol(&f, &spec).unwrap();
        assert!(t.abs() < 1e-10, "odd integral {t}");
    }

    #[test]
    fn fiber_cosine_squared() {
        // Oracle: ∫ cos²ψ dψ = π over the fiber, times 4π over the base.
        let spec = QuadratureSpec::default();
        let f = SymbolField::from_angles(&spec, |_, _, psi| psi.cos().powi(2)).unwrap();
        let t = trace_symbol(&f, &spec).unwrap();
        assert!((t - 4.0 * PI * PI).abs() < 1e-8, "got {t}");
    }

    #[test]
    fn trace_is_linear_and_positive() {
        let spec = QuadratureSpec::default();
        let f = SymbolField::from_angles(&spec, |t, p, s| (t.cos() * p.sin() + s.cos()).powi(2))
            .unwrap();
        let g = SymbolField::from_angles(&spec, |t, _, _| 1.0 + 0.5 * t.sin()).unwrap();
        let tf = trace_symbol(&f, &spec).unwrap();
        let tg = trace_symbol(&g, &spec).unwrap();
        assert!(tf >= 0.0, "positivity");
        let sum = f.add(&g).unwrap();
        let tsum = trace_symbol(&sum, &spec).unwrap();
        assert!((tsum - tf - tg).abs() < 1e-9);
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let spec = QuadratureSpec::default();
        let other = QuadratureSpec::new(16, 32, 16, 1.0).unwrap();
        let f = SymbolField::constant(&other, 1.0);
        assert!(trace_symbol(&f, &spec).is_err());
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        let spec = QuadratureSpec::new(8, 8, 8, 1.0).unwrap();
        let mut values = vec![0.0; 8 * 8 * 8];
        values[5] = f64::NAN;
        assert!(SymbolField::new(&spec, values).is_err());
    }

    #[test]
    fn normalization_rescales() {
        let spec = QuadratureSpec::new(16, 16, 16, 1.0 / (8.0 * PI * PI)).unwrap();
        let one = SymbolField::constant(&spec, 1.0);
        let t = trace_symbol(&one, &spec).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
    }
}
