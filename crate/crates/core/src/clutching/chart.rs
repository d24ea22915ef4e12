use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Central-difference step on the ambient plane.
const FD_STEP: f64 = 1e-6;

/// A plane diffeomorphism on an annulus around the unit circle, queried
/// through samplers for the map and for its numerically differentiated
/// Jacobian. An optional closed-form Jacobian serves as a cross-check.
#[derive(Clone)]
pub struct ChartChange {
    name: String,
    map: Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>,
    reference_jacobian: Option<Arc<dyn Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync>>,
    /// (inner radius, outer radius) of the domain annulus.
    annulus: (f64, f64),
}

impl ChartChange {
    pub fn new(
        name: impl Into<String>,
        map: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
        annulus: (f64, f64),
    ) -> Result<Self> {
        if !(annulus.0 > 0.0 && annulus.0 < 1.0 && annulus.1 > 1.0) {
            return Err(Error::validation(
                "annulus must have 0 < inner < 1 < outer so the unit circle is interior",
            ));
        }
        Ok(ChartChange {
            name: name.into(),
            map: Arc::new(map),
            reference_jacobian: None,
            annulus,
        })
    }

    pub fn with_reference_jacobian(
        mut self,
        jac: impl Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync + 'static,
    ) -> Self {
        self.reference_jacobian = Some(Arc::new(jac));
        self
    }

    /// The change of coordinates between the two stereographic charts of S²,
    /// K(N₁, N₂) = (N₁, N₂) / (N₁² + N₂²), i.e. inversion in the unit
    /// circle, together with its closed-form Jacobian. Construction verifies
    /// the closed form on the unit circle to 1e-12.
    pub fn stereographic() -> Self {
        let chart = ChartChange {
            name: "stereographic".into(),
            map: Arc::new(|n1: f64, n2: f64| {
                let r2 = n1 * n1 + n2 * n2;
                (n1 / r2, n2 / r2)
            }),
            reference_jacobian: Some(Arc::new(|n1: f64, n2: f64| {
                let r2 = n1 * n1 + n2 * n2;
                let s = 1.0 / (r2 * r2);
                [
                    [s * (-n1 * n1 + n2 * n2), s * (-2.0 * n1 * n2)],
                    [s * (-2.0 * n1 * n2), s * (n1 * n1 - n2 * n2)],
                ]
            })),
            annulus: (0.25, 4.0),
        };
        // Self-check: on the unit circle the map must agree with
        // (N1, N2)/(N1^2+N2^2) exactly (here: to 1e-12).
        for k in 0..256 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 256.0;
            let (n1, n2) = (theta.cos(), theta.sin());
            let (k1, k2) = (chart.map)(n1, n2);
            let r2 = n1 * n1 + n2 * n2;
            debug_assert!(
                ((k1 - n1 / r2).abs() < 1e-12) && ((k2 - n2 / r2).abs() < 1e-12),
                "stereographic chart drifted from its closed form"
            );
        }
        chart
    }

    /// The identity chart change (trivial gluing).
    pub fn identity() -> Self {
        ChartChange {
            name: "identity".into(),
            map: Arc::new(|n1, n2| (n1, n2)),
            reference_jacobian: Some(Arc::new(|_, _| [[1.0, 0.0], [0.0, 1.0]])),
            annulus: (0.25, 4.0),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn annulus(&self) -> (f64, f64) {
        self.annulus
    }

    pub fn eval(&self, n1: f64, n2: f64) -> Result<(f64, f64)> {
        let r = (n1 * n1 + n2 * n2).sqrt();
        if r < self.annulus.0 || r > self.annulus.1 {
            return Err(Error::validation(format!(
                "point at radius {r:.6} lies outside the {} annulus [{}, {}]",
                self.name, self.annulus.0, self.annulus.1
            )));
        }
        Ok((self.map)(n1, n2))
    }

    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        let (a, b) = self.eval(z.re, z.im)?;
        Ok(Complex64::new(a, b))
    }

    /// Jacobian by central finite differences with step 1e-6. When a
    /// closed-form Jacobian is attached, the two are compared to 1e-8.
    pub fn jacobian(&self, n1: f64, n2: f64) -> Result<[[f64; 2]; 2]> {
        let h = FD_STEP;
        let (x1p, y1p) = self.eval(n1 + h, n2)?;
        let (x1m, y1m) = self.eval(n1 - h, n2)?;
        let (x2p, y2p) = self.eval(n1, n2 + h)?;
        let (x2m, y2m) = self.eval(n1, n2 - h)?;
        let j = [
            [(x1p - x1m) / (2.0 * h), (x2p - x2m) / (2.0 * h)],
            [(y1p - y1m) / (2.0 * h), (y2p - y2m) / (2.0 * h)],
        ];
        if let Some(reference) = &self.reference_jacobian {
            let r = reference(n1, n2);
            for row in 0..2 {
                for col in 0..2 {
                    let err = (j[row][col] - r[row][col]).abs();
                    if err > 1e-8 {
                        return Err(Error::guard(format!(
                            "numerical Jacobian of {} deviates from the closed form by {err:.3e} at ({n1:.4}, {n2:.4})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(j)
    }
}

impl std::fmt::Debug for ChartChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChartChange({}, annulus {:?})", self.name, self.annulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stereographic_is_inversion_on_the_circle() {
        let c = ChartChange::stereographic();
        let z = Complex64::from_polar(1.0, 0.7);
        let k = c.eval_complex(z).unwrap();
        assert!((k - z).norm() < 1e-15);
        // off the circle it shrinks/expands radially
        let k = c.eval_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert!((k - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn numerical_jacobian_matches_closed_form_on_the_circle() {
        let c = ChartChange::stereographic();
        for k in 0..64 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
            // the comparison against the closed form runs inside jacobian()
            let j = c.jacobian(theta.cos(), theta.sin()).unwrap();
            // on |N| = 1 the Jacobian is the reflection with trace 0
            assert!((j[0][0] + j[1][1]).abs() < 1e-8);
        }
    }

    #[test]
    fn out_of_annulus_points_are_rejected() {
        let c = ChartChange::stereographic();
        assert!(c.eval(10.0, 0.0).is_err());
        assert!(c.eval(0.0, 0.0).is_err());
    }

    #[test]
    fn annulus_must_contain_the_unit_circle() {
        assert!(ChartChange::new("bad", |a, b| (a, b), (1.5, 2.0)).is_err());
    }
}
