use serde::Serialize;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial. Nodes come out ascending; weights sum to 2 exactly
/// up to roundoff.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-angle initial guess, refined by Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Product quadrature on the unit tangent bundle of S²: Gauss–Legendre of
/// order L in cos θ (exact for spherical polynomials of degree ≤ 2L−1),
/// M uniform azimuthal nodes, F uniform fiber angles. With normalization 1
/// the constant field integrates to 8π² (area 4π times fiber length 2π).
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureSpec {
    pub l: usize,
    pub m: usize,
    pub f: usize,
    pub normalization: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            l: 32,
            m: 64,
            f: 32,
            normalization: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn new(l: usize, m: usize, f: usize, normalization: f64) -> Result<Self> {
        if l < 8 || m < 8 || f < 8 {
            return Err(Error::validation(format!(
                "grid orders must all be at least 8, got ({l}, {m}, {f})"
            )));
        }
        if !normalization.is_finite() || normalization < 0.0 {
            return Err(Error::validation(
                "normalization must be finite and nonnegative",
            ));
        }
        Ok(QuadratureSpec {
            l,
            m,
            f,
            normalization,
        })
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self)
    }
}

/// The computed node set of a `QuadratureSpec`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub xs: Vec<f64>,      // Gauss-Legendre nodes, ascending in cos θ
    pub thetas: Vec<f64>,  // acos of xs
    pub weights: Vec<f64>, // Gauss-Legendre weights
    pub phis: Vec<f64>,    // uniform, 2πj/M
    pub psis: Vec<f64>,    // uniform, 2πk/F
}

impl Grid {
    fn new(spec: &QuadratureSpec) -> Self {
        let (xs, weights) = gauss_legendre(spec.l);
        let thetas = xs.iter().map(|x| x.acos()).collect();
        let phis = (0..spec.m)
            .map(|j| std::f64::consts::TAU * j as f64 / spec.m as f64)
            .collect();
        let psis = (0..spec.f)
            .map(|k| std::f64::consts::TAU * k as f64 / spec.f as f64)
            .collect();
        Grid {
            xs,
            thetas,
            weights,
            phis,
            psis,
        }
    }
}

/// Base point for spherical angles.
pub fn point(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// The local orthonormal frame (e_θ, e_φ) at (θ, φ).
pub fn frame(theta: f64, phi: f64) -> ([f64; 3], [f64; 3]) {
    (
        [
            theta.cos() * phi.cos(),
            theta.cos() * phi.sin(),
            -theta.sin(),
        ],
        [-phi.sin(), phi.cos(), 0.0],
    )
}

/// Unit tangent vector at fiber angle ψ in the local frame.
pub fn fiber_vector(theta: f64, phi: f64, psi: f64) -> [f64; 3] {
    let (et, ep) = frame(theta, phi);
    let (c, s) = (psi.cos(), psi.sin());
    [
        c * et[0] + s * ep[0],
        c * et[1] + s * ep[1],
        c * et[2] + s * ep[2],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_weights_basics() {
        for n in [8usize, 16, 32] {
            let (x, w) = gauss_legendre(n);
            assert_eq!(x.len(), n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "weights sum {sum}");
            for pair in x.windows(2) {
                assert!(pair[0] < pair[1], "nodes not ascending");
            }
            // exactness on a few even monomials: ∫ x^4 = 2/5, ∫ x^10 = 2/11
            let int4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
            assert!((int4 - 0.4).abs() < 1e-13);
            let int10: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
            assert!((int10 - 2.0 / 11.0).abs() < 1e-13);
            // odd monomials integrate to zero by symmetry
            let int3: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(3)).sum();
            assert!(int3.abs() < 1e-14);
        }
    }

    #[test]
    fn grid_orders_below_eight_are_rejected() {
        assert!(QuadratureSpec::new(4, 64, 32, 1.0).is_err());
        assert!(QuadratureSpec::new(32, 64, 32, -1.0).is_err());
        assert!(QuadratureSpec::new(8, 8, 8, 0.0).is_ok()); // zero allowed: degenerate trace
    }

    #[test]
    fn frames_are_orthonormal() {
        for &(theta, phi) in &[(0.3, 1.2), (1.5, 4.0), (2.9, 0.1)] {
            let x = point(theta, phi);
            let (et, ep) = frame(theta, phi);
            let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            assert!(dot(&x, &x) - 1.0 < 1e-14);
            assert!(dot(&et, &et) - 1.0 < 1e-14);
            assert!(dot(&ep, &ep) - 1.0 < 1e-14);
            assert!(dot(&x, &et).abs() < 1e-14);
            assert!(dot(&x, &ep).abs() < 1e-14);
            assert!(dot(&et, &ep).abs() < 1e-14);
        }
    }
}
