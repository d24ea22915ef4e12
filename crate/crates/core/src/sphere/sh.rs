//! Real spherical-harmonic analysis and pointwise synthesis on the
//! Gauss–Legendre × uniform grid.
//!
//! With Y_nm = P̄_n^m(cos θ)·e^{imφ} (orthonormal over the sphere), the
//! analysis quadrature is exact whenever the field is a spherical polynomial
//! of degree ≤ 2L−1−n_max with azimuthal orders resolved by M; synthesis at
//! arbitrary points is then exact for band-limited fields.

use num_complex::Complex64;

use super::quad::Grid;

/// Index into the triangular (n, m) table, m ≤ n ≤ n_max.
#[inline]
pub fn tri(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

/// Fully normalized associated Legendre values P̄_n^m(x) for all
/// 0 ≤ m ≤ n ≤ n_max, via the standard stable recurrences.
pub fn legendre_table(n_max: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; tri(n_max, n_max) + 1];
    let s = (1.0 - x * x).max(0.0).sqrt();
    p[tri(0, 0)] = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for m in 1..=n_max {
        // sectoral seed
        p[tri(m, m)] =
            -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s * p[tri(m - 1, m - 1)];
    }
    for m in 0..n_max {
        p[tri(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * x * p[tri(m, m)];
    }
    for m in 0..=n_max {
        for n in m + 2..=n_max {
            let a = ((4 * n * n - 1) as f64 / (n * n - m * m) as f64).sqrt();
            let b = (((n - 1) * (n - 1) - m * m) as f64 / (4 * (n - 1) * (n - 1) - 1) as f64)
                .sqrt();
            p[tri(n, m)] = a * (x * p[tri(n - 1, m)] - b * p[tri(n - 2, m)]);
        }
    }
    p
}

/// Spherical-harmonic coefficients of a real field sampled on the base
/// grid, kept for m ≥ 0 (the m < 0 half is determined by reality).
#[derive(Clone, Debug)]
pub struct ShCoefficients {
    pub n_max: usize,
    /// coeffs[tri(n, m)] = a_{nm}
    pub coeffs: Vec<Complex64>,
}

/// Analyze a real base field (row-major l × m grid) up to degree n_max.
pub fn analyze(field: &[f64], grid: &Grid, n_max: usize) -> ShCoefficients {
    let l_count = grid.xs.len();
    let m_count = grid.phis.len();
    debug_assert_eq!(field.len(), l_count * m_count);
    // azimuthal DFT rows: g[m][l] = (2π/M)·Σ_j field(l, j)·e^{-imφ_j}
    let dphi = std::f64::consts::TAU / m_count as f64;
    let mut g = vec![Complex64::ZERO; (n_max + 1) * l_count];
    for m in 0..=n_max {
        for l in 0..l_count {
            let mut acc = Complex64::ZERO;
            for j in 0..m_count {
                let angle = -(m as f64) * grid.phis[j];
                acc += field[l * m_count + j] * Complex64::from_polar(1.0, angle);
            }
            g[m * l_count + l] = acc * dphi;
        }
    }
    let mut coeffs = vec![Complex64::ZERO; tri(n_max, n_max) + 1];
    for l in 0..l_count {
        let table = legendre_table(n_max, grid.xs[l]);
        let w = grid.weights[l];
        for m in 0..=n_max {
            let gl = g[m * l_count + l] * w;
            for n in m..=n_max {
                coeffs[tri(n, m)] += gl * table[tri(n, m)];
            }
        }
    }
    ShCoefficients { n_max, coeffs }
}

/// Evaluate the band-limited reconstruction at an arbitrary point, with a
/// precomputed Legendre table for cos θ at that point.
pub fn synthesize_with_table(sh: &ShCoefficients, table: &[f64], phi: f64) -> f64 {
    let mut value = 0.0;
    for m in 0..=sh.n_max {
        let mut radial = Complex64::ZERO;
        for n in m..=sh.n_max {
            radial += sh.coeffs[tri(n, m)] * table[tri(n, m)];
        }
        if m == 0 {
            value += radial.re;
        } else {
            let phase = Complex64::from_polar(1.0, m as f64 * phi);
            value += 2.0 * (radial * phase).re;
        }
    }
    value
}

pub fn synthesize(sh: &ShCoefficients, theta: f64, phi: f64) -> f64 {
    let table = legendre_table(sh.n_max, theta.cos());
    synthesize_with_table(sh, &table, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::quad::QuadratureSpec;

    #[test]
    fn legendre_orthonormality_under_quadrature() {
        let spec = QuadratureSpec::default();
        let grid = spec.grid();
        // ∫ P̄_n^m P̄_n'^m dx · 2π = δ_{nn'}
        for m in 0..4usize {
            for n in m..8 {
                for n2 in m..8 {
                    let mut acc = 0.0;
                    for (l, &x) in grid.xs.iter().enumerate() {
                        let t = legendre_table(8, x);
                        acc += grid.weights[l] * t[tri(n, m)] * t[tri(n2, m)];
                    }
                    acc *= std::f64::consts::TAU;
                    let expected = if n == n2 { 1.0 } else { 0.0 };
                    assert!(
                        (acc - expected).abs() < 1e-12,
                        "orthonormality fails at n={n}, n2={n2}, m={m}: {acc}"
                    );
                }
            }
        }
    }

    #[test]
    fn analysis_recovers_synthesized_coefficients() {
        let spec = QuadratureSpec::default();
        let grid = spec.grid();
        let n_max = 16;
        let mut rng = crate::numeric::SplitMix64::new(77);
        // random band-limited coefficients
        let mut sh = ShCoefficients {
            n_max,
            coeffs: vec![Complex64::ZERO; tri(n_max, n_max) + 1],
        };
        for n in 0..=n_max {
            for m in 0..=n {
                let re = rng.next_signed();
                let im = if m == 0 { 0.0 } else { rng.next_signed() };
                sh.coeffs[tri(n, m)] = Complex64::new(re, im);
            }
        }
        // sample on the grid
        let mut field = vec![0.0; grid.xs.len() * grid.phis.len()];
        for (l, &theta) in grid.thetas.iter().enumerate() {
            for (j, &phi) in grid.phis.iter().enumerate() {
                field[l * grid.phis.len() + j] = synthesize(&sh, theta, phi);
            }
        }
        // re-analyze and compare
        let back = analyze(&field, &grid, n_max);
        for idx in 0..sh.coeffs.len() {
            let err = (back.coeffs[idx] - sh.coeffs[idx]).norm();
            assert!(err < 1e-11, "coefficient {idx} off by {err:e}");
        }
    }

    #[test]
    fn synthesis_is_exact_off_grid_for_bandlimited_fields() {
        // A degree-2 spherical polynomial: f = x·y + z² (in ambient coords).
        let spec = QuadratureSpec::default();
        let grid = spec.grid();
        let f = |theta: f64, phi: f64| {
            let p = super::super::quad::point(theta, phi);
            p[0] * p[1] + p[2] * p[2]
        };
        let mut field = vec![0.0; grid.xs.len() * grid.phis.len()];
        for (l, &theta) in grid.thetas.iter().enumerate() {
            for (j, &phi) in grid.phis.iter().enumerate() {
                field[l * grid.phis.len() + j] = f(theta, phi);
            }
        }
        let sh = analyze(&field, &grid, 31);
        for &(theta, phi) in &[(0.123, 5.1), (1.97, 2.2), (3.0, 0.4)] {
            let err = (synthesize(&sh, theta, phi) - f(theta, phi)).abs();
            assert!(err < 1e-12, "off-grid synthesis error {err:e}");
        }
    }
}
