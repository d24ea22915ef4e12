//! The SO(3) action on symbol fields: the base point is pulled back through
//! the rotation and the fiber frame is transported by its differential,
//! which on unit tangent vectors is the rotation itself.
//!
//! Resampling is spectral in both factors: trigonometric interpolation in
//! the fiber angle and spherical-harmonic analysis/synthesis (band L−1) on
//! the base. Source points that land exactly on grid nodes short-circuit to
//! a copy, so the identity rotation is a no-op bit for bit.

use crate::error::{Error, Result};

use super::field::SymbolField;
use super::quad::{frame, point, QuadratureSpec};
use super::sh::{analyze, legendre_table, synthesize_with_table, ShCoefficients};

const ORTHO_TOL: f64 = 1e-12;
const SNAP_TOL: f64 = 1e-13;

fn matvec(g: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        g[0][0] * v[0] + g[0][1] * v[1] + g[0][2] * v[2],
        g[1][0] * v[0] + g[1][1] * v[1] + g[1][2] * v[2],
        g[2][0] * v[0] + g[2][1] * v[1] + g[2][2] * v[2],
    ]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn validate_rotation(g: &[[f64; 3]; 3]) -> Result<()> {
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += g[k][i] * g[k][j];
            }
            let expected = if i == j { 1.0 } else { 0.0 };
            if (acc - expected).abs() > ORTHO_TOL {
                return Err(Error::validation(format!(
                    "matrix is not orthogonal: (gᵀg)[{i}][{j}] = {acc:.15}"
                )));
            }
        }
    }
    let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    if (det - 1.0).abs() > ORTHO_TOL {
        return Err(Error::validation(format!(
            "matrix must be a proper rotation (det = {det:.15})"
        )));
    }
    Ok(())
}

/// Rotation about the given unit axis by `angle` (Rodrigues).
pub fn rotation_matrix(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let (x, y, z) = (axis[0] / n, axis[1] / n, axis[2] / n);
    let (c, s) = (angle.cos(), angle.sin());
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

struct SourcePoint {
    theta: f64,
    phi: f64,
    /// frame rotation angle: fiber angles shift by this much
    beta: f64,
    /// (l, j, fiber offset) when the source lands exactly on a grid node
    snap: Option<(usize, usize, usize)>,
}

/// Pull back `field` through the rotation g: the returned field at (x, v)
/// holds the original value at (g⁻¹x, g⁻¹v).
pub fn rotate_symbol(
    field: &SymbolField,
    g: &[[f64; 3]; 3],
    spec: &QuadratureSpec,
) -> Result<SymbolField> {
    if !field.matches(spec) {
        return Err(Error::validation("field grid does not match quadrature"));
    }
    validate_rotation(g)?;
    let grid = spec.grid();
    let (lc, mc, fc) = (spec.l, spec.m, spec.f);
    // Analysis band: degree products must stay inside the Gauss-Legendre
    // exactness range and azimuthal orders must not alias on the M-point
    // circle, so n_max = min(L-1, (M-1)/2).
    let n_max = (spec.l - 1).min((spec.m - 1) / 2);
    let dphi = std::f64::consts::TAU / mc as f64;
    let dpsi = std::f64::consts::TAU / fc as f64;

    // g⁻¹ = gᵀ for rotations
    let ginv: [[f64; 3]; 3] = [
        [g[0][0], g[1][0], g[2][0]],
        [g[0][1], g[1][1], g[2][1]],
        [g[0][2], g[1][2], g[2][2]],
    ];

    // Geometry per target base node.
    let mut sources = Vec::with_capacity(lc * mc);
    for l in 0..lc {
        for j in 0..mc {
            let (theta, phi) = (grid.thetas[l], grid.phis[j]);
            let y = matvec(&ginv, &point(theta, phi));
            let theta_s = y[2].clamp(-1.0, 1.0).acos();
            let phi_s = y[1].atan2(y[0]).rem_euclid(std::f64::consts::TAU);
            // transport the θ-leg of the frame and read its angle in the
            // frame at the source point
            let (et, _) = frame(theta, phi);
            let u = matvec(&ginv, &et);
            let (et_s, ep_s) = frame(theta_s, phi_s);
            let beta = dot(&u, &ep_s)
                .atan2(dot(&u, &et_s))
                .rem_euclid(std::f64::consts::TAU);

            // snap to an exact grid node when possible
            let snap = (|| {
                let l_s = grid
                    .xs
                    .partition_point(|&x| x < y[2].clamp(-1.0, 1.0))
                    .min(lc - 1);
                let l_s = if l_s > 0
                    && (grid.xs[l_s - 1] - y[2]).abs() < (grid.xs[l_s] - y[2]).abs()
                {
                    l_s - 1
                } else {
                    l_s
                };
                if (grid.xs[l_s] - y[2]).abs() > SNAP_TOL {
                    return None;
                }
                let j_s = (phi_s / dphi).round() as usize % mc;
                let dj = (phi_s - j_s as f64 * dphi).abs();
                if dj.min((dj - std::f64::consts::TAU).abs()) > SNAP_TOL {
                    return None;
                }
                let k_off = (beta / dpsi).round() as usize % fc;
                let dk = (beta - k_off as f64 * dpsi).abs();
                if dk.min((dk - std::f64::consts::TAU).abs()) > SNAP_TOL {
                    return None;
                }
                Some((l_s, j_s, k_off))
            })();
            sources.push(SourcePoint {
                theta: theta_s,
                phi: phi_s,
                beta,
                snap,
            });
        }
    }

    let mut out = SymbolField::constant(spec, 0.0);
    let all_snapped = sources.iter().all(|s| s.snap.is_some());

    // Fast path: a grid-preserving rotation is a pure permutation.
    if all_snapped {
        for l in 0..lc {
            for j in 0..mc {
                let s = &sources[l * mc + j];
                let (l_s, j_s, k_off) = s.snap.unwrap();
                for k in 0..fc {
                    *out.value_mut(l, j, k) = field.value(l_s, j_s, (k + k_off) % fc);
                }
            }
        }
        return Ok(out);
    }

    // Fiber Fourier components a_q, b_q as real base fields.
    let half = fc / 2;
    let mut a_fields: Vec<Vec<f64>> = vec![vec![0.0; lc * mc]; half + 1];
    let mut b_fields: Vec<Vec<f64>> = vec![vec![0.0; lc * mc]; half.saturating_sub(1)];
    for l in 0..lc {
        for j in 0..mc {
            for q in 0..=half {
                let mut acc = 0.0;
                for k in 0..fc {
                    acc += field.value(l, j, k) * (q as f64 * grid.psis[k]).cos();
                }
                a_fields[q][l * mc + j] = 2.0 * acc / fc as f64;
            }
            for q in 1..half {
                let mut acc = 0.0;
                for k in 0..fc {
                    acc += field.value(l, j, k) * (q as f64 * grid.psis[k]).sin();
                }
                b_fields[q - 1][l * mc + j] = 2.0 * acc / fc as f64;
            }
        }
    }

    let a_sh: Vec<ShCoefficients> = a_fields.iter().map(|f| analyze(f, &grid, n_max)).collect();
    let b_sh: Vec<ShCoefficients> = b_fields.iter().map(|f| analyze(f, &grid, n_max)).collect();

    for l in 0..lc {
        for j in 0..mc {
            let s = &sources[l * mc + j];
            if let Some((l_s, j_s, k_off)) = s.snap {
                for k in 0..fc {
                    *out.value_mut(l, j, k) = field.value(l_s, j_s, (k + k_off) % fc);
                }
                continue;
            }
            let table = legendre_table(n_max, s.theta.cos());
            let a_vals: Vec<f64> = a_sh
                .iter()
                .map(|sh| synthesize_with_table(sh, &table, s.phi))
                .collect();
            let b_vals: Vec<f64> = b_sh
                .iter()
                .map(|sh| synthesize_with_table(sh, &table, s.phi))
                .collect();
            for k in 0..fc {
                let psi = grid.psis[k] + s.beta;
                let mut v = 0.5 * a_vals[0];
                for q in 1..half {
                    let (sin_q, cos_q) = (q as f64 * psi).sin_cos();
                    v += a_vals[q] * cos_q + b_vals[q - 1] * sin_q;
                }
                if half >= 1 {
                    v += 0.5 * a_vals[half] * (half as f64 * psi).cos();
                }
                *out.value_mut(l, j, k) = v;
            }
        }
    }
    Ok(out)
}
