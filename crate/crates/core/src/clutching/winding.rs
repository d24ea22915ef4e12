use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest accepted sample count for a loop.
pub const MIN_LOOP_SAMPLES: usize = 16;

/// Samples with modulus below this are treated as passing through zero.
const NEAR_ZERO: f64 = 1e-9;

/// Adjacent phase increments must stay strictly below π; the margin keeps
/// float noise on antipodal ratios from being read as a legal step.
const MAX_PHASE_STEP: f64 = PI - 1e-6;

/// Total winding must come out integral to this relative tolerance.
const RESIDUE_TOL: f64 = 1e-6;

/// A nowhere-vanishing loop sampled at the N-th roots of unity:
/// `samples[k] = f(e^{2πik/N})`.
#[derive(Clone, Debug)]
pub struct LoopSample {
    samples: Vec<Complex64>,
}

impl LoopSample {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < MIN_LOOP_SAMPLES {
            return Err(Error::validation(format!(
                "loop needs at least {MIN_LOOP_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if let Some(k) = samples.iter().position(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::guard(format!("non-finite sample {k} in loop")));
        }
        if let Some(k) = samples.iter().position(|s| s.norm() <= NEAR_ZERO) {
            return Err(Error::refusal(format!(
                "loop passes through zero near sample {k} (|f| = {:.3e}); winding is undefined",
                samples[k].norm()
            )));
        }
        Ok(LoopSample { samples })
    }

    /// Sample a closure at the N-th roots of unity.
    pub fn from_fn(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        let samples = (0..n)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / n as f64;
                f(Complex64::from_polar(1.0, theta))
            })
            .collect();
        LoopSample::new(samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Pointwise product of two loops sampled at the same resolution.
    pub fn product(&self, other: &LoopSample) -> Result<LoopSample> {
        if self.len() != other.len() {
            return Err(Error::validation("loop sample counts differ"));
        }
        LoopSample::new(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }
}

/// Degree of the loop: accumulated phase / 2π, by phase continuation on the
/// samples. Adjacent increments at or beyond π are rejected as undersampled.
pub fn winding_number(loop_sample: &LoopSample) -> Result<i64> {
    let s = &loop_sample.samples;
    let n = s.len();
    let mut total = 0.0;
    for k in 0..n {
        let ratio = s[(k + 1) % n] / s[k];
        let delta = ratio.arg();
        if delta.abs() >= MAX_PHASE_STEP {
            return Err(Error::guard(format!(
                "undersampled loop: phase step {delta:.6} at sample {k} is not below pi"
            )));
        }
        total += delta;
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > RESIDUE_TOL {
        return Err(Error::guard(format!(
            "winding residue {:.3e} exceeds tolerance; loop may not close",
            turns - rounded
        )));
    }
    Ok(rounded as i64)
}
