use serde::{Deserialize, Serialize};

use super::GpError;

const SQRT_5: f64 = 2.236_067_977_499_79;

/// Matérn 5/2 covariance:
/// `k(r) = σ² (1 + √5 r + 5/3 r²) exp(-√5 r)` with `r = |x - x'| / ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Matern52Kernel {
    /// σ; the kernel's value at zero distance is σ².
    pub amplitude: f64,
    /// ℓ.
    pub lengthscale: f64,
    /// Observation noise variance added to the Gram diagonal.
    pub noise_variance: f64,
}

impl Default for Matern52Kernel {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            lengthscale: 1.0,
            noise_variance: 0.1,
        }
    }
}

impl Matern52Kernel {
    pub fn validate(&self) -> Result<(), GpError> {
        if !(self.amplitude > 0.0 && self.amplitude.is_finite()) {
            return Err(GpError::InvalidKernel("amplitude must be positive"));
        }
        if !(self.lengthscale > 0.0 && self.lengthscale.is_finite()) {
            return Err(GpError::InvalidKernel("lengthscale must be positive"));
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return Err(GpError::InvalidKernel("noise variance must be non-negative"));
        }
        Ok(())
    }

    /// Prior variance k(x, x).
    pub fn variance(&self) -> f64 {
        self.amplitude * self.amplitude
    }

    /// Kernel value at scaled distance `r`.
    pub fn at_distance(&self, r: f64) -> f64 {
        let s5r = SQRT_5 * r;
        self.variance() * (1.0 + s5r + 5.0 / 3.0 * r * r) * (-s5r).exp()
    }

    pub fn eval(&self, x: &[f64; 3], y: &[f64; 3]) -> f64 {
        let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
        self.at_distance(d2.sqrt() / self.lengthscale)
    }
}
