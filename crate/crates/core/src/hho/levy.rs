//! Lévy-stable step lengths by Mantegna's method.

use rand::Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Step scale applied to every Lévy sample.
pub const LEVY_SCALE: f64 = 0.01;

/// `σ = (Γ(1+β)·sin(πβ/2) / (Γ((1+β)/2)·β·2^((β−1)/2)))^(1/β)`.
pub fn mantegna_sigma(beta: f64) -> f64 {
    let num = gamma(1.0 + beta) * (std::f64::consts::PI * beta / 2.0).sin();
    let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

/// Sampler for Lévy steps with a fixed exponent.
#[derive(Debug, Clone, Copy)]
pub struct LevyFlight {
    beta: f64,
    sigma: f64,
}

impl LevyFlight {
    /// `beta` must lie in `(1, 2]`.
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 1.0 && beta <= 2.0) {
            return Err(Error::InvalidArgument(format!("levy exponent {beta} outside (1, 2]")));
        }
        Ok(Self {
            beta,
            sigma: mantegna_sigma(beta),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `u·σ / |v|^(1/β)` with `u, v ~ N(0, 1)`, before the 0.01 scale.
    pub fn unscaled_step<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(StandardNormal);
        let v: f64 = rng.sample(StandardNormal);
        u * self.sigma / v.abs().powf(1.0 / self.beta)
    }

    pub fn step<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        LEVY_SCALE * self.unscaled_step(rng)
    }

    pub fn sample<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> Vec<f64> {
        (0..dim).map(|_| self.step(rng)).collect()
    }
}

/// `dim` independent scaled Lévy steps.
pub fn levy_flight<R: Rng + ?Sized>(dim: usize, beta: f64, rng: &mut R) -> Result<Vec<f64>> {
    Ok(LevyFlight::new(beta)?.sample(dim, rng))
}
