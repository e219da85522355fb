//! Position update rules of the Harris' hawks optimizer.
//!
//! All rules act element-wise on position vectors and clamp the result into
//! the configured bounds.

use rand::Rng;

use super::levy::LevyFlight;

/// Closed interval that every position entry is clamped into.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lower, self.upper)
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lower && v <= self.upper
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::new(0.0, 1.0)
    }
}

/// `E = 2·E0·(1 − t/T)`.
pub fn escaping_energy(e0: f64, t: usize, max_iter: usize) -> f64 {
    2.0 * e0 * (1.0 - t as f64 / max_iter as f64)
}

/// `J = 2·(1 − u)` for a uniform draw `u ∈ [0, 1)`.
pub fn jump_strength_from(u: f64) -> f64 {
    2.0 * (1.0 - u)
}

/// Random jump strength in `(0, 2]`.
pub fn jump_strength<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    jump_strength_from(rng.random::<f64>())
}

/// Which update a hawk applies in one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Explore,
    SoftBesiege,
    HardBesiege,
    SoftDive,
    HardDive,
}

impl Phase {
    /// Dispatch on escaping energy `E` and the escape draw `r`.
    pub fn select(energy: f64, r: f64) -> Phase {
        let e = energy.abs();
        if e >= 1.0 {
            Phase::Explore
        } else if r >= 0.5 && e >= 0.5 {
            Phase::SoftBesiege
        } else if r >= 0.5 {
            Phase::HardBesiege
        } else if e >= 0.5 {
            Phase::SoftDive
        } else {
            Phase::HardDive
        }
    }
}

/// Random scalars of the exploration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerchDraws {
    pub q: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

impl PerchDraws {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            q: rng.random(),
            r1: rng.random(),
            r2: rng.random(),
            r3: rng.random(),
            r4: rng.random(),
        }
    }
}

/// Exploration (perching). With `q ≥ 0.5` the hawk perches relative to a
/// random member: `X_rand − r1·|X_rand − 2·r2·X|`; otherwise relative to the
/// rabbit and the population mean: `(X_rabbit − X_m) − r3·(LB + r4·(UB − LB))`.
pub fn explore_update(
    x: &[f64],
    x_rand: &[f64],
    x_rabbit: &[f64],
    x_mean: &[f64],
    draws: PerchDraws,
    bounds: Bounds,
) -> Vec<f64> {
    let PerchDraws { q, r1, r2, r3, r4 } = draws;
    if q >= 0.5 {
        x.iter()
            .zip(x_rand)
            .map(|(&xi, &ri)| bounds.clamp(ri - r1 * (ri - 2.0 * r2 * xi).abs()))
            .collect()
    } else {
        let shift = r3 * (bounds.lower + r4 * (bounds.upper - bounds.lower));
        x_rabbit
            .iter()
            .zip(x_mean)
            .map(|(&b, &m)| bounds.clamp(b - m - shift))
            .collect()
    }
}

/// Soft besiege: `ΔX − E·|J·X_rabbit − X|` with `ΔX = X_rabbit − X`.
pub fn soft_besiege(x: &[f64], x_rabbit: &[f64], energy: f64, jump: f64, bounds: Bounds) -> Vec<f64> {
    x.iter()
        .zip(x_rabbit)
        .map(|(&xi, &b)| bounds.clamp((b - xi) - energy * (jump * b - xi).abs()))
        .collect()
}

/// Hard besiege: `X_rabbit − E·|ΔX|`.
pub fn hard_besiege(x: &[f64], x_rabbit: &[f64], energy: f64, bounds: Bounds) -> Vec<f64> {
    x.iter()
        .zip(x_rabbit)
        .map(|(&xi, &b)| bounds.clamp(b - energy * (b - xi).abs()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiveMode {
    /// `Y = X_rabbit − E·|J·X_rabbit − X|`
    Soft,
    /// `Y = X_rabbit − E·|J·X_rabbit − X_m|`
    Hard,
}

/// The two dive candidates `Y` and `Z = Y + S∘LF`, both clamped.
#[allow(clippy::too_many_arguments)]
pub fn dive_candidates(
    x: &[f64],
    x_rabbit: &[f64],
    x_mean: &[f64],
    energy: f64,
    jump: f64,
    mode: DiveMode,
    levy: &[f64],
    spread: &[f64],
    bounds: Bounds,
) -> (Vec<f64>, Vec<f64>) {
    let reference = match mode {
        DiveMode::Soft => x,
        DiveMode::Hard => x_mean,
    };
    let y: Vec<f64> = x_rabbit
        .iter()
        .zip(reference)
        .map(|(&b, &r)| bounds.clamp(b - energy * (jump * b - r).abs()))
        .collect();
    let z = y
        .iter()
        .zip(levy.iter().zip(spread))
        .map(|(&yi, (&l, &s))| bounds.clamp(yi + s * l))
        .collect();
    (y, z)
}

/// Outcome of the greedy dive acceptance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiveChoice {
    Y,
    Z,
    Keep,
}

/// Accept a dive candidate only if it beats the current fitness (maximizing).
/// When both improve, `Z` wins ties and larger values.
pub fn choose_dive(current: f64, fy: f64, fz: f64) -> DiveChoice {
    let y_better = fy > current;
    let z_better = fz > current;
    if z_better && (!y_better || fz >= fy) {
        DiveChoice::Z
    } else if y_better {
        DiveChoice::Y
    } else {
        DiveChoice::Keep
    }
}

/// Result of a rapid-dive update.
#[derive(Debug, Clone, PartialEq)]
pub struct Dive {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub choice: DiveChoice,
}

/// Besiege with rapid progressive dives. `evaluate` maps a position to the
/// fitness of its decoded seed set.
#[allow(clippy::too_many_arguments)]
pub fn rapid_dive_update<R, F>(
    x: &[f64],
    current_fitness: f64,
    x_rabbit: &[f64],
    x_mean: &[f64],
    energy: f64,
    jump: f64,
    mode: DiveMode,
    levy: &LevyFlight,
    bounds: Bounds,
    evaluate: &mut F,
    rng: &mut R,
) -> Dive
where
    R: Rng + ?Sized,
    F: FnMut(&[f64]) -> f64,
{
    let dim = x.len();
    let spread: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    let steps = levy.sample(dim, rng);
    let (y, z) = dive_candidates(x, x_rabbit, x_mean, energy, jump, mode, &steps, &spread, bounds);
    let fy = evaluate(&y);
    let fz = evaluate(&z);
    match choose_dive(current_fitness, fy, fz) {
        DiveChoice::Y => Dive {
            position: y,
            fitness: fy,
            choice: DiveChoice::Y,
        },
        DiveChoice::Z => Dive {
            position: z,
            fitness: fz,
            choice: DiveChoice::Z,
        },
        DiveChoice::Keep => Dive {
            position: x.to_vec(),
            fitness: current_fitness,
            choice: DiveChoice::Keep,
        },
    }
}
