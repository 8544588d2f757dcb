//! Parameter space and the model's pure functions.
//!
//! All six parameters are validated once, at construction; every operation
//! afterwards assumes a valid [`ModelParams`] and is a pure function of it.

use thiserror::Error;

/// A parameter vector that failed validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("alpha must be positive (got {0})")]
    Alpha(f64),
    #[error("delta must be non-negative (got {0})")]
    Delta(f64),
    #[error("theta must lie strictly between 0 and 1 (got {0})")]
    Theta(f64),
    #[error("gamma must be positive (got {0})")]
    Gamma(f64),
    #[error("phi must exceed 1 (got {0})")]
    Phi(f64),
    #[error("capacity must be positive (got {0})")]
    Capacity(f64),
}

/// Marginal benefit diverges as flow goes to zero; callers must stay strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("marginal benefit undefined at zero flow")]
pub struct ZeroFlowError;

/// Validated parameter vector for one economy (or one capacity group).
///
/// Fields are immutable after construction, so every instance in the program
/// satisfies: `alpha > 0`, `delta ≥ 0`, `0 < theta < 1`, `gamma > 0`,
/// `phi > 1`, `capacity > 0`. Together the theta and phi constraints
/// guarantee `phi − theta > 0`, which the closed-form optimum relies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    delta: f64,
    theta: f64,
    gamma: f64,
    phi: f64,
    capacity: f64,
}

impl ModelParams {
    /// Validate and construct. Comparisons are written so that NaN fails.
    pub fn new(
        alpha: f64,
        delta: f64,
        theta: f64,
        gamma: f64,
        phi: f64,
        capacity: f64,
    ) -> Result<Self, ParamError> {
        if !(alpha > 0.0) {
            return Err(ParamError::Alpha(alpha));
        }
        if !(delta >= 0.0) {
            return Err(ParamError::Delta(delta));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(ParamError::Theta(theta));
        }
        if !(gamma > 0.0) {
            return Err(ParamError::Gamma(gamma));
        }
        if !(phi > 1.0) {
            return Err(ParamError::Phi(phi));
        }
        if !(capacity > 0.0) {
            return Err(ParamError::Capacity(capacity));
        }
        Ok(Self {
            alpha,
            delta,
            theta,
            gamma,
            phi,
            capacity,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// Same benefit and cost shape, different institutional capacity.
    pub fn with_capacity(&self, capacity: f64) -> Result<Self, ParamError> {
        Self::new(
            self.alpha,
            self.delta,
            self.theta,
            self.gamma,
            self.phi,
            capacity,
        )
    }

    /// Benefit from globalization flows, `B(M) = α(1+δ)·M^θ`.
    ///
    /// Strictly increasing and strictly concave for `m > 0`; zero at `m = 0`.
    pub fn benefit(&self, m: f64) -> f64 {
        self.alpha * (1.0 + self.delta) * m.powf(self.theta)
    }

    /// Congestion cost of pushing flow `m` through capacity `K`,
    /// `C(M) = γ·(M/K)^φ`. Strictly convex since `φ > 1`; zero at `m = 0`.
    pub fn congestion_cost(&self, m: f64) -> f64 {
        self.gamma * (m / self.capacity).powf(self.phi)
    }

    /// Net welfare `W(M) = B(M) − C(M)`. Exactly zero at `m = 0`.
    pub fn welfare(&self, m: f64) -> f64 {
        self.benefit(m) - self.congestion_cost(m)
    }

    /// Marginal benefit `B'(M) = α(1+δ)θ·M^(θ−1)`, positive and strictly
    /// decreasing for `m > 0`. Diverges at zero flow, hence the error.
    pub fn marginal_benefit(&self, m: f64) -> Result<f64, ZeroFlowError> {
        if !(m > 0.0) {
            return Err(ZeroFlowError);
        }
        Ok(self.alpha * (1.0 + self.delta) * self.theta * m.powf(self.theta - 1.0))
    }

    /// Marginal cost `C'(M) = γφ·K^(−φ)·M^(φ−1)`, zero at `m = 0` and
    /// strictly increasing for `m > 0`.
    pub fn marginal_cost(&self, m: f64) -> f64 {
        self.gamma * self.phi * self.capacity.powf(-self.phi) * m.powf(self.phi - 1.0)
    }
}

/// Load relative to capacity, `M/K`.
pub fn congestion_ratio(m: f64, capacity: f64) -> f64 {
    m / capacity
}

/// A named calibration: parameters plus the economy's current intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPreset {
    pub name: &'static str,
    pub params: ModelParams,
    /// Current (actual) globalization intensity, `m_actual ≥ 0`.
    pub m_actual: f64,
}
