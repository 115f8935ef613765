//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors reported by the physics and numerics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BremError {
    /// A constructor or operation received a physically invalid argument.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Zero momentum transfer: the Born gradient element 4πi q/|q|² is
    /// singular at q = 0 and the phase space excludes it.
    #[error("singular momentum transfer: outgoing momentum equals incoming momentum")]
    SingularMomentumTransfer,

    /// Kinematically forbidden configuration (e.g. photon energy outside
    /// the allowed window).
    #[error("kinematically forbidden: {0}")]
    Kinematics(String),

    /// The elastic channel (omega = 0) carries no dipole radiation; the
    /// x and x-double-dot conversions divide by omega.
    #[error("elastic channel: omega = 0 carries no dipole radiation")]
    ElasticChannel,

    /// A quadrature failed to reach the requested tolerance. Carries the
    /// achieved error estimate so callers can report it honestly.
    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    /// Negative imaginary part of the effective action would violate
    /// unitarity of the vacuum persistence probability.
    #[error("unitarity violation: Im S_eff = {0} is negative")]
    UnitarityViolation(f64),

    /// Outside the quasi-classical soft-photon regime.
    #[error("outside validity range: {0}")]
    Validity(String),

    /// The orbit integrator failed (step-size underflow near the center).
    #[error("orbit integration failed: {0}")]
    OrbitIntegration(String),

    /// The simulation window is too short for a clean scattering orbit.
    #[error("simulation window too short: {0}")]
    SimulationWindow(String),

    /// Window-end acceleration is not negligible, so the windowed Fourier
    /// transform would leak.
    #[error("spectral leakage: {0}")]
    SpectralLeakage(String),
}

pub type Result<T> = std::result::Result<T, BremError>;

impl BremError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        BremError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
