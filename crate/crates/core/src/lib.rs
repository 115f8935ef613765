//! Non-relativistic bremsstrahlung emission rates and radiated power
//! spectra for a charge scattering off a Coulomb center.
//!
//! Three independent computational routes are implemented and
//! cross-validated against each other and against analytic closed forms:
//!
//! * [`perturbative`] — first-order transition amplitudes, the Born
//!   differential cross section, the spectral density dP/domega and the
//!   total radiated power;
//! * [`effective_action`] — the photon field integrated out, with the
//!   photon emission rate read off the imaginary part of the resulting
//!   effective action;
//! * [`classical`] — the hyperbolic Coulomb orbit, Larmor power and the
//!   Fourier spectral density of the trajectory.
//!
//! Natural units throughout: hbar = c = 1.

pub mod classical;
pub mod effective_action;
pub mod error;
pub mod kinematics;
pub mod matrix_elements;
pub mod perturbative;
pub mod quadrature;
pub mod vec3;

pub use error::{BremError, Result};
pub use kinematics::{PhysicalParams, PhotonMode, ScatterKinematics};
