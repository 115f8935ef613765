//! Physical parameters, scattering kinematics and validity checks.
//!
//! All quantities are expressed in natural units (hbar = c = 1); masses,
//! momenta and photon energies all carry energy dimension and no unit
//! conversion happens anywhere downstream.
//!
//! The Coulomb coupling enters as potential `-prefactor * Z e^2 / |x|`
//! and force `+prefactor * Z e^2 * grad(1/|x|)`. The prefactor defaults
//! to 1/2; set it to 1 to recover the textbook potential `-Z e^2 / |x|`.
//! Every module reads the prefactor from [`PhysicalParams`], so the three
//! computational routes stay mutually consistent for either choice.

use crate::error::{BremError, Result};
use crate::vec3::{self, Vec3};

/// Ratio Z e^2 / min(v, v') at or above which the Born approximation is
/// considered suspect. The plane-wave treatment needs Z e^2 << v, v'.
pub const BORN_VALIDITY_THRESHOLD: f64 = 0.1;

/// Charge, coupling and mass of the scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Charge number Z of the scattering center (> 0).
    pub z_charge: f64,
    /// Coupling e^2 (dimensionless in natural units, > 0).
    pub e_squared: f64,
    /// Mass m of the radiating particle (energy units, > 0).
    pub mass: f64,
    /// Dimensionless factor multiplying Z e^2 / |x| in the potential
    /// (default 1/2).
    pub coulomb_prefactor: f64,
}

impl PhysicalParams {
    /// Parameters with the default Coulomb prefactor 1/2.
    pub fn new(z_charge: f64, e_squared: f64, mass: f64) -> Result<Self> {
        Self::with_prefactor(z_charge, e_squared, mass, 0.5)
    }

    pub fn with_prefactor(
        z_charge: f64,
        e_squared: f64,
        mass: f64,
        coulomb_prefactor: f64,
    ) -> Result<Self> {
        if !(z_charge > 0.0) || !z_charge.is_finite() {
            return Err(BremError::invalid("z_charge", "must be positive and finite"));
        }
        if !(e_squared > 0.0) || !e_squared.is_finite() {
            return Err(BremError::invalid("e_squared", "must be positive and finite"));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(BremError::invalid("mass", "must be positive and finite"));
        }
        if !(coulomb_prefactor > 0.0) || !coulomb_prefactor.is_finite() {
            return Err(BremError::invalid(
                "coulomb_prefactor",
                "must be positive and finite",
            ));
        }
        Ok(Self {
            z_charge,
            e_squared,
            mass,
            coulomb_prefactor,
        })
    }

    /// Strength K = prefactor * Z e^2 of the attractive force -K x / r^3.
    #[inline]
    pub fn coulomb_strength(&self) -> f64 {
        self.coulomb_prefactor * self.z_charge * self.e_squared
    }

    /// Kinematic photon-energy ceiling m v^2 / 2 for incoming speed `v`.
    #[inline]
    pub fn omega_max(&self, v: f64) -> f64 {
        0.5 * self.mass * v * v
    }
}

/// Incoming/outgoing momenta of one scattering event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterKinematics {
    pub p_in: Vec3,
    pub p_out: Vec3,
    pub mass: f64,
}

impl ScatterKinematics {
    /// The incoming momentum must be nonzero (the flux v = |p|/m divides
    /// the cross section).
    pub fn new(p_in: Vec3, p_out: Vec3, mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(BremError::invalid("mass", "must be positive and finite"));
        }
        if vec3::norm_sq(&p_in) == 0.0 {
            return Err(BremError::invalid(
                "p_in",
                "incoming momentum must be nonzero (flux v = |p|/m divides the rate)",
            ));
        }
        Ok(Self { p_in, p_out, mass })
    }

    /// Photon energy omega = E_p - E_p' = (|p|^2 - |p'|^2) / 2m.
    /// May be negative; the sign conveys kinematic allowance.
    #[inline]
    pub fn photon_energy(&self) -> f64 {
        (vec3::norm_sq(&self.p_in) - vec3::norm_sq(&self.p_out)) / (2.0 * self.mass)
    }

    #[inline]
    pub fn v_in(&self) -> Vec3 {
        vec3::scale(&self.p_in, 1.0 / self.mass)
    }

    #[inline]
    pub fn v_out(&self) -> Vec3 {
        vec3::scale(&self.p_out, 1.0 / self.mass)
    }

    #[inline]
    pub fn speed_in(&self) -> f64 {
        vec3::norm(&self.p_in) / self.mass
    }

    #[inline]
    pub fn speed_out(&self) -> f64 {
        vec3::norm(&self.p_out) / self.mass
    }
}

/// One emitted photon mode: wavevector and its frequency omega = |k|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMode {
    pub k_vec: Vec3,
    pub omega: f64,
}

impl PhotonMode {
    pub fn new(k_vec: Vec3) -> Result<Self> {
        let omega = vec3::norm(&k_vec);
        if omega == 0.0 {
            return Err(BremError::invalid("k_vec", "photon wavevector must be nonzero"));
        }
        if !omega.is_finite() {
            return Err(BremError::invalid("k_vec", "components must be finite"));
        }
        Ok(Self { k_vec, omega })
    }
}

/// v = p / m.
pub fn velocity_from_momentum(p: &Vec3, mass: f64) -> Result<Vec3> {
    if !(mass > 0.0) {
        return Err(BremError::invalid("mass", "must be positive"));
    }
    Ok(vec3::scale(p, 1.0 / mass))
}

/// Allowed final speeds [0, v]: energy conservation E_p = E_p' + k with
/// k >= 0 forces v' <= v.
pub fn final_speed_range(v: f64) -> Result<(f64, f64)> {
    if !(v > 0.0) {
        return Err(BremError::invalid("v", "incoming speed must be positive"));
    }
    Ok((0.0, v))
}

/// Z e^2 / min(v, v'). Values at or above [`BORN_VALIDITY_THRESHOLD`]
/// signal that the plane-wave approximation is suspect; this is a
/// warning condition, not an error.
pub fn born_validity_ratio(params: &PhysicalParams, v: f64, v_prime: f64) -> Result<f64> {
    if !(v > 0.0) || !(v_prime > 0.0) {
        return Err(BremError::invalid("v", "speeds must be positive"));
    }
    Ok(params.z_charge * params.e_squared / v.min(v_prime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn velocity_is_momentum_over_mass() {
        assert_eq!(velocity_from_momentum(&[1.0, 0.0, 0.0], 1.0).unwrap(), [1.0, 0.0, 0.0]);
        assert_eq!(velocity_from_momentum(&[0.0, 0.0, 0.0], 2.0).unwrap(), [0.0, 0.0, 0.0]);
        let v = velocity_from_momentum(&[0.6, 0.8, 0.0], 2.0).unwrap();
        assert_relative_eq!(v[0], 0.3);
        assert_relative_eq!(v[1], 0.4);
        assert_eq!(v[2], 0.0);
        assert!(velocity_from_momentum(&[1.0, 0.0, 0.0], 0.0).is_err());
        assert!(velocity_from_momentum(&[1.0, 0.0, 0.0], -1.0).is_err());
    }

    #[test]
    fn photon_energy_examples() {
        let elastic = ScatterKinematics::new([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0).unwrap();
        assert_eq!(elastic.photon_energy(), 0.0);

        let stop = ScatterKinematics::new([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], 1.0).unwrap();
        assert_relative_eq!(stop.photon_energy(), 0.5);

        let rotated = ScatterKinematics::new([0.0, 1.0, 0.0], [0.0, 0.0, 1.0], 1.0).unwrap();
        assert_eq!(rotated.photon_energy(), 0.0);
    }

    #[test]
    fn photon_energy_sign_conveys_allowance() {
        let gain = ScatterKinematics::new([1.0, 0.0, 0.0], [2.0, 0.0, 0.0], 1.0).unwrap();
        assert!(gain.photon_energy() < 0.0);
    }

    #[test]
    fn final_speed_range_examples() {
        assert_eq!(final_speed_range(1.0).unwrap(), (0.0, 1.0));
        assert_eq!(final_speed_range(0.3).unwrap(), (0.0, 0.3));
        assert_eq!(final_speed_range(1e-8).unwrap(), (0.0, 1e-8));
        assert!(final_speed_range(0.0).is_err());
        assert!(final_speed_range(-0.1).is_err());
    }

    #[test]
    fn born_ratio_examples() {
        let p = PhysicalParams::new(1.0, 0.01, 1.0).unwrap();
        assert_relative_eq!(born_validity_ratio(&p, 1.0, 0.5).unwrap(), 0.02);

        let p = PhysicalParams::new(1.0, 0.5, 1.0).unwrap();
        assert_relative_eq!(born_validity_ratio(&p, 0.5, 0.5).unwrap(), 1.0);
        assert!(born_validity_ratio(&p, 0.5, 0.5).unwrap() >= BORN_VALIDITY_THRESHOLD);

        let p = PhysicalParams::new(2.0, 0.0073, 1.0).unwrap();
        assert_relative_eq!(born_validity_ratio(&p, 0.1, 0.05).unwrap(), 0.292, epsilon = 1e-12);

        assert!(born_validity_ratio(&p, 0.0, 0.1).is_err());
        assert!(born_validity_ratio(&p, 0.1, -0.2).is_err());
    }

    #[test]
    fn params_reject_nonpositive() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::with_prefactor(1.0, 1.0, 1.0, 0.0).is_err());
        let p = PhysicalParams::new(2.0, 0.5, 3.0).unwrap();
        assert_eq!(p.coulomb_prefactor, 0.5);
        assert_relative_eq!(p.coulomb_strength(), 0.5);
    }

    #[test]
    fn photon_mode_tracks_wavevector_norm() {
        let m = PhotonMode::new([0.0, 3.0, 4.0]).unwrap();
        assert_relative_eq!(m.omega, 5.0);
        assert!(PhotonMode::new([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn kinematics_rejects_zero_flux() {
        assert!(ScatterKinematics::new([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0).is_err());
    }
}
