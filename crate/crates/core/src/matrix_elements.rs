//! Born-approximation matrix elements, the transverse polarization
//! projector, and a brute-force screened Fourier-integral oracle used to
//! validate the analytic forms.
//!
//! The plane-wave matrix element of grad(1/|x|) between momenta p and p'
//! is 4 pi i (p' - p) / |p' - p|^2. Screening replaces 1/|x| by the
//! Yukawa form exp(-mu |x|)/|x|, whose element is 4 pi i q / (q^2 + mu^2)
//! with q = p' - p; the oracle recomputes that element by direct numerical
//! integration rather than from the closed form.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{BremError, Result};
use crate::kinematics::{PhysicalParams, ScatterKinematics};
use crate::quadrature::{self, kronrod15, Tol};
use crate::vec3::{self, Vec3};

/// Three complex components carrying the units of the housed quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVector3(pub [Complex64; 3]);

impl ComplexVector3 {
    pub fn new(components: [Complex64; 3]) -> Result<Self> {
        for c in &components {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(BremError::invalid("components", "must be finite"));
            }
        }
        Ok(Self(components))
    }

    pub fn zero() -> Self {
        Self([Complex64::new(0.0, 0.0); 3])
    }

    pub fn from_real(v: &Vec3) -> Self {
        Self([
            Complex64::new(v[0], 0.0),
            Complex64::new(v[1], 0.0),
            Complex64::new(v[2], 0.0),
        ])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq() == 0.0
    }
}

/// Sum over the two transverse polarizations, P_ij = delta_ij - khat_i khat_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationProjector {
    matrix: [[f64; 3]; 3],
}

impl PolarizationProjector {
    pub fn new(k_vec: &Vec3) -> Result<Self> {
        let khat = vec3::unit(k_vec)
            .ok_or_else(|| BremError::invalid("k_vec", "wavevector must be nonzero"))?;
        let mut matrix = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                matrix[i][j] = if i == j { 1.0 } else { 0.0 } - khat[i] * khat[j];
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.matrix
    }

    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.matrix[i][j]
    }

    pub fn trace(&self) -> f64 {
        self.matrix[0][0] + self.matrix[1][1] + self.matrix[2][2]
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.matrix;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn apply_complex(&self, v: &ComplexVector3) -> ComplexVector3 {
        let m = &self.matrix;
        let c = &v.0;
        ComplexVector3([
            c[0] * m[0][0] + c[1] * m[0][1] + c[2] * m[0][2],
            c[0] * m[1][0] + c[1] * m[1][1] + c[2] * m[1][2],
            c[0] * m[2][0] + c[1] * m[2][1] + c[2] * m[2][2],
        ])
    }

    /// P_ij v_i conj(v_j), the polarization-summed squared element. Real
    /// and nonnegative since P is an orthogonal projector.
    pub fn quadratic_form(&self, v: &ComplexVector3) -> f64 {
        self.apply_complex(v).norm_sq()
    }
}

/// Transverse projector for the wavevector `k_vec`.
pub fn polarization_projector(k_vec: &Vec3) -> Result<PolarizationProjector> {
    PolarizationProjector::new(k_vec)
}

/// Plane-wave matrix element of grad(1/|x|):
/// 4 pi i (p_out - p_in) / |p_out - p_in|^2.
pub fn born_gradient_element(p_in: &Vec3, p_out: &Vec3) -> Result<ComplexVector3> {
    let q = vec3::sub(p_out, p_in);
    let q_sq = vec3::norm_sq(&q);
    if q_sq == 0.0 {
        return Err(BremError::SingularMomentumTransfer);
    }
    let s = 4.0 * PI / q_sq;
    Ok(ComplexVector3([
        Complex64::new(0.0, s * q[0]),
        Complex64::new(0.0, s * q[1]),
        Complex64::new(0.0, s * q[2]),
    ]))
}

/// Closed form of the screened (Yukawa) gradient element,
/// 4 pi i q / (q^2 + mu^2) with q = p_out - p_in.
pub fn screened_gradient_element(p_in: &Vec3, p_out: &Vec3, mu: f64) -> Result<ComplexVector3> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(BremError::invalid("mu", "screening mass must be >= 0"));
    }
    let q = vec3::sub(p_out, p_in);
    let q_sq = vec3::norm_sq(&q);
    if q_sq == 0.0 {
        if mu > 0.0 {
            return Ok(ComplexVector3::zero());
        }
        return Err(BremError::SingularMomentumTransfer);
    }
    let s = 4.0 * PI / (q_sq + mu * mu);
    Ok(ComplexVector3([
        Complex64::new(0.0, s * q[0]),
        Complex64::new(0.0, s * q[1]),
        Complex64::new(0.0, s * q[2]),
    ]))
}

/// Squared Born element |4 pi / q|^2 * q^2 / q^4 = (4 pi)^2 / q^2, as a
/// plain function for final-state integrals.
pub fn born_element_sq(p_in: &Vec3, p_out: &Vec3) -> f64 {
    let q_sq = vec3::norm_sq(&vec3::sub(p_out, p_in));
    (4.0 * PI) * (4.0 * PI) / q_sq
}

/// Squared screened element (4 pi)^2 q^2 / (q^2 + mu^2)^2.
pub fn screened_element_sq(p_in: &Vec3, p_out: &Vec3, mu: f64) -> f64 {
    let q_sq = vec3::norm_sq(&vec3::sub(p_out, p_in));
    let d = q_sq + mu * mu;
    (4.0 * PI) * (4.0 * PI) * q_sq / (d * d)
}

fn spherical_j1(z: f64) -> f64 {
    if z.abs() < 0.5 {
        let z2 = z * z;
        z / 3.0
            * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0 * (1.0 - z2 / 54.0 * (1.0 - z2 / 88.0))))
    } else {
        (z.sin() / z - z.cos()) / z
    }
}

/// Radial reduction of the screened Fourier integral: the 3D integral of
/// exp(i q . x) grad(exp(-mu r)/r) collapses by spherical symmetry to
///
///   -4 pi i qhat * int_0^inf (1 + mu r) exp(-mu r) j1(q r) dr
///
/// with qhat along the Fourier phase vector. In the scaled variable
/// z = q r the radial factor is (1/q) * int (1 + beta z) exp(-beta z)
/// j1(z) dz with beta = mu / q; the closed form is 1 / (q (1 + beta^2)).
///
/// The integral is summed lobe by lobe over [k pi, (k+1) pi]. When the
/// exponential envelope decays too slowly to truncate (small beta), the
/// alternating partial sums are accelerated by iterated averaging.
fn screened_radial_integral(beta: f64, rel_tol: f64) -> (f64, f64, usize, bool) {
    const DECAY_CUT: f64 = 45.0;
    const MAX_LOBES: usize = 700;

    let integrand = |z: f64| (1.0 + beta * z) * (-beta * z).exp() * spherical_j1(z);

    // Entirely inside the first lobe: one adaptive call suffices.
    if beta > 0.0 && DECAY_CUT / beta < PI {
        let r = quadrature::integrate_1d(
            integrand,
            0.0,
            DECAY_CUT / beta,
            Tol::relative(rel_tol),
            quadrature::EndpointHint::None,
        );
        return (r.value, r.error_estimate, r.evaluations, r.converged);
    }

    let mut partial_sums = Vec::with_capacity(MAX_LOBES);
    let mut sum = 0.0;
    let mut panel_err = 0.0;
    let mut evaluations = 0usize;
    let mut decayed = false;

    for k in 0..MAX_LOBES {
        let a = k as f64 * PI;
        let b = (k + 1) as f64 * PI;
        let (v, e, _) = kronrod15(&integrand, a, b);
        evaluations += 15;
        sum += v;
        panel_err += e;
        partial_sums.push(sum);
        if beta * b > DECAY_CUT {
            decayed = true;
            break;
        }
    }

    if decayed {
        let converged = panel_err <= rel_tol * sum.abs().max(f64::MIN_POSITIVE);
        return (sum, panel_err, evaluations, converged);
    }

    // Iterated averaging of the alternating tail (Euler-style
    // acceleration). Each pass roughly gains one order in 1/k.
    let m = 32.min(partial_sums.len());
    let mut tail: Vec<f64> = partial_sums[partial_sums.len() - m..].to_vec();
    let mut last_change = f64::INFINITY;
    for _ in 0..16 {
        if tail.len() < 2 {
            break;
        }
        let averaged: Vec<f64> = tail.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        last_change = (averaged[averaged.len() - 1] - tail[tail.len() - 1]).abs();
        tail = averaged;
    }
    let value = tail[tail.len() - 1];
    let err = panel_err + last_change;
    let converged = err <= rel_tol * value.abs().max(f64::MIN_POSITIVE);
    (value, err, evaluations, converged)
}

/// Matrix element of grad(exp(-mu |x|)/|x|) between plane waves, computed
/// by direct numerical integration. `quad_tol` is a relative target on
/// the element magnitude.
pub fn screened_gradient_element_oracle(
    p_in: &Vec3,
    p_out: &Vec3,
    mu: f64,
    quad_tol: f64,
) -> Result<ComplexVector3> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(BremError::invalid("mu", "screening mass must be >= 0"));
    }
    if !(quad_tol > 0.0) {
        return Err(BremError::invalid("quad_tol", "tolerance must be positive"));
    }
    let q_vec = vec3::sub(p_out, p_in);
    let q = vec3::norm(&q_vec);
    if q == 0.0 {
        if mu > 0.0 {
            // Odd integrand over a spherically symmetric weight.
            return Ok(ComplexVector3::zero());
        }
        return Err(BremError::SingularMomentumTransfer);
    }

    let beta = mu / q;
    let (radial, err, _evals, converged) = screened_radial_integral(beta, quad_tol);
    if !converged {
        return Err(BremError::Accuracy {
            requested: quad_tol * radial.abs(),
            achieved: err,
        });
    }
    // Element = 4 pi i (q_vec / q) * radial / q.
    let s = 4.0 * PI * radial / (q * q);
    Ok(ComplexVector3([
        Complex64::new(0.0, s * q_vec[0]),
        Complex64::new(0.0, s * q_vec[1]),
        Complex64::new(0.0, s * q_vec[2]),
    ]))
}

/// Squared dipole acceleration element,
/// (prefactor Z e^2 / m)^2 (4 pi / m)^2 / |v' - v|^2.
pub fn acceleration_element_sq(params: &PhysicalParams, kin: &ScatterKinematics) -> Result<f64> {
    let dv = vec3::sub(&kin.v_out(), &kin.v_in());
    let dv_sq = vec3::norm_sq(&dv);
    if dv_sq == 0.0 {
        return Err(BremError::SingularMomentumTransfer);
    }
    let strength = params.coulomb_strength() / kin.mass;
    let four_pi_over_m = 4.0 * PI / kin.mass;
    Ok(strength * strength * four_pi_over_m * four_pi_over_m / dv_sq)
}

/// Position, velocity and acceleration elements derived from a momentum
/// element via p_hat = m xdot = i m omega x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleElements {
    pub position: ComplexVector3,
    pub velocity: ComplexVector3,
    pub acceleration: ComplexVector3,
}

/// Converts a momentum matrix element into the (x, xdot, xddot) chain.
/// Each time derivative multiplies by i omega, so |xddot| = omega |xdot|
/// = omega^2 |x| holds identically.
pub fn element_chain(p_hat: &ComplexVector3, omega: f64, mass: f64) -> Result<DipoleElements> {
    if !(mass > 0.0) {
        return Err(BremError::invalid("mass", "must be positive"));
    }
    if p_hat.is_zero() {
        return Ok(DipoleElements {
            position: ComplexVector3::zero(),
            velocity: ComplexVector3::zero(),
            acceleration: ComplexVector3::zero(),
        });
    }
    if omega == 0.0 {
        return Err(BremError::ElasticChannel);
    }
    let velocity = p_hat.scale(Complex64::new(1.0 / mass, 0.0));
    let position = p_hat.scale(Complex64::new(0.0, -1.0 / (mass * omega)));
    let acceleration = velocity.scale(Complex64::new(0.0, omega));
    Ok(DipoleElements {
        position,
        velocity,
        acceleration,
    })
}

/// Integral of the polarization projector over the unit sphere, computed
/// numerically component by component. Equals (8 pi / 3) delta_ij.
pub fn angular_projector_integral(quad_tol: f64) -> Result<[[f64; 3]; 3]> {
    if !(quad_tol > 0.0) {
        return Err(BremError::invalid("quad_tol", "tolerance must be positive"));
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let r = quadrature::integrate_sphere(
                |dir| {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    delta - dir[i] * dir[j]
                },
                Tol::absolute(quad_tol),
            );
            if !r.converged {
                return Err(BremError::Accuracy {
                    requested: quad_tol,
                    achieved: r.error_estimate,
                });
            }
            out[i][j] = r.value;
        }
    }
    Ok(out)
}
