//! Beam and collision kinematics in Hartree atomic units.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::units;

/// A Bessel beam `J_ell(k_perp r) e^{i ell phi} e^{i k_z z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSpec {
    pub k_perp: f64,
    pub k_z: f64,
    pub ell: i32,
}

impl BeamSpec {
    pub fn new(k_perp: f64, k_z: f64, ell: i32) -> Result<Self> {
        if !(k_perp.is_finite() && k_perp >= 0.0) {
            return Err(Error::InvalidParameter(format!("k_perp must be finite and >= 0, got {k_perp}")));
        }
        if !(k_z.is_finite() && k_z > 0.0) {
            return Err(Error::InvalidParameter(format!("k_z must be finite and > 0, got {k_z}")));
        }
        Ok(Self { k_perp, k_z, ell })
    }

    /// Beam with total wavenumber `k` and opening angle `alpha` (radians).
    pub fn from_k_alpha(k: f64, alpha: f64, ell: i32) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!("k must be finite and > 0, got {k}")));
        }
        if !(0.0..FRAC_PI_2).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("opening angle must lie in [0, pi/2), got {alpha}")));
        }
        Self::new(k * alpha.sin(), k * alpha.cos(), ell)
    }

    /// Beam with total wavenumber `k` and transverse wavenumber `k_perp < k`.
    pub fn from_k_kperp(k: f64, k_perp: f64, ell: i32) -> Result<Self> {
        if !(k.is_finite() && k > 0.0 && k_perp >= 0.0 && k_perp < k) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= k_perp < k, got k_perp = {k_perp}, k = {k}"
            )));
        }
        Self::new(k_perp, ((k - k_perp) * (k + k_perp)).sqrt(), ell)
    }

    pub fn from_kev_mrad(energy_kev: f64, alpha_mrad: f64, ell: i32) -> Result<Self> {
        if !(energy_kev.is_finite() && energy_kev > 0.0) {
            return Err(Error::InvalidParameter(format!("beam energy must be > 0 keV, got {energy_kev}")));
        }
        Self::from_k_alpha(units::wavenumber_from_kev(energy_kev), units::mrad_to_rad(alpha_mrad), ell)
    }

    pub fn with_ell(self, ell: i32) -> Self {
        Self { ell, ..self }
    }

    pub fn k(&self) -> f64 {
        self.k_perp.hypot(self.k_z)
    }

    pub fn alpha(&self) -> f64 {
        self.k_perp.atan2(self.k_z)
    }

    /// Kinetic energy in Hartree; independent of `ell`.
    pub fn energy(&self) -> f64 {
        0.5 * (self.k_perp * self.k_perp + self.k_z * self.k_z)
    }
}

/// Outgoing direction `(theta, phi')` together with the derived `k'` and `q_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterGeometry {
    pub theta: f64,
    pub phi_prime: f64,
    pub k_prime: f64,
    pub q_z: f64,
}

impl ScatterGeometry {
    pub fn new(beam: &BeamSpec, k_prime: f64, theta: f64, phi_prime: f64) -> Result<Self> {
        if !(k_prime.is_finite() && k_prime > 0.0) {
            return Err(Error::InvalidParameter(format!("k' must be > 0, got {k_prime}")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0, pi], got {theta}")));
        }
        if !phi_prime.is_finite() {
            return Err(Error::InvalidParameter("phi' must be finite".into()));
        }
        Ok(Self {
            theta,
            phi_prime,
            k_prime,
            q_z: beam.k_z - k_prime * theta.cos(),
        })
    }

    pub fn k_perp_prime(&self) -> f64 {
        self.k_prime * self.theta.sin()
    }
}

/// Uniform grid `theta_j = j * theta_max / (points - 1)`, `j = 0..points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaGrid {
    pub theta_max: f64,
    pub points: usize,
}

impl ThetaGrid {
    pub fn new(theta_max: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter(format!("a theta grid needs at least 2 points, got {points}")));
        }
        if !(theta_max > 0.0 && theta_max <= std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!("theta_max must lie in (0, pi], got {theta_max}")));
        }
        Ok(Self { theta_max, points })
    }

    pub fn from_mrad(theta_max_mrad: f64, points: usize) -> Result<Self> {
        Self::new(units::mrad_to_rad(theta_max_mrad), points)
    }

    pub fn step(&self) -> f64 {
        self.theta_max / (self.points - 1) as f64
    }

    pub fn thetas(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|j| self.theta_max * j as f64 / last)
            .collect()
    }
}

/// `k' = sqrt(k^2 - 2 dE)`.
pub fn outgoing_k(k: f64, delta_e: f64) -> Result<f64> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidParameter(format!("k must be > 0, got {k}")));
    }
    if delta_e == 0.0 {
        return Ok(k);
    }
    let k2 = k * k;
    let two_de = 2.0 * delta_e;
    if k2 <= two_de {
        return Err(Error::KinematicallyClosed {
            k_squared: k2,
            two_delta_e: two_de,
        });
    }
    Ok((k2 - two_de).sqrt())
}

/// `|k - k'|` for a plane wave scattered through `theta`.
pub fn q_total(k: f64, k_prime: f64, theta: f64) -> f64 {
    // (k - k')^2 + 4 k k' sin^2(theta/2) avoids cancellation at small angles
    let s = (0.5 * theta).sin();
    let d = k - k_prime;
    (d * d + 4.0 * k * k_prime * s * s).sqrt()
}

/// Polar angle of `q` measured from the beam axis, in `[0, pi]`.
pub fn tilt_chi(q_perp: f64, q_z: f64) -> Result<f64> {
    if q_perp == 0.0 && q_z == 0.0 {
        return Err(Error::UndefinedOrientation);
    }
    Ok(q_perp.abs().atan2(q_z))
}

/// `q_perp e^{i(phi_q - phi')} = k_perp e^{i dphi} - k_perp'` with `dphi = phi - phi'`.
pub fn q_perp_complex(k_perp: f64, k_perp_prime: f64, dphi: f64) -> Complex64 {
    Complex64::from_polar(k_perp, dphi) - k_perp_prime
}

/// Angle at which `q_z = k cos(alpha) - k' cos(theta)` vanishes.
pub fn theta_zero(k: f64, k_prime: f64, alpha: f64) -> Result<f64> {
    let c = k / k_prime * alpha.cos();
    if c > 1.0 {
        return Err(Error::NoZero { cos_theta0: c });
    }
    // 1 - cos(theta0) written without cancellation, then theta0 = 2 asin(sqrt((1 - c)/2))
    let h = (0.5 * alpha).sin();
    let one_minus_c = ((k_prime - k) + 2.0 * k * h * h) / k_prime;
    if one_minus_c < 0.0 {
        return Err(Error::NoZero { cos_theta0: c });
    }
    Ok(2.0 * (0.5 * one_minus_c).sqrt().min(1.0).asin())
}
