//! Plane-wave Born amplitudes, the rotation of tilted final states onto the
//! beam axis, and a brute-force matrix-element oracle.

pub mod oracle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::atomic::{Channel, Transition};
use crate::error::{Error, Result};
use crate::kinematics::{outgoing_k, tilt_chi};
use crate::specfun::wigner_d_m0;

pub use oracle::{matrix_element, me_oracle, OracleConfig, TiltedOrbital};

/// Momentum transfer in cylindrical components about the beam axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QVector {
    pub q_perp: f64,
    pub phi_q: f64,
    pub q_z: f64,
}

impl QVector {
    pub fn new(q_perp: f64, phi_q: f64, q_z: f64) -> Result<Self> {
        if !(q_perp.is_finite() && q_perp >= 0.0 && phi_q.is_finite() && q_z.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "momentum transfer needs finite q_perp >= 0, got ({q_perp}, {phi_q}, {q_z})"
            )));
        }
        Ok(Self { q_perp, phi_q, q_z })
    }

    /// From `q_perp e^{i phi_q}` and `q_z`.
    pub fn from_complex(q_perp: Complex64, q_z: f64) -> Self {
        Self {
            q_perp: q_perp.norm(),
            phi_q: q_perp.arg(),
            q_z,
        }
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        Self {
            q_perp: x.hypot(y),
            phi_q: y.atan2(x),
            q_z: z,
        }
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let (s, c) = self.phi_q.sin_cos();
        [self.q_perp * c, self.q_perp * s, self.q_z]
    }

    pub fn magnitude(&self) -> f64 {
        self.q_perp.hypot(self.q_z)
    }

    pub fn magnitude_squared(&self) -> f64 {
        self.q_perp * self.q_perp + self.q_z * self.q_z
    }
}

/// Coefficients `e^{-i m phi_q} d^l_{m0}(chi)` of the state `|l, m'=0>`
/// quantised along the tilted axis `(chi, phi_q)`, expanded in beam-axis
/// substates `m = -l..=l`.
pub fn rotate_final_state(l: u32, chi: f64, phi_q: f64) -> Vec<(i32, Complex64)> {
    let li = l as i32;
    (-li..=li)
        .map(|m| (m, Complex64::from_polar(wigner_d_m0(l, m, chi), -(m as f64) * phi_q)))
        .collect()
}

/// `<2p, m'=0 | e^{i q.r} | 1s>` with the quantisation axis along `q`.
fn tilted_1s2p(z: f64, q: f64) -> Complex64 {
    let z2 = z * z;
    let b = q * q + 2.25 * z2;
    Complex64::new(0.0, 6.0 * 2f64.sqrt() * z2 * z2 * z * q / (b * b * b))
}

/// First Born amplitude `-2 <f| e^{i q.r} - Z delta_fi |i> / q^2` for the
/// closed-form channels.
pub fn f_pw(tr: &Transition, q: &QVector) -> Result<Complex64> {
    let z = tr.z();
    let z2 = z * z;
    let q2 = q.magnitude_squared();
    match tr.channel()? {
        Channel::Elastic1s => {
            let a = 4.0 * z2 + q2;
            let mut f = 2.0 * (8.0 * z2 + q2) / (a * a);
            if z != 1.0 {
                if q2 == 0.0 {
                    return Err(Error::ForwardDivergence { q: 0.0 });
                }
                f += 2.0 * (z - 1.0) / q2;
            }
            Ok(Complex64::new(f, 0.0))
        }
        Channel::Excite2s => {
            let b = q2 + 2.25 * z2;
            Ok(Complex64::new(-8.0 * 2f64.sqrt() * z2 * z2 / (b * b * b), 0.0))
        }
        Channel::Excite2p(m) => {
            if q2 == 0.0 {
                return Err(Error::ForwardDivergence { q: 0.0 });
            }
            let chi = tilt_chi(q.q_perp, q.q_z)?;
            let coeff = Complex64::from_polar(wigner_d_m0(1, m, chi), -(m as f64) * q.phi_q);
            Ok(-2.0 / q2 * coeff * tilted_1s2p(z, q2.sqrt()))
        }
    }
}

/// Momentum transfer of a plane wave `k z^` scattered into `(theta, phi')`.
pub fn plane_wave_q(k: f64, k_prime: f64, theta: f64, phi_prime: f64) -> QVector {
    let q_z = k - k_prime * theta.cos();
    let q_perp = k_prime * theta.sin();
    QVector {
        q_perp,
        phi_q: phi_prime + PI,
        q_z,
    }
}

/// Plane-wave amplitude in the direction `(theta, phi')`.
pub fn f_pw_at(tr: &Transition, k: f64, theta: f64, phi_prime: f64) -> Result<Complex64> {
    let kp = outgoing_k(k, tr.delta_e)?;
    f_pw(tr, &plane_wave_q(k, kp, theta, phi_prime))
}

/// `|f_pw|^2` at scattering angle `theta`.
pub fn dcs_pw(tr: &Transition, k: f64, theta: f64) -> Result<f64> {
    Ok(f_pw_at(tr, k, theta, 0.0)?.norm_sqr())
}

/// `|f|^2` summed over the three 1s -> 2p substates.
pub fn dcs_pw_2p_total(z: f64, k: f64, theta: f64) -> Result<f64> {
    let mut total = 0.0;
    for m in -1..=1 {
        let tr = Transition::parse(&format!("1s:2p{m:+}"), z)?;
        total += dcs_pw(&tr, k, theta)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tr(s: &str) -> Transition {
        Transition::parse(s, 1.0).unwrap()
    }

    #[test]
    fn tilt_coefficients() {
        let c = rotate_final_state(1, 0.0, 0.3);
        assert_eq!(c[1].1, Complex64::new(1.0, 0.0));
        assert!(c[0].1.norm() < 1e-16 && c[2].1.norm() < 1e-16);
        let c = rotate_final_state(1, PI / 2.0, 0.0);
        let h = 0.5f64.sqrt();
        assert_eq!(c[0].0, -1);
        assert!((c[0].1 - h).norm() < 1e-15);
        assert!(c[1].1.norm() < 1e-15);
        assert!((c[2].1 + h).norm() < 1e-15);
    }

    #[test]
    fn p_state_amplitudes() {
        let zero_perp = QVector::new(0.0, 0.0, 0.8).unwrap();
        assert_eq!(f_pw(&tr("1s:2p+1"), &zero_perp).unwrap().norm(), 0.0);
        assert!(f_pw(&tr("1s:2p-1"), &zero_perp).unwrap().norm() < 1e-16);
        let flat = QVector::new(0.8, 0.4, 0.0).unwrap();
        assert!(f_pw(&tr("1s:2p0"), &flat).unwrap().norm() < 1e-16);
        // q_perp = 1, q_z = 0, phi_q = 0: modulus 12 / 3.25^3
        let q = QVector::new(1.0, 0.0, 0.0).unwrap();
        let expect = 12.0 / 3.25f64.powi(3);
        let plus = f_pw(&tr("1s:2p+1"), &q).unwrap();
        let minus = f_pw(&tr("1s:2p-1"), &q).unwrap();
        assert!((plus - Complex64::new(0.0, expect)).norm() < 1e-15, "{plus}");
        assert!((minus - Complex64::new(0.0, -expect)).norm() < 1e-15, "{minus}");
        assert!((expect - 0.349_567_592_171_142_5).abs() < 1e-15);
    }

    #[test]
    fn elastic_limits() {
        let q0 = QVector::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(f_pw(&tr("1s:1s"), &q0).unwrap(), Complex64::new(1.0, 0.0));
        let he = Transition::parse("1s:1s", 2.0).unwrap();
        assert_eq!(f_pw(&he, &q0), Err(Error::ForwardDivergence { q: 0.0 }));
        assert!(matches!(f_pw(&tr("1s:3d0"), &q0), Err(Error::UnsupportedTransition(_))));
    }

    #[test]
    fn plane_wave_profile_shapes() {
        let k = crate::units::wavenumber_from_kev(120.0);
        assert!(dcs_pw(&tr("1s:2p+1"), k, 0.0).unwrap() < 1e-30);
        assert!(dcs_pw(&tr("1s:2p-1"), k, 0.0).unwrap() < 1e-30);
        let z0 = dcs_pw(&tr("1s:2p0"), k, 0.0).unwrap();
        assert!(z0 > dcs_pw(&tr("1s:2p0"), k, 1e-5).unwrap());
        for theta in [0.0, 1e-5, 3e-4, 2e-3] {
            let parts: f64 = ["1s:2p-1", "1s:2p0", "1s:2p+1"].iter().map(|s| dcs_pw(&tr(s), k, theta).unwrap()).sum();
            let total = dcs_pw_2p_total(1.0, k, theta).unwrap();
            assert!((parts - total).abs() <= 1e-14 * total);
        }
    }

    proptest! {
        #[test]
        fn unitary_rotation(l in 0u32..=8, chi in 0.0f64..PI, phi in -PI..PI) {
            let s: f64 = rotate_final_state(l, chi, phi).iter().map(|(_, c)| c.norm_sqr()).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn opposite_oam_phase(q_perp in 0.01f64..5.0, q_z in -3.0f64..3.0, phi in -PI..PI) {
            let base = QVector::new(q_perp, 0.0, q_z).unwrap();
            let turned = QVector::new(q_perp, phi, q_z).unwrap();
            for (name, m) in [("1s:2p+1", 1.0), ("1s:2p-1", -1.0)] {
                let a = f_pw(&tr(name), &base).unwrap();
                let b = f_pw(&tr(name), &turned).unwrap();
                let ratio = b / a;
                prop_assert!((ratio - Complex64::from_polar(1.0, -m * phi)).norm() < 1e-12);
            }
        }
    }
}
