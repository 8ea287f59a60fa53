//! Bessel-beam amplitudes through the Fourier route: a Bessel beam is a ring
//! of tilted plane waves, so its amplitude is the azimuthal average
//!
//! `f_V = ((-i)^ell / 2 pi) int dphi e^{i ell phi} f_pw(q(phi))`.
//!
//! Closed forms exist for 1s -> 1s and 1s -> 2s; the 1s -> 2p channels are
//! one-dimensional periodic integrals.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::atomic::{Channel, Transition};
use crate::cylindrical::f_elastic_screened;
use crate::error::{Error, Result};
use crate::kinematics::{outgoing_k, q_perp_complex, BeamSpec, ScatterGeometry, ThetaGrid};
use crate::planewave::{f_pw, QVector};
use crate::specfun::{bessel_j, integrate_periodic, neg_i_pow, GaussLegendre, QuadratureConfig};

/// Everything needed to evaluate one vortex amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VortexAmplitudeRequest {
    pub transition: Transition,
    pub beam: BeamSpec,
    pub theta: f64,
    pub phi_prime: f64,
    pub quad: QuadratureConfig,
}

impl VortexAmplitudeRequest {
    pub fn new(transition: Transition, beam: BeamSpec, theta: f64, phi_prime: f64, quad: QuadratureConfig) -> Result<Self> {
        outgoing_k(beam.k(), transition.delta_e)?;
        quad.validate()?;
        Ok(Self {
            transition,
            beam,
            theta,
            phi_prime,
            quad,
        })
    }

    pub fn k_prime(&self) -> Result<f64> {
        outgoing_k(self.beam.k(), self.transition.delta_e)
    }

    pub fn geometry(&self) -> Result<ScatterGeometry> {
        ScatterGeometry::new(&self.beam, self.k_prime()?, self.theta, self.phi_prime)
    }
}

/// 2p substate label, quantised along the beam axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PSubstate {
    Plus,
    Minus,
    Z,
}

impl PSubstate {
    pub fn from_m(m: i32) -> Result<Self> {
        match m {
            1 => Ok(Self::Plus),
            -1 => Ok(Self::Minus),
            0 => Ok(Self::Z),
            _ => Err(Error::InvalidOrbital(format!("2p has no m = {m}"))),
        }
    }

    pub fn m(self) -> i32 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
            Self::Z => 0,
        }
    }
}

/// Smallest `|q|` reached on the azimuthal circle.
fn q_min(beam: &BeamSpec, g: &ScatterGeometry) -> f64 {
    (beam.k_perp - g.k_perp_prime()).hypot(g.q_z)
}

fn singular_on_circle(tr: &Transition, q_min: f64, scale: f64) -> bool {
    let diverges = match tr.channel() {
        Ok(Channel::Elastic1s) => tr.z() != 1.0,
        Ok(Channel::Excite2p(_)) => true,
        _ => false,
    };
    diverges && q_min <= 1e-14 * scale
}

/// Azimuthal quadrature of the plane-wave amplitude.
pub fn f_vortex_quad(req: &VortexAmplitudeRequest) -> Result<Complex64> {
    let tr = &req.transition;
    tr.channel()?;
    let beam = &req.beam;
    let g = req.geometry()?;
    let kpp = g.k_perp_prime();
    let qmin = q_min(beam, &g);
    if singular_on_circle(tr, qmin, beam.k()) {
        return Err(Error::SingularIntegrand { q_min: qmin });
    }
    let ell = beam.ell as f64;
    let phase_prime = Complex64::from_polar(1.0, req.phi_prime);
    let failure = std::sync::Mutex::new(None);
    let integral = integrate_periodic(
        |d| {
            let qc = phase_prime * q_perp_complex(beam.k_perp, kpp, d);
            match f_pw(tr, &QVector::from_complex(qc, g.q_z)) {
                Ok(f) => f * Complex64::from_polar(1.0, ell * d),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        &req.quad,
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(neg_i_pow(beam.ell) * Complex64::from_polar(1.0 / (2.0 * PI), ell * req.phi_prime) * integral)
}

/// `(R1, R2, rho)` with `R^2 = a^2 + q_z^2 + (k_perp -+ k_perp')^2` and
/// `rho = (R2 - R1)/(R1 + R2)`, the difference formed without cancellation.
fn ring_radii(a2: f64, k_perp: f64, k_perp_prime: f64, q_z: f64) -> (f64, f64, f64) {
    let base = a2 + q_z * q_z;
    let r1 = (base + (k_perp - k_perp_prime).powi(2)).sqrt();
    let r2 = (base + (k_perp + k_perp_prime).powi(2)).sqrt();
    let s = r1 + r2;
    (r1, r2, 4.0 * k_perp * k_perp_prime / (s * s))
}

/// Closed-form 1s -> 1s amplitude. For `z != 1` the bare Coulomb term of the
/// uncancelled nuclear charge is added.
pub fn f_vortex_1s1s(beam: &BeamSpec, z: f64, k_prime: f64, theta: f64, phi_prime: f64) -> Result<Complex64> {
    let g = ScatterGeometry::new(beam, k_prime, theta, phi_prime)?;
    let kpp = g.k_perp_prime();
    let z2 = z * z;
    let (r1, r2, rho) = ring_radii(4.0 * z2, beam.k_perp, kpp, g.q_z);
    let l = beam.ell.unsigned_abs() as i32;
    let lf = l as f64;
    let (p1, p2) = (r1 * r1, r2 * r2);
    let num = p1 * p2 + 2.0 * z2 * (p1 + p2 + 2.0 * lf * r1 * r2);
    let den = (r1 * r2).powi(3);
    let mut f = neg_i_pow(beam.ell)
        * Complex64::from_polar(2.0 * rho.powi(l) * num / den, beam.ell as f64 * phi_prime);
    if z != 1.0 {
        f += f_elastic_screened(beam, kpp, g.q_z, phi_prime, 0.0, 1.0 - z)?;
    }
    Ok(f)
}

/// Closed-form 1s -> 2s amplitude.
pub fn f_vortex_1s2s(beam: &BeamSpec, z: f64, k_prime: f64, theta: f64, phi_prime: f64) -> Result<Complex64> {
    let g = ScatterGeometry::new(beam, k_prime, theta, phi_prime)?;
    let z2 = z * z;
    let (r1, r2, rho) = ring_radii(2.25 * z2, beam.k_perp, g.k_perp_prime(), g.q_z);
    let l = beam.ell.unsigned_abs() as i32;
    let lf = l as f64;
    let ell2 = (beam.ell as f64).powi(2);
    let (p1, p2) = (r1 * r1, r2 * r2);
    let num = 3.0 * (p1 * p1 + p2 * p2) + 6.0 * lf * r1 * r2 * (p1 + p2) + 2.0 * (1.0 + 2.0 * ell2) * p1 * p2;
    let den = (r1 * r2).powi(5);
    Ok(neg_i_pow(beam.ell)
        * Complex64::from_polar(-(2f64.sqrt()) * z2 * z2 * rho.powi(l) * num / den, beam.ell as f64 * phi_prime))
}

/// 1s -> 2p amplitude from its one-dimensional integral representation.
pub fn f_vortex_1s2p(
    beam: &BeamSpec,
    z: f64,
    k_prime: f64,
    theta: f64,
    phi_prime: f64,
    substate: PSubstate,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    let g = ScatterGeometry::new(beam, k_prime, theta, phi_prime)?;
    let kt = beam.k_perp;
    let kpp = g.k_perp_prime();
    let qz = g.q_z;
    let qmin = q_min(beam, &g);
    if qmin <= 1e-14 * beam.k() {
        return Err(Error::SingularIntegrand { q_min: qmin });
    }
    let ell = beam.ell as f64;
    let b = 2.25 * z * z;
    let base = kt * kt + kpp * kpp + qz * qz;
    let denom = |d: f64| {
        let q2 = base - 2.0 * kt * kpp * d.cos();
        let c = q2 + b;
        q2 * c * c * c
    };
    let z5 = z.powi(5);
    let lead = neg_i_pow(beam.ell) / PI * z5;
    match substate {
        PSubstate::Plus => {
            let integral = integrate_periodic(
                |d| Complex64::from_polar(1.0, ell * d) * (Complex64::from_polar(kt, -d) - kpp) / denom(d),
                quad,
            )?;
            Ok(Complex64::new(0.0, 6.0) * lead * Complex64::from_polar(1.0, (ell - 1.0) * phi_prime) * integral)
        }
        PSubstate::Minus => {
            let integral = integrate_periodic(
                |d| Complex64::from_polar(1.0, ell * d) * (Complex64::from_polar(kt, d) - kpp) / denom(d),
                quad,
            )?;
            Ok(Complex64::new(0.0, -6.0) * lead * Complex64::from_polar(1.0, (ell + 1.0) * phi_prime) * integral)
        }
        PSubstate::Z => {
            let integral = integrate_periodic(|d| Complex64::from_polar(1.0 / denom(d), ell * d), quad)?;
            Ok(Complex64::new(0.0, -6.0 * 2f64.sqrt())
                * lead
                * qz
                * Complex64::from_polar(1.0, ell * phi_prime)
                * integral)
        }
    }
}

/// Amplitude by the preferred route for the transition.
pub fn vortex_amplitude(req: &VortexAmplitudeRequest) -> Result<Complex64> {
    let tr = &req.transition;
    let kp = req.k_prime()?;
    let z = tr.z();
    match tr.channel()? {
        Channel::Elastic1s => f_vortex_1s1s(&req.beam, z, kp, req.theta, req.phi_prime),
        Channel::Excite2s => f_vortex_1s2s(&req.beam, z, kp, req.theta, req.phi_prime),
        Channel::Excite2p(m) => f_vortex_1s2p(&req.beam, z, kp, req.theta, req.phi_prime, PSubstate::from_m(m)?, &req.quad),
    }
}

/// One row of an angular profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub theta: f64,
    pub amplitude: Complex64,
    pub dcs: f64,
}

/// Incoming-beam description attached to a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BeamDescription {
    Bessel(BeamSpec),
    Aperture { k: f64, k_min: f64, k_max: f64, ell: i32, nodes: usize },
}

/// Sampled `(theta, f, |f|^2)` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularProfile {
    pub transition: String,
    pub beam: BeamDescription,
    pub grid: ThetaGrid,
    pub rows: Vec<ProfileRow>,
}

impl AngularProfile {
    fn from_amplitudes(transition: &Transition, beam: BeamDescription, grid: ThetaGrid, thetas: &[f64], amps: Vec<Complex64>) -> Self {
        let rows = thetas
            .iter()
            .zip(amps)
            .map(|(&theta, amplitude)| ProfileRow {
                theta,
                amplitude,
                dcs: amplitude.norm_sqr(),
            })
            .collect();
        Self {
            transition: transition.name(),
            beam,
            grid,
            rows,
        }
    }

    pub fn max_dcs(&self) -> f64 {
        self.rows.iter().map(|r| r.dcs).fold(0.0, f64::max)
    }

    /// Row with the largest cross section (first one on ties).
    pub fn peak(&self) -> &ProfileRow {
        self.rows
            .iter()
            .fold(&self.rows[0], |best, r| if r.dcs > best.dcs { r } else { best })
    }
}

/// Evaluates `f` on every grid angle in parallel, keeping grid order. The first
/// failure in grid order is returned, tagged with its angle.
fn map_thetas<F>(thetas: &[f64], f: F) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    thetas
        .par_iter()
        .map(|&theta| {
            f(theta).map_err(|e| Error::AtAngle {
                theta,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Angular profile of a single Bessel beam.
pub fn profile(tr: &Transition, beam: &BeamSpec, grid: &ThetaGrid, quad: &QuadratureConfig) -> Result<AngularProfile> {
    tr.channel()?;
    let thetas = grid.thetas();
    let amps = map_thetas(&thetas, |theta| {
        let req = VortexAmplitudeRequest::new(*tr, *beam, theta, 0.0, *quad)?;
        vortex_amplitude(&req)
    })?;
    Ok(AngularProfile::from_amplitudes(tr, BeamDescription::Bessel(*beam), *grid, &thetas, amps))
}

/// Transverse-momentum window `[k_min, k_max]` of an aperture, integrated with
/// `nodes` Gauss–Legendre points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aperture {
    pub k_min: f64,
    pub k_max: f64,
    pub nodes: usize,
}

impl Aperture {
    pub fn new(k_min: f64, k_max: f64, nodes: usize) -> Result<Self> {
        if !(k_min.is_finite() && k_max.is_finite() && 0.0 <= k_min && k_min < k_max) {
            return Err(Error::InvalidAperture(format!("need 0 <= k_min < k_max, got [{k_min}, {k_max}]")));
        }
        if nodes == 0 {
            return Err(Error::InvalidAperture("aperture needs at least one node".into()));
        }
        Ok(Self { k_min, k_max, nodes })
    }
}

/// Coherent superposition `f(theta) = int dk_perp A(k_perp) k_perp f_V(k_perp; theta)`
/// over the aperture, at fixed total wavenumber `k`.
pub fn aperture_superpose<A>(
    tr: &Transition,
    aperture: &Aperture,
    weight: A,
    ell: i32,
    k: f64,
    grid: &ThetaGrid,
    quad: &QuadratureConfig,
) -> Result<AngularProfile>
where
    A: Fn(f64) -> f64 + Sync,
{
    if aperture.k_max >= k {
        return Err(Error::InvalidAperture(format!(
            "k_max = {} must stay below the beam wavenumber {k}",
            aperture.k_max
        )));
    }
    tr.channel()?;
    let gl = GaussLegendre::new(aperture.nodes);
    let components: Vec<(BeamSpec, f64)> = gl
        .mapped(aperture.k_min, aperture.k_max)
        .map(|(kt, w)| Ok((BeamSpec::from_k_kperp(k, kt, ell)?, w * weight(kt) * kt)))
        .collect::<Result<_>>()?;
    let thetas = grid.thetas();
    let amps = map_thetas(&thetas, |theta| {
        let mut sum = Complex64::new(0.0, 0.0);
        for (beam, w) in &components {
            if *w == 0.0 {
                continue;
            }
            let req = VortexAmplitudeRequest::new(*tr, *beam, theta, 0.0, *quad)?;
            sum += *w * vortex_amplitude(&req)?;
        }
        Ok(sum)
    })?;
    let beam = BeamDescription::Aperture {
        k,
        k_min: aperture.k_min,
        k_max: aperture.k_max,
        ell,
        nodes: aperture.nodes,
    };
    Ok(AngularProfile::from_amplitudes(tr, beam, *grid, &thetas, amps))
}

/// Weights `J_{ell - mu}(k_perp r0)` of the centred Bessel modes `mu` that make
/// up a beam displaced by `r0` from the atom.
pub fn displaced_oam_weights(ell: i32, k_perp: f64, r0_perp: f64, mu_min: i32, mu_max: i32) -> Result<Vec<(i32, f64)>> {
    if !(r0_perp.is_finite() && r0_perp >= 0.0) {
        return Err(Error::InvalidParameter(format!("displacement must be >= 0, got {r0_perp}")));
    }
    if !(k_perp.is_finite() && k_perp >= 0.0) {
        return Err(Error::InvalidParameter(format!("k_perp must be >= 0, got {k_perp}")));
    }
    if mu_min > mu_max {
        return Err(Error::InvalidParameter(format!("empty mu range {mu_min}..={mu_max}")));
    }
    let x = k_perp * r0_perp;
    Ok((mu_min..=mu_max).map(|mu| (mu, bessel_j(ell - mu, x))).collect())
}
