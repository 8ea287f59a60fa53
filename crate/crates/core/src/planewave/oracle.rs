//! Brute-force `<f| e^{i q.r} |i>` by direct quadrature in three dimensions.
//!
//! The polar axis of the grid is laid along `q`, so that the phase depends on
//! one angle only: `e^{i q r u}`. For every polar node `u` the radial integral
//! `G(q u) = int r^2 R_f R_i e^{i q u r} dr` is done on a composite
//! Gauss–Legendre grid, while the azimuth around `q` uses the trapezoidal rule
//! (exact here because the angular factors are trigonometric polynomials).
//! The orbitals themselves are always evaluated in the beam frame.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::QVector;
use crate::atomic::{spherical_harmonic, AtomicOrbital, BoundState, Transition};
use crate::error::{Error, Result};
use crate::specfun::{composite_nodes, GaussLegendre};

/// Stopping rule for the polar doubling of [`matrix_element`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub initial_polar: usize,
    pub max_polar: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            initial_polar: 32,
            max_polar: 4096,
            rel_tol: 1e-12,
            abs_floor: 1e-15,
        }
    }
}

/// Orbital `|n l m'>` quantised along the axis with polar angle `chi` and
/// azimuth `phi` (beam frame).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltedOrbital {
    pub orbital: AtomicOrbital,
    pub chi: f64,
    pub phi: f64,
}

impl TiltedOrbital {
    /// Quantisation axis along `q`.
    pub fn along(orbital: AtomicOrbital, q: &QVector) -> Self {
        Self {
            orbital,
            chi: q.q_perp.atan2(q.q_z),
            phi: q.phi_q,
        }
    }
}

impl BoundState for TiltedOrbital {
    fn radial(&self, r: f64) -> f64 {
        self.orbital.radial(r)
    }

    fn angular(&self, theta: f64, phi: f64) -> Complex64 {
        // rotate the direction back by R^{-1} = Ry(-chi) Rz(-phi)
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = (phi - self.phi).sin_cos();
        let (x, y, z) = (st * cp, st * sp, ct);
        let (sc, cc) = self.chi.sin_cos();
        let xr = cc * x - sc * z;
        let zr = sc * x + cc * z;
        let t = xr.hypot(y).atan2(zr);
        let p = y.atan2(xr);
        spherical_harmonic(self.orbital.l, self.orbital.m, t, p)
    }

    fn decay_rate(&self) -> f64 {
        self.orbital.decay_rate()
    }

    fn radial_degree(&self) -> u32 {
        self.orbital.radial_degree()
    }

    fn l(&self) -> u32 {
        self.orbital.l
    }
}

/// `<fin| e^{i q.r} |init>` by direct quadrature.
pub fn matrix_element<F, I>(fin: &F, init: &I, q: &QVector, cfg: &OracleConfig) -> Result<Complex64>
where
    F: BoundState + ?Sized,
    I: BoundState + ?Sized,
{
    let qmag = q.magnitude();
    let frame = aligned_frame(q);

    let decay = fin.decay_rate() + init.decay_rate();
    let degree = (fin.radial_degree() + init.radial_degree() + 2) as f64;
    let r_max = (45.0 + 4.0 * degree) / decay;
    let width = if qmag > 0.0 { (6.0 / qmag).min(0.5) } else { 0.5 };
    let radial: Vec<(f64, f64)> = composite_nodes(r_max, width, &GaussLegendre::new(16))
        .into_iter()
        .map(|(r, w)| (r, w * r * r * fin.radial(r) * init.radial(r)))
        .collect();

    let n_psi = (4 + 2 * (fin.l() + init.l()) as usize).max(8);

    let mut n_u = cfg.initial_polar;
    let mut previous = polar_sum(fin, init, qmag, &frame, &radial, n_u, n_psi);
    loop {
        n_u *= 2;
        if n_u > cfg.max_polar {
            return Err(Error::NotConverged {
                what: "matrix-element oracle",
                nodes: n_u / 2,
                estimate: previous,
                gap: f64::NAN,
            });
        }
        let current = polar_sum(fin, init, qmag, &frame, &radial, n_u, n_psi);
        let gap = (current - previous).norm();
        if gap <= cfg.rel_tol * current.norm() + cfg.abs_floor {
            return Ok(current);
        }
        previous = current;
    }
}

/// `<f| e^{i q.r} |i>` for a transition with default settings.
pub fn me_oracle(tr: &Transition, q: &QVector) -> Result<Complex64> {
    matrix_element(&tr.final_, &tr.initial, q, &OracleConfig::default())
}

type Frame = [[f64; 3]; 3];

/// Orthonormal `(e1, e2, e3)` with `e3` along `q` (or the beam axis at `q = 0`).
fn aligned_frame(q: &QVector) -> Frame {
    let chi = q.q_perp.atan2(q.q_z);
    let (sc, cc) = chi.sin_cos();
    let (sp, cp) = q.phi_q.sin_cos();
    [
        [cc * cp, cc * sp, -sc],
        [-sp, cp, 0.0],
        [sc * cp, sc * sp, cc],
    ]
}

fn polar_sum<F, I>(fin: &F, init: &I, q: f64, frame: &Frame, radial: &[(f64, f64)], n_u: usize, n_psi: usize) -> Complex64
where
    F: BoundState + ?Sized,
    I: BoundState + ?Sized,
{
    let gl = GaussLegendre::new(n_u);
    let w_psi = 2.0 * PI / n_psi as f64;
    let [e1, e2, e3] = *frame;
    let mut total = Complex64::new(0.0, 0.0);
    for (u, wu) in gl.mapped(-1.0, 1.0) {
        let s = (1.0 - u * u).max(0.0).sqrt();
        let mut angular = Complex64::new(0.0, 0.0);
        for j in 0..n_psi {
            let (sp, cp) = (j as f64 * w_psi).sin_cos();
            let d: [f64; 3] = std::array::from_fn(|a| s * cp * e1[a] + s * sp * e2[a] + u * e3[a]);
            let theta = d[0].hypot(d[1]).atan2(d[2]);
            let phi = d[1].atan2(d[0]);
            angular += fin.angular(theta, phi).conj() * init.angular(theta, phi);
        }
        let su = q * u;
        let g: Complex64 = radial
            .iter()
            .map(|&(r, w)| {
                let (si, co) = (su * r).sin_cos();
                Complex64::new(w * co, w * si)
            })
            .sum();
        total += wu * w_psi * angular * g;
    }
    total
}
