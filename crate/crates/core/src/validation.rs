//! Reduced-size consistency checks between the independent representations,
//! run by the `validate` subcommand.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::atomic::Transition;
use crate::cylindrical::{f_central, f_cyl_series, f_elastic_screened, reciprocity_check, ReducedMEConfig};
use crate::error::Result;
use crate::kinematics::{outgoing_k, theta_zero, BeamSpec, ThetaGrid};
use crate::planewave::{f_pw, f_pw_at, me_oracle, QVector};
use crate::specfun::{integrate_periodic, neg_i_pow, QuadratureConfig};
use crate::units::wavenumber_from_kev;
use crate::vortex::{f_vortex_quad, profile, vortex_amplitude, VortexAmplitudeRequest};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self { name, passed, detail },
            Err(e) => Self {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

const ALL: [&str; 5] = ["1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"];

fn tr(name: &str) -> Result<Transition> {
    Transition::parse(name, 1.0)
}

/// Largest `|a - b| / (|b| + floor)` over the pairs.
fn worst_gap(pairs: &[(Complex64, Complex64)], floor: f64) -> f64 {
    pairs
        .iter()
        .map(|(a, b)| (a - b).norm() / (b.norm() + floor))
        .fold(0.0, f64::max)
}

/// Runs every check; `quad` drives all azimuthal quadratures.
pub fn run_suite(quad: &QuadratureConfig) -> Vec<CheckOutcome> {
    let checks: [(&'static str, fn(&QuadratureConfig) -> Result<(bool, String)>); 9] = [
        ("closed forms vs azimuthal quadrature", closed_vs_quadrature),
        ("plane-wave limit", plane_wave_limit),
        ("plane-wave amplitudes vs 3D oracle", oracle_equivalence),
        ("central selection rule", selection_rule),
        ("OAM reciprocity", reciprocity),
        ("2p_z node at q_z = 0", node_position),
        ("OAM and substate symmetry", symmetry),
        ("screened elastic vs quadrature", screened_elastic),
        ("cylindrical series vs quadrature", series),
    ];
    checks
        .iter()
        .map(|(name, f)| CheckOutcome::from_result(name, f(quad)))
        .collect()
}

fn closed_vs_quadrature(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let k = wavenumber_from_kev(120.0);
    let mut worst: f64 = 0.0;
    for name in ["1s:1s", "1s:2s"] {
        let t = tr(name)?;
        for ell in [0, 1, -2, 3] {
            for alpha in [1e-3, 1e-2] {
                let beam = BeamSpec::from_k_alpha(k, alpha, ell)?;
                let mut pairs = Vec::new();
                for theta in ThetaGrid::from_mrad(50.0, 21)?.thetas() {
                    let req = VortexAmplitudeRequest::new(t, beam, theta, 0.0, *quad)?;
                    pairs.push((f_vortex_quad(&req)?, vortex_amplitude(&req)?));
                }
                // exact zeros at theta = 0 leave eps-sized quadrature residue
                worst = worst.max(worst_gap(&pairs, 1e-7));
            }
        }
    }
    Ok((worst <= 1e-8, format!("max rel gap {worst:e}")))
}

fn plane_wave_limit(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let k = wavenumber_from_kev(120.0);
    let beam = BeamSpec::from_k_kperp(k, 1e-6, 0)?;
    let mut worst: f64 = 0.0;
    for name in ALL {
        let t = tr(name)?;
        let mut pairs = Vec::new();
        for theta in ThetaGrid::from_mrad(20.0, 11)?.thetas() {
            let req = VortexAmplitudeRequest::new(t, beam, theta, 0.0, *quad)?;
            let v = vortex_amplitude(&req)?;
            let p = f_pw_at(&t, k, theta, 0.0)?;
            pairs.push((Complex64::new(v.norm(), 0.0), Complex64::new(p.norm(), 0.0)));
        }
        let peak = pairs.iter().map(|p| p.1.norm()).fold(0.0, f64::max);
        worst = worst.max(worst_gap(&pairs, 1e-3 * peak));
    }
    Ok((worst <= 1e-5, format!("max rel gap in |f| {worst:e}")))
}

fn oracle_equivalence(_: &QuadratureConfig) -> Result<(bool, String)> {
    let qs = [(0.2, 0.4, -0.3), (1.1, -2.0, 0.7), (0.0, 0.0, 2.5), (3.0, 1.0, 0.0)];
    let mut worst: f64 = 0.0;
    for name in ALL {
        let t = tr(name)?;
        for &(qp, ph, qz) in &qs {
            let q = QVector::new(qp, ph, qz)?;
            let elastic = if t.is_elastic() { t.z() } else { 0.0 };
            let oracle = -2.0 * (me_oracle(&t, &q)? - elastic) / q.magnitude_squared();
            let closed = f_pw(&t, &q)?;
            worst = worst.max((oracle - closed).norm() / (closed.norm() + 1e-9));
        }
    }
    Ok((worst <= 1e-6, format!("max rel gap {worst:e}")))
}

fn selection_rule(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let k = wavenumber_from_kev(120.0);
    let mut ok = true;
    let mut worst_null: f64 = 0.0;
    let mut worst_match: f64 = 0.0;
    for name in ALL {
        let t = tr(name)?;
        for ell in -2..=2 {
            let beam = BeamSpec::from_k_alpha(k, 5e-3, ell)?;
            let peak = profile(&t, &beam, &ThetaGrid::from_mrad(20.0, 41)?, quad)?.max_dcs().sqrt();
            let req = VortexAmplitudeRequest::new(t, beam, 0.0, 0.0, *quad)?;
            let at_zero = vortex_amplitude(&req)?.norm();
            if ell == t.dm_atom {
                let closed = f_central(&t, &beam)?.norm();
                let gap = (at_zero - closed).abs() / closed;
                worst_match = worst_match.max(gap);
                ok &= gap <= 1e-8;
            } else {
                let ratio = at_zero / peak;
                worst_null = worst_null.max(ratio);
                ok &= ratio < 1e-10;
            }
        }
    }
    Ok((ok, format!("max null/peak {worst_null:e}, max central gap {worst_match:e}")))
}

fn reciprocity(_: &QuadratureConfig) -> Result<(bool, String)> {
    let cfg = ReducedMEConfig::default();
    let mut worst: f64 = 0.0;
    for name in ["1s:2s", "1s:2p+1", "1s:2p-1"] {
        for &(k, kt) in &[(60.0, 0.3), (93.9, 0.8)] {
            worst = worst.max(reciprocity_check(&tr(name)?, k, kt, &cfg)?.rel_gap);
        }
    }
    Ok((worst <= 1e-6, format!("max rel gap {worst:e}")))
}

fn node_position(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let k = wavenumber_from_kev(120.0);
    let t = tr("1s:2p0")?;
    let alpha = 21.2e-3;
    let beam = BeamSpec::from_k_alpha(k, alpha, 0)?;
    let grid = ThetaGrid::from_mrad(40.0, 401)?;
    let p = profile(&t, &beam, &grid, quad)?;
    let theta0 = theta_zero(k, outgoing_k(k, t.delta_e)?, alpha)?;
    let node = p
        .rows
        .windows(2)
        .find(|w| (w[0].amplitude * w[1].amplitude.conj()).re <= 0.0)
        .map(|w| 0.5 * (w[0].theta + w[1].theta));
    Ok(match node {
        Some(th) => (
            (th - theta0).abs() <= grid.step() && theta0 < alpha,
            format!("node at {th:e} rad, q_z = 0 at {theta0:e} rad"),
        ),
        None => (false, "no sign change found".into()),
    })
}

fn symmetry(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let k = wavenumber_from_kev(120.0);
    let grid = ThetaGrid::from_mrad(30.0, 16)?;
    let mut worst: f64 = 0.0;
    for ell in 1..=3 {
        let b = BeamSpec::from_k_alpha(k, 1e-2, ell)?;
        for name in ["1s:1s", "1s:2s"] {
            let t = tr(name)?;
            let a = profile(&t, &b, &grid, quad)?;
            let c = profile(&t, &b.with_ell(-ell), &grid, quad)?;
            for (x, y) in a.rows.iter().zip(&c.rows) {
                worst = worst.max((x.dcs - y.dcs).abs() / y.dcs.max(1e-300));
            }
        }
        let a = profile(&tr("1s:2p+1")?, &b, &grid, quad)?;
        let c = profile(&tr("1s:2p-1")?, &b.with_ell(-ell), &grid, quad)?;
        let peak = a.max_dcs();
        for (x, y) in a.rows.iter().zip(&c.rows) {
            worst = worst.max((x.dcs - y.dcs).abs() / (y.dcs + 1e-12 * peak));
        }
    }
    // phase e^{i (ell - dm) phi'}
    let mut phase_gap: f64 = 0.0;
    for name in ALL {
        let t = tr(name)?;
        let b = BeamSpec::from_k_alpha(k, 1e-2, 2)?;
        let base = vortex_amplitude(&VortexAmplitudeRequest::new(t, b, 4e-3, 0.0, *quad)?)?;
        let phi = 0.9;
        let turned = vortex_amplitude(&VortexAmplitudeRequest::new(t, b, 4e-3, phi, *quad)?)?;
        let expect = Complex64::from_polar(1.0, (b.ell - t.dm_atom) as f64 * phi);
        phase_gap = phase_gap.max((turned / base / expect).arg().abs());
    }
    Ok((
        worst <= 1e-10 && phase_gap <= 1e-10,
        format!("max rel dcs gap {worst:e}, max phase gap {phase_gap:e}"),
    ))
}

fn screened_elastic(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for ell in -4..=4 {
        for &(kt, ktp, qz, mu) in &[(0.5, 1.2, 0.3, 0.1), (2.0, 0.4, -1.0, 2.5), (1.0, 1.0, 0.0, 5.0)] {
            let beam = BeamSpec::new(kt, 5.0, ell)?;
            let closed = f_elastic_screened(&beam, ktp, qz, 0.3, mu, 1.0)?;
            let integral = integrate_periodic(
                |d| {
                    let q2 = kt * kt + ktp * ktp - 2.0 * kt * ktp * d.cos() + qz * qz;
                    Complex64::from_polar(-2.0 / (q2 + mu * mu), ell as f64 * d)
                },
                quad,
            )?;
            let numeric = neg_i_pow(ell) * Complex64::from_polar(0.5 / PI, ell as f64 * 0.3) * integral;
            worst = worst.max((closed - numeric).norm() / closed.norm());
        }
    }
    Ok((worst <= 1e-9, format!("max rel gap {worst:e}")))
}

fn series(quad: &QuadratureConfig) -> Result<(bool, String)> {
    let t = tr("1s:2s")?;
    let cfg = ReducedMEConfig::default();
    let mut worst: f64 = 0.0;
    let mut worst_tail: f64 = 0.0;
    for &(kt, theta_rad, ell) in &[(0.6, 0.02, 0), (0.9, 0.005, 1)] {
        let k = 40.0;
        let beam = BeamSpec::from_k_kperp(k, kt, ell)?;
        let req = VortexAmplitudeRequest::new(t, beam, theta_rad, 0.0, *quad)?;
        let g = req.geometry()?;
        let s = f_cyl_series(&t, &beam, g.k_perp_prime(), g.q_z, 0.0, 20, &cfg)?;
        let reference = f_vortex_quad(&req)?;
        worst = worst.max((s.value - reference).norm() / reference.norm());
        worst_tail = worst_tail.max(s.last_term / s.value.norm());
    }
    Ok((worst <= 1e-3, format!("max rel gap {worst:e}, max tail ratio {worst_tail:e}")))
}
