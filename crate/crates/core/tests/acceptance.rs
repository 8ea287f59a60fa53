//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

use vortex_born::atomic::Transition;
use vortex_born::cylindrical::{f_central, f_cyl_series, f_elastic_screened, reciprocity_check, ReducedMEConfig, DEFAULT_TRUNCATION};
use vortex_born::kinematics::{outgoing_k, theta_zero, BeamSpec, ThetaGrid};
use vortex_born::planewave::{dcs_pw_2p_total, f_pw, f_pw_at, me_oracle, QVector};
use vortex_born::specfun::{integrate_periodic, neg_i_pow, QuadratureConfig};
use vortex_born::units::{mrad_to_rad, wavenumber_from_kev};
use vortex_born::vortex::{aperture_superpose, f_vortex_quad, profile, vortex_amplitude, AngularProfile, Aperture, VortexAmplitudeRequest};
use vortex_born::Result;

const ALL: [&str; 5] = ["1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"];
const ALPHAS_MRAD: [f64; 4] = [0.1, 1.0, 10.0, 21.2];
const KEV: f64 = 120.0;

fn tr(name: &str) -> Transition {
    Transition::parse(name, 1.0).unwrap()
}

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn k120() -> f64 {
    wavenumber_from_kev(KEV)
}

fn standard_grid() -> ThetaGrid {
    ThetaGrid::from_mrad(50.0, 200).unwrap()
}

fn beam(alpha_mrad: f64, ell: i32) -> BeamSpec {
    BeamSpec::from_kev_mrad(KEV, alpha_mrad, ell).unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

/// Closed forms vs azimuthal quadrature over the full profile grid.
fn representation_equality() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut below_floor = 0;
    let mut below_floor_abs: f64 = 0.0;
    let mut count = 0;
    for name in ["1s:1s", "1s:2s"] {
        for ell in [0, 1, -1, 2, -2, 3] {
            for a in ALPHAS_MRAD {
                let b = beam(a, ell);
                for theta in standard_grid().thetas() {
                    let req = VortexAmplitudeRequest::new(tr(name), b, theta, 0.0, quad())?;
                    let closed = vortex_amplitude(&req)?;
                    let numeric = f_vortex_quad(&req)?;
                    // exact zeros at theta = 0 leave eps-sized quadrature residue
                    worst = worst.max((numeric - closed).norm() / (closed.norm() + 1e-7));
                    let gap = (numeric - closed).norm();
                    if gap > 1e-8 * closed.norm() {
                        below_floor += 1;
                        below_floor_abs = below_floor_abs.max(gap);
                    }
                    count += 1;
                }
            }
        }
    }
    outcome(
        worst <= 1e-8,
        format!("{count} points, max gap / (|f| + 1e-7) {worst:.2e} (limit 1e-8), {below_floor} tiny-|f| points miss plain rel 1e-8 with abs gap <= {below_floor_abs:.1e}"),
    )
}

/// `ell = 0`, `k_perp = 1e-6` reproduces the plane-wave amplitudes.
fn plane_wave_limit() -> Result<Outcome> {
    let k = k120();
    let b = BeamSpec::from_k_kperp(k, 1e-6, 0)?;
    let grid = standard_grid();
    let mut worst: f64 = 0.0;
    let mut profiles = Vec::new();
    for name in ALL {
        let t = tr(name);
        let p = profile(&t, &b, &grid, &quad())?;
        for row in &p.rows {
            let pw = f_pw_at(&t, k, row.theta, 0.0)?;
            worst = worst.max((row.amplitude - pw).norm() / (pw.norm() + 1e-10));
        }
        profiles.push(p);
    }
    let (pz, pp, pm) = (&profiles[2], &profiles[3], &profiles[4]);
    let peak = pz.max_dcs();
    let zero_at_axis = pp.rows[0].dcs <= 1e-20 * peak && pm.rows[0].dcs <= 1e-20 * peak;
    let pz_peaks_on_axis = pz.peak().theta == 0.0;
    let mut sum_gap: f64 = 0.0;
    for j in 0..grid.points {
        let total = dcs_pw_2p_total(1.0, k, pz.rows[j].theta)?;
        let parts = pz.rows[j].dcs + pp.rows[j].dcs + pm.rows[j].dcs;
        sum_gap = sum_gap.max((parts - total).abs() / total);
    }
    outcome(
        worst <= 1e-5 && zero_at_axis && pz_peaks_on_axis && sum_gap <= 1e-5,
        format!(
            "max rel gap {worst:.2e} (limit 1e-5); 2p+- zero on axis: {zero_at_axis}; 2p_z peak on axis: {pz_peaks_on_axis}; total vs sum {sum_gap:.2e}"
        ),
    )
}

/// Closed plane-wave amplitudes vs the three-dimensional quadrature oracle.
fn oracle_equivalence() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut report = Vec::new();
    let mut passed = true;
    for name in ALL {
        let t = tr(name);
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let mag = (rng.gen_range(0.05f64.ln()..6.0f64.ln())).exp();
            let u: f64 = rng.gen_range(-1.0..1.0);
            let phi = rng.gen_range(-PI..PI);
            let q = QVector::new(mag * (1.0 - u * u).sqrt(), phi, mag * u)?;
            let elastic = if t.is_elastic() { t.z() } else { 0.0 };
            let oracle = -2.0 * (me_oracle(&t, &q)? - elastic) / q.magnitude_squared();
            let closed = f_pw(&t, &q)?;
            worst = worst.max((oracle - closed).norm() / closed.norm());
        }
        passed &= worst <= 1e-6;
        report.push(format!("{name} {worst:.1e}"));
    }
    outcome(passed, format!("200 transfers each, max rel gap: {} (limit 1e-6)", report.join(", ")))
}

/// Forward amplitude vanishes unless `ell = dm_atom`, where it matches the closed form.
fn central_selection_rule() -> Result<Outcome> {
    let mut worst_null: f64 = 0.0;
    let mut worst_match: f64 = 0.0;
    for name in ALL {
        let t = tr(name);
        for ell in -3..=3 {
            for a in [1.0, 10.0] {
                let b = beam(a, ell);
                let peak = profile(&t, &b, &standard_grid(), &quad())?.max_dcs().sqrt();
                let at_axis = f_vortex_quad(&VortexAmplitudeRequest::new(t, b, 0.0, 0.0, quad())?)?;
                if ell == t.dm_atom {
                    let closed = f_central(&t, &b)?;
                    worst_match = worst_match.max((at_axis.norm() - closed.norm()).abs() / closed.norm());
                } else {
                    worst_null = worst_null.max(at_axis.norm() / peak);
                }
            }
        }
    }
    outcome(
        worst_null < 1e-10 && worst_match <= 1e-8,
        format!("max |f(0)|/peak off-rule {worst_null:.1e} (limit 1e-10), max modulus gap on-rule {worst_match:.1e} (limit 1e-8)"),
    )
}

/// Plane-in/vortex-out equals vortex-in/plane-out on axis.
fn oam_reciprocity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = ReducedMEConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.gen_range(2.0..100.0);
        let kt = rng.gen_range(0.02..2.0);
        for name in ["1s:2s", "1s:2p+1", "1s:2p-1"] {
            worst = worst.max(reciprocity_check(&tr(name), k, kt, &cfg)?.rel_gap);
        }
    }
    outcome(worst <= 1e-6, format!("20 draws x 3 transitions, max rel gap {worst:.1e} (limit 1e-6)"))
}

/// Sign changes of the amplitude between neighbouring grid points.
fn sign_changes(p: &AngularProfile) -> Vec<f64> {
    p.rows
        .windows(2)
        .filter(|w| (w[0].amplitude * w[1].amplitude.conj()).re < 0.0)
        .map(|w| 0.5 * (w[0].theta + w[1].theta))
        .collect()
}

/// The 2p_z amplitude changes sign at `theta_0`, where `q_z = 0`.
fn node_location() -> Result<Outcome> {
    let t = tr("1s:2p0");
    let grid = standard_grid();
    let mut passed = true;
    let mut report = Vec::new();
    for kev in [120.0, 600.0] {
        let k = wavenumber_from_kev(kev);
        let kp = outgoing_k(k, t.delta_e)?;
        for a in [5.0, 10.0, 21.2] {
            let alpha = mrad_to_rad(a);
            let p = profile(&t, &BeamSpec::from_k_alpha(k, alpha, 0)?, &grid, &quad())?;
            let nodes = sign_changes(&p);
            match theta_zero(k, kp, alpha) {
                Ok(theta0) => {
                    let nearest = nodes.iter().copied().min_by(|x, y| (x - theta0).abs().total_cmp(&(y - theta0).abs()));
                    let ok = theta0 < alpha && nearest.is_some_and(|n| (n - theta0).abs() <= grid.step());
                    passed &= ok;
                    report.push(format!("{kev} keV/{a} mrad: theta0 {:.4} mrad, node {:.4} mrad", theta0 * 1e3, nearest.unwrap_or(f64::NAN) * 1e3));
                }
                Err(_) => {
                    // q_z stays negative: no node may appear
                    passed &= nodes.is_empty();
                    report.push(format!("{kev} keV/{a} mrad: q_z < 0 everywhere, {} sign changes", nodes.len()));
                }
            }
        }
    }
    outcome(passed, report.join("; "))
}

fn symmetry_suite() -> Result<Outcome> {
    let grid = standard_grid();
    // |f(ell)| = |f(-ell)| for spherically symmetric transitions
    let mut spherical: f64 = 0.0;
    for name in ["1s:1s", "1s:2s"] {
        for ell in 1..=3 {
            for a in ALPHAS_MRAD {
                let p = profile(&tr(name), &beam(a, ell), &grid, &quad())?;
                let m = profile(&tr(name), &beam(a, -ell), &grid, &quad())?;
                for (x, y) in p.rows.iter().zip(&m.rows) {
                    let (x, y) = (x.amplitude.norm(), y.amplitude.norm());
                    if x != y {
                        spherical = spherical.max((x - y).abs() / y);
                    }
                }
            }
        }
    }
    // ell -> -ell with 2p+ <-> 2p-
    let mut swapped: f64 = 0.0;
    for ell in 1..=3 {
        for a in ALPHAS_MRAD {
            let p = profile(&tr("1s:2p+1"), &beam(a, ell), &grid, &quad())?;
            let m = profile(&tr("1s:2p-1"), &beam(a, -ell), &grid, &quad())?;
            let peak = p.max_dcs();
            for (x, y) in p.rows.iter().zip(&m.rows) {
                swapped = swapped.max((x.dcs - y.dcs).abs() / (y.dcs + 1e-12 * peak));
            }
        }
    }
    // phase e^{i (ell - dm) phi'}
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut phase: f64 = 0.0;
    for name in ALL {
        let t = tr(name);
        for ell in -2..=3 {
            for _ in 0..5 {
                let b = beam(rng.gen_range(1.0..21.2), ell);
                let theta = mrad_to_rad(rng.gen_range(0.5..50.0));
                let phi = rng.gen_range(-PI..PI);
                let base = vortex_amplitude(&VortexAmplitudeRequest::new(t, b, theta, 0.0, quad())?)?;
                let turned = vortex_amplitude(&VortexAmplitudeRequest::new(t, b, theta, phi, quad())?)?;
                let expect = Complex64::from_polar(1.0, (ell - t.dm_atom) as f64 * phi);
                phase = phase.max((turned / (base * expect)).arg().abs());
            }
        }
    }
    outcome(
        spherical <= 1e-12 && swapped <= 1e-12 && phase <= 1e-10,
        format!("|f(l)| vs |f(-l)| {spherical:.1e} (limit 1e-12), 2p+/2p- swap {swapped:.1e} (limit 1e-12), phi' phase {phase:.1e} rad (limit 1e-10)"),
    )
}

/// Screened-Coulomb closed form vs periodic quadrature.
fn screened_elastic() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let ell = rng.gen_range(-4..=4);
        let kt: f64 = rng.gen_range(0.0..3.0);
        let ktp: f64 = rng.gen_range(0.0..3.0);
        let qz: f64 = rng.gen_range(-2.0..2.0);
        let mu: f64 = rng.gen_range(0.1..5.0);
        let phi: f64 = rng.gen_range(-PI..PI);
        let b = BeamSpec::new(kt, 10.0, ell)?;
        let closed = f_elastic_screened(&b, ktp, qz, phi, mu, 1.0)?;
        let integral = integrate_periodic(
            |d| {
                let q2 = kt * kt + ktp * ktp - 2.0 * kt * ktp * d.cos() + qz * qz;
                Complex64::from_polar(-2.0 / (q2 + mu * mu), ell as f64 * d)
            },
            &quad(),
        )?;
        let numeric = neg_i_pow(ell) * Complex64::from_polar(0.5 / PI, ell as f64 * phi) * integral;
        worst = worst.max((closed - numeric).norm() / closed.norm());
    }
    outcome(worst <= 1e-9, format!("50 draws, max rel gap {worst:.1e} (limit 1e-9)"))
}

/// Bessel-series representation vs azimuthal quadrature for 1s -> 2s.
fn cylindrical_series() -> Result<Outcome> {
    let t = tr("1s:2s");
    let cfg = ReducedMEConfig::default();
    let geometries = [
        (1.0, 0, 2.0),
        (1.0, 1, 5.0),
        (10.0, 0, 3.0),
        (10.0, 1, 12.0),
        (10.0, -2, 20.0),
        (21.2, 0, 10.0),
        (21.2, 2, 30.0),
        (21.2, -1, 45.0),
        (0.1, 3, 1.0),
        (10.0, 3, 8.0),
    ];
    let mut worst: f64 = 0.0;
    let mut tail: f64 = 0.0;
    for &(a, ell, theta_mrad) in &geometries {
        let b = beam(a, ell);
        let req = VortexAmplitudeRequest::new(t, b, mrad_to_rad(theta_mrad), 0.3, quad())?;
        let g = req.geometry()?;
        let s = f_cyl_series(&t, &b, g.k_perp_prime(), g.q_z, 0.3, DEFAULT_TRUNCATION, &cfg)?;
        let reference = f_vortex_quad(&req)?;
        worst = worst.max((s.value - reference).norm() / reference.norm());
        tail = tail.max(s.last_term / s.value.norm());
    }
    outcome(
        worst <= 1e-3,
        format!("10 geometries, M = {DEFAULT_TRUNCATION}, max rel gap {worst:.1e} (limit 1e-3), max |last term|/|sum| {tail:.1e}"),
    )
}

/// Peak angles and on-axis behaviour at the reference beam parameters.
fn profile_shape_properties() -> Result<Outcome> {
    let elastic = tr("1s:1s");
    let fine = ThetaGrid::from_mrad(60.0, 6001)?;
    let mut vortex_ok = true;
    let mut peaks = Vec::new();
    for ell in 1..=3 {
        let mut last = -1.0;
        let mut row = Vec::new();
        for a in ALPHAS_MRAD {
            let p = profile(&elastic, &beam(a, ell), &fine, &quad())?;
            let th = p.peak().theta;
            vortex_ok &= p.rows[0].dcs == 0.0 && th > last;
            last = th;
            row.push(format!("{:.2}", th * 1e3));
        }
        peaks.push(format!("l={ell}: [{}]", row.join(", ")));
    }

    let k = k120();
    let aperture = Aperture::new(
        BeamSpec::from_k_alpha(k, mrad_to_rad(10.0), 0)?.k_perp,
        BeamSpec::from_k_alpha(k, mrad_to_rad(21.2), 0)?.k_perp,
        16,
    )?;
    let ap = aperture_superpose(&elastic, &aperture, |_| 1.0, 0, k, &standard_grid(), &quad())?;
    let aperture_ok = ap.rows[0].dcs > 0.0;

    let grid = ThetaGrid::from_mrad(60.0, 2401)?;
    let mut p_ok = true;
    let mut p_report = Vec::new();
    for a in ALPHAS_MRAD {
        let alpha = mrad_to_rad(a);
        let plus = profile(&tr("1s:2p+1"), &beam(a, 1), &grid, &quad())?.peak().theta;
        let minus = profile(&tr("1s:2p-1"), &beam(a, 1), &grid, &quad())?.peak().theta;
        p_ok &= plus < alpha && minus > alpha;
        p_report.push(format!("{a}: {:.3}/{:.3}", plus * 1e3, minus * 1e3));
    }
    outcome(
        vortex_ok && aperture_ok && p_ok,
        format!(
            "elastic peak mrad vs alpha {}; annulus 10-21.2 mrad dcs(0) = {:.3e}; l=1 2p+/2p- peak mrad {}",
            peaks.join(" "),
            ap.rows[0].dcs,
            p_report.join(", ")
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("representation equality", representation_equality),
        ("plane-wave limit", plane_wave_limit),
        ("oracle equivalence", oracle_equivalence),
        ("central selection rule", central_selection_rule),
        ("OAM reciprocity", oam_reciprocity),
        ("2p_z node", node_location),
        ("symmetry suite", symmetry_suite),
        ("screened elastic cross-check", screened_elastic),
        ("cylindrical series cross-check", cylindrical_series),
        ("profile shape properties", profile_shape_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match check() {
            Ok(o) if o.passed => ("PASS", o.detail),
            Ok(o) => ("FAIL", o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} criterion {} {name} [{:.1} s]: {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
