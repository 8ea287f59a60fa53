//! The displaced-Bessel (cylindrical) representation: the vortex amplitude as
//! a series over Bessel orders `mu`, each term a screened-Coulomb vortex factor
//! times a reduced matrix element
//!
//! `M(mu) = int int beta alpha J_mu(k_perp r_perp) J_{mu - dm}(k_perp' r_perp) e^{i q_z z} r_perp dr_perp dz`,
//!
//! plus the closed-form central amplitudes and the OAM reciprocity check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atomic::{theta_part, AtomicOrbital, Channel, Transition};
use crate::error::{Error, Result};
use crate::kinematics::{outgoing_k, BeamSpec};
use crate::specfun::{bessel_j_upto, composite_nodes, neg_i_pow, signed_order, GaussLegendre};

/// Screened-Coulomb vortex amplitude for the potential `V0 e^{-mu r}/r`:
///
/// `f = -2 V0 (-i)^ell e^{i ell phi'} rho^|ell| / (r1 r2)`, `rho = (r2 - r1)/(r1 + r2)`,
/// `r1,2^2 = q_z^2 + mu^2 + (k_perp -+ k_perp')^2`.
pub fn f_elastic_screened(
    beam: &BeamSpec,
    k_perp_prime: f64,
    q_z: f64,
    phi_prime: f64,
    screening_mu: f64,
    v0: f64,
) -> Result<Complex64> {
    if !(screening_mu.is_finite() && screening_mu >= 0.0) {
        return Err(Error::InvalidParameter(format!("screening must be >= 0, got {screening_mu}")));
    }
    let kt = beam.k_perp;
    let base = q_z * q_z + screening_mu * screening_mu;
    let r1 = (base + (kt - k_perp_prime).powi(2)).sqrt();
    if r1 == 0.0 {
        return Err(Error::SingularKinematics {
            k_perp: kt,
            k_perp_prime,
            q_z,
        });
    }
    let r2 = (base + (kt + k_perp_prime).powi(2)).sqrt();
    let s = r1 + r2;
    let rho = 4.0 * kt * k_perp_prime / (s * s);
    let l = beam.ell.unsigned_abs() as i32;
    let modulus = -2.0 * v0 * rho.powi(l) / (r1 * r2);
    Ok(neg_i_pow(beam.ell) * Complex64::from_polar(modulus, beam.ell as f64 * phi_prime))
}

/// Settings of the two-dimensional reduced-matrix-element quadrature.
///
/// The half plane `(r_perp >= 0, z)` is covered in polar form `(r, u = cos theta)`
/// with `r_perp dr_perp dz = r^2 dr du`: composite 16-point Gauss–Legendre
/// panels in `r`, plain Gauss–Legendre in `u`. Each refinement level halves the
/// panel width and doubles the polar order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedMEConfig {
    pub initial_polar: usize,
    pub max_panel_width: f64,
    pub max_levels: u32,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for ReducedMEConfig {
    fn default() -> Self {
        Self {
            initial_polar: 32,
            max_panel_width: 0.5,
            max_levels: 4,
            rel_tol: 1e-10,
            abs_floor: 1e-15,
        }
    }
}

/// Reduced matrix element for one Bessel order `mu`; the second Bessel order is
/// `mu - dm_atom`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedMEKey {
    pub initial: AtomicOrbital,
    #[serde(rename = "final")]
    pub final_: AtomicOrbital,
    pub mu: i32,
    pub k_perp: f64,
    pub k_perp_prime: f64,
    pub q_z: f64,
}

impl ReducedMEKey {
    pub fn dm_atom(&self) -> i32 {
        self.final_.m - self.initial.m
    }
}

pub fn reduced_me(key: &ReducedMEKey, cfg: &ReducedMEConfig) -> Result<Complex64> {
    let orders = [(key.mu, key.mu - key.dm_atom())];
    let v = reduced_me_orders(&key.initial, &key.final_, &orders, key.k_perp, key.k_perp_prime, key.q_z, cfg)?;
    Ok(v[0])
}

/// `M(mu)` for every `mu` in `-m_max..=m_max`, indexed by `mu + m_max`.
pub fn reduced_me_table(
    initial: &AtomicOrbital,
    final_: &AtomicOrbital,
    m_max: u32,
    k_perp: f64,
    k_perp_prime: f64,
    q_z: f64,
    cfg: &ReducedMEConfig,
) -> Result<Vec<Complex64>> {
    let dm = final_.m - initial.m;
    let m = m_max as i32;
    let orders: Vec<(i32, i32)> = (-m..=m).map(|mu| (mu, mu - dm)).collect();
    reduced_me_orders(initial, final_, &orders, k_perp, k_perp_prime, q_z, cfg)
}

/// The double integral for arbitrary pairs of Bessel orders `(a, b)` in
/// `J_a(k_perp r_perp) J_b(k_perp' r_perp)`.
pub fn reduced_me_orders(
    initial: &AtomicOrbital,
    final_: &AtomicOrbital,
    orders: &[(i32, i32)],
    k_perp: f64,
    k_perp_prime: f64,
    q_z: f64,
    cfg: &ReducedMEConfig,
) -> Result<Vec<Complex64>> {
    if initial.z != final_.z {
        return Err(Error::MismatchedCharge {
            initial: initial.z,
            final_: final_.z,
        });
    }
    if !(k_perp >= 0.0 && k_perp_prime >= 0.0 && k_perp.is_finite() && k_perp_prime.is_finite() && q_z.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "reduced matrix element needs finite k_perp, k_perp' >= 0 (got {k_perp}, {k_perp_prime}, q_z = {q_z})"
        )));
    }
    let decay = initial.z / initial.n as f64 + final_.z / final_.n as f64;
    let degree = (initial.n + final_.n) as f64;
    let r_max = (45.0 + 4.0 * degree) / decay;
    let k_max = k_perp + k_perp_prime + q_z.abs();
    let mut width = if k_max > 0.0 { (4.0 / k_max).min(cfg.max_panel_width) } else { cfg.max_panel_width };
    let mut n_u = cfg.initial_polar.max(16 + (k_max * r_max) as usize);

    let mut previous = polar_grid_sum(initial, final_, orders, k_perp, k_perp_prime, q_z, r_max, width, n_u);
    for _ in 0..cfg.max_levels {
        width *= 0.5;
        n_u *= 2;
        let current = polar_grid_sum(initial, final_, orders, k_perp, k_perp_prime, q_z, r_max, width, n_u);
        let scale = current.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let (gap, worst) = current
            .iter()
            .zip(&previous)
            .map(|(a, b)| (a - b).norm())
            .enumerate()
            .fold((0.0, 0), |(g, w), (i, d)| if d > g { (d, i) } else { (g, w) });
        if gap <= cfg.rel_tol * scale + cfg.abs_floor {
            return Ok(current);
        }
        previous = current;
        if n_u >= 1 << 14 {
            return Err(Error::NotConverged {
                what: "reduced matrix element",
                nodes: n_u,
                estimate: previous[worst],
                gap,
            });
        }
    }
    let gap = f64::NAN;
    Err(Error::NotConverged {
        what: "reduced matrix element",
        nodes: n_u,
        estimate: previous.first().copied().unwrap_or_default(),
        gap,
    })
}

#[allow(clippy::too_many_arguments)]
fn polar_grid_sum(
    initial: &AtomicOrbital,
    final_: &AtomicOrbital,
    orders: &[(i32, i32)],
    k_perp: f64,
    k_perp_prime: f64,
    q_z: f64,
    r_max: f64,
    width: f64,
    n_u: usize,
) -> Vec<Complex64> {
    let na = orders.iter().map(|o| o.0.unsigned_abs()).max().unwrap_or(0) as usize;
    let nb = orders.iter().map(|o| o.1.unsigned_abs()).max().unwrap_or(0) as usize;
    let radial: Vec<(f64, f64)> = composite_nodes(r_max, width, &GaussLegendre::new(16))
        .into_iter()
        .map(|(r, w)| (r, w * r * r * initial.radial(r) * final_.radial(r)))
        .collect();
    let polar: Vec<(f64, f64, f64)> = GaussLegendre::new(n_u)
        .mapped(-1.0, 1.0)
        .map(|(u, w)| {
            let theta = u.acos();
            let ang = theta_part(initial.l, initial.m, theta) * theta_part(final_.l, final_.m, theta);
            (u, (1.0 - u * u).max(0.0).sqrt(), w * ang)
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); orders.len()];
    for &(r, wr) in &radial {
        if wr == 0.0 {
            continue;
        }
        for &(u, s, wu) in &polar {
            if wu == 0.0 {
                continue;
            }
            let rp = r * s;
            let ja = bessel_j_upto(na, k_perp * rp);
            let jb = bessel_j_upto(nb, k_perp_prime * rp);
            let w = Complex64::from_polar(wr * wu, q_z * r * u);
            for (acc, &(a, b)) in out.iter_mut().zip(orders) {
                *acc += w * (signed_order(&ja, a) * signed_order(&jb, b));
            }
        }
    }
    out
}

/// Outcome of the truncated Bessel series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    pub truncation: u32,
    /// Largest `|term|` among the two outermost orders `mu = +-truncation`.
    pub last_term: f64,
}

/// Default truncation of [`f_cyl_series`].
pub const DEFAULT_TRUNCATION: u32 = 40;

/// Order in which series terms are added: `0, -1, 1, -2, 2, ...`.
pub fn series_order(m_max: u32) -> impl Iterator<Item = i32> {
    std::iter::once(0).chain((1..=m_max as i32).flat_map(|m| [-m, m]))
}

/// Vortex amplitude as the series
/// `sum_mu f_el(ell - mu) (-i)^lambda e^{i lambda phi'} M(mu)`, `lambda = mu - dm`,
/// with the electron–electron factor at `V0 = 1` and, for elastic scattering,
/// the nuclear term `f_el(ell; V0 = -Z)`.
/// A truncation of zero keeps only the `mu = 0` term and skips the tail check.
pub fn f_cyl_series(
    tr: &Transition,
    beam: &BeamSpec,
    k_perp_prime: f64,
    q_z: f64,
    phi_prime: f64,
    truncation: u32,
    cfg: &ReducedMEConfig,
) -> Result<SeriesResult> {
    let dm = tr.dm_atom;
    // every term shares r1, so a singular geometry fails here once
    f_elastic_screened(beam, k_perp_prime, q_z, phi_prime, 0.0, 1.0)?;
    let table = reduced_me_table(&tr.initial, &tr.final_, truncation, beam.k_perp, k_perp_prime, q_z, cfg)?;
    let m = truncation as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_term: f64 = 0.0;
    for mu in series_order(truncation) {
        let coulomb = f_elastic_screened(&beam.with_ell(beam.ell - mu), k_perp_prime, q_z, phi_prime, 0.0, 1.0)?;
        let lambda = mu - dm;
        let term = coulomb * neg_i_pow(lambda) * Complex64::from_polar(1.0, lambda as f64 * phi_prime) * table[(mu + m) as usize];
        sum += term;
        if mu.abs() == m {
            last_term = last_term.max(term.norm());
        }
    }
    if tr.is_elastic() {
        sum += f_elastic_screened(beam, k_perp_prime, q_z, phi_prime, 0.0, -tr.z())?;
    }
    if truncation > 0 && last_term > 1e-3 * sum.norm() && last_term > 1e-300 {
        return Err(Error::SeriesNotConverged {
            truncation,
            last_term,
            partial_sum: sum.norm(),
        });
    }
    Ok(SeriesResult {
        value: sum,
        truncation,
        last_term,
    })
}

/// Closed-form amplitude for scattering to `theta = 0` of a beam with
/// transverse wavenumber `k_perp` and OAM `ell`, at longitudinal transfer `q_z`.
/// Vanishes unless `ell = dm_atom`.
pub fn f_central_at(tr: &Transition, ell: i32, k_perp: f64, q_z: f64) -> Result<Complex64> {
    let channel = tr.channel()?;
    if ell != tr.dm_atom {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let z = tr.z();
    let z2 = z * z;
    let big_q = k_perp * k_perp + q_z * q_z;
    let b = big_q + 2.25 * z2;
    let cube = b * b * b;
    match channel {
        Channel::Elastic1s => {
            let a = 4.0 * z2 + big_q;
            let mut f = 2.0 * (8.0 * z2 + big_q) / (a * a);
            if z != 1.0 {
                if big_q == 0.0 {
                    return Err(Error::ForwardDivergence { q: 0.0 });
                }
                f += 2.0 * (z - 1.0) / big_q;
            }
            Ok(Complex64::new(f, 0.0))
        }
        Channel::Excite2s => Ok(Complex64::new(-8.0 * 2f64.sqrt() * z2 * z2 / cube, 0.0)),
        Channel::Excite2p(m) => {
            if big_q == 0.0 {
                return Err(Error::ForwardDivergence { q: 0.0 });
            }
            let z5 = z2 * z2 * z;
            if m == 0 {
                Ok(Complex64::new(0.0, -12.0 * 2f64.sqrt() * z5 * q_z / (big_q * cube)))
            } else {
                Ok(Complex64::new(12.0 * z5 * k_perp / (big_q * cube), 0.0))
            }
        }
    }
}

/// Central amplitude for a Bessel beam, with `q_z = k_z - k'`.
pub fn f_central(tr: &Transition, beam: &BeamSpec) -> Result<Complex64> {
    let kp = outgoing_k(beam.k(), tr.delta_e)?;
    f_central_at(tr, beam.ell, beam.k_perp, beam.k_z - kp)
}

/// Plane wave `k_z z^` in, Bessel beam with transverse wavenumber `k_perp'` out:
/// `-2 (-i)^lambda e^{i lambda phi'} (M(0) - Z delta_fi) / (k_perp'^2 + q_z^2)`
/// with `lambda = -dm_atom` and `M(0)` taken at `k_perp = 0`.
pub fn f_pw_in_vortex_out(
    tr: &Transition,
    k_z: f64,
    k_perp_prime: f64,
    phi_prime: f64,
    cfg: &ReducedMEConfig,
) -> Result<Complex64> {
    let kp = outgoing_k(k_z, tr.delta_e)?;
    if !(0.0..kp).contains(&k_perp_prime) {
        return Err(Error::InvalidParameter(format!(
            "outgoing transverse wavenumber {k_perp_prime} must lie in [0, k' = {kp})"
        )));
    }
    let q_z = k_z - ((kp - k_perp_prime) * (kp + k_perp_prime)).sqrt();
    let q2 = k_perp_prime * k_perp_prime + q_z * q_z;
    if q2 == 0.0 {
        return Err(Error::ForwardDivergence { q: 0.0 });
    }
    let key = ReducedMEKey {
        initial: tr.initial,
        final_: tr.final_,
        mu: 0,
        k_perp: 0.0,
        k_perp_prime,
        q_z,
    };
    let mut me = reduced_me(&key, cfg)?;
    if tr.is_elastic() {
        me -= tr.z();
    }
    let lambda = -tr.dm_atom;
    Ok(-2.0 / q2 * neg_i_pow(lambda) * Complex64::from_polar(1.0, lambda as f64 * phi_prime) * me)
}

/// Both sides of the OAM reciprocity relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reciprocity {
    /// `|f|` for a plane wave in, Bessel beam (`k_perp' = k_transverse`) out.
    pub lhs: f64,
    /// `|f|` for a Bessel beam (`k_perp = k_transverse`, `ell = dm_atom`) in, scattered to `theta = 0`.
    pub rhs: f64,
    pub rel_gap: f64,
    pub q_z: f64,
}

pub fn reciprocity_check(tr: &Transition, k: f64, k_transverse: f64, cfg: &ReducedMEConfig) -> Result<Reciprocity> {
    tr.channel()?;
    let kp = outgoing_k(k, tr.delta_e)?;
    if !(0.0..kp).contains(&k_transverse) {
        return Err(Error::InvalidParameter(format!(
            "transverse wavenumber {k_transverse} must lie in [0, k' = {kp})"
        )));
    }
    let q_z = k - ((kp - k_transverse) * (kp + k_transverse)).sqrt();
    let lhs = f_pw_in_vortex_out(tr, k, k_transverse, 0.0, cfg)?.norm();
    let rhs = f_central_at(tr, tr.dm_atom, k_transverse, q_z)?.norm();
    let rel_gap = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
    Ok(Reciprocity { lhs, rhs, rel_gap, q_z })
}
