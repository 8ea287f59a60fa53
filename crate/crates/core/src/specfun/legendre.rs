//! Associated Legendre functions and the `m' = 0` column of the Wigner
//! small-d matrix. The Condon–Shortley phase is included throughout.

use crate::error::{Error, Result};

/// `P_l^m(x)` for `0 <= m <= l`, by upward recurrence in `l` from `P_m^m`.
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("P_l^m needs |x| <= 1, got {x}")));
    }
    if m > l {
        return Err(Error::Domain(format!("P_l^m needs m <= l, got l={l}, m={m}")));
    }
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * s;
        odd += 2.0;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return Ok(pm1);
    }
    let mut pm2 = pmm;
    for ll in (m + 2)..=l {
        let next = (x * (2 * ll - 1) as f64 * pm1 - (ll + m - 1) as f64 * pm2) / (ll - m) as f64;
        pm2 = pm1;
        pm1 = next;
    }
    Ok(pm1)
}

/// `sqrt((l-m)!/(l+m)!)`, built as a running product to stay finite.
pub(crate) fn factorial_ratio_sqrt(l: u32, m: u32) -> f64 {
    let mut r = 1.0;
    for k in (l - m + 1)..=(l + m) {
        r /= k as f64;
    }
    r.sqrt()
}

/// `d^l_{m,0}(chi)`; negative `m` through `d^l_{-m,0} = (-1)^m d^l_{m,0}`.
pub fn wigner_d_m0(l: u32, m: i32, chi: f64) -> f64 {
    let am = m.unsigned_abs();
    assert!(am <= l, "|m| = {am} exceeds l = {l}");
    let x = chi.cos().clamp(-1.0, 1.0);
    // `x` is clamped, so the domain error cannot occur.
    let p = assoc_legendre(l, am, x).unwrap_or(0.0);
    let d = factorial_ratio_sqrt(l, am) * p;
    if m < 0 && am % 2 == 1 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert_eq!(assoc_legendre(0, 0, 0.3).unwrap(), 1.0);
        assert!((assoc_legendre(1, 0, 0.3).unwrap() - 0.3).abs() < 1e-16);
        assert_eq!(assoc_legendre(1, 1, 0.0).unwrap(), -1.0);
        // P_2^1(x) = -3x sqrt(1-x^2), P_3^2(x) = 15x(1-x^2)
        let x: f64 = 0.42;
        let p21 = -3.0 * x * (1.0 - x * x).sqrt();
        assert!((assoc_legendre(2, 1, x).unwrap() - p21).abs() < 1e-15);
        let p32 = 15.0 * x * (1.0 - x * x);
        assert!((assoc_legendre(3, 2, x).unwrap() - p32).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(assoc_legendre(2, 1, 1.5), Err(Error::Domain(_))));
        assert!(matches!(assoc_legendre(1, 2, 0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn p_state_rotation_coefficients() {
        let chi = 0.73f64;
        assert!((wigner_d_m0(1, 0, chi) - chi.cos()).abs() < 1e-15);
        let s = chi.sin() / 2f64.sqrt();
        assert!((wigner_d_m0(1, 1, chi) + s).abs() < 1e-15);
        assert!((wigner_d_m0(1, -1, chi) - s).abs() < 1e-15);
        assert_eq!(wigner_d_m0(0, 0, 1.234), 1.0);
    }

    #[test]
    fn normalization_over_m() {
        for l in 0..=8u32 {
            for i in 0..25 {
                let chi = 0.13 * i as f64;
                let s: f64 = (-(l as i32)..=l as i32)
                    .map(|m| wigner_d_m0(l, m, chi).powi(2))
                    .sum();
                assert!((s - 1.0).abs() < 1e-13, "l={l} chi={chi}: {s}");
            }
        }
    }
}
