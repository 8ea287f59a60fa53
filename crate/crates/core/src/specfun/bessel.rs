//! Cylindrical Bessel functions of the first kind, integer order.
//!
//! Small arguments (`x <= 2`) use the ascending power series term by term.
//! Larger arguments run Miller's backward recurrence from an order well above
//! `max(n, x)`. The recurrence is normalised with the Neumann sum
//! `J_0 + 2 sum J_2k = 1` while `x < 25`, and against Hankel's asymptotic
//! `J_0`/`J_1` beyond that, where the Neumann sum starts to lose digits.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;
const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_n(x)` for any integer order and finite `x`.
///
/// Uses `J_{-n}(x) = (-1)^n J_n(x)` and `J_n(-x) = (-1)^n J_n(x)`.
pub fn bessel_j(order: i32, x: f64) -> f64 {
    let n = order.unsigned_abs() as usize;
    let value = if x.abs() <= SERIES_LIMIT {
        series(n, x.abs())
    } else {
        miller(n, x.abs())[n]
    };
    let odd = n % 2 == 1;
    let flip = odd && ((order < 0) ^ (x < 0.0));
    if flip {
        -value
    } else {
        value
    }
}

/// `[J_0(x), J_1(x), ..., J_nmax(x)]` for `x >= 0`, computed in one pass.
pub fn bessel_j_upto(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x >= 0.0);
    if x <= SERIES_LIMIT {
        (0..=nmax).map(|n| series(n, x)).collect()
    } else {
        miller(nmax, x)
    }
}

/// Signed-order lookup into a table produced by [`bessel_j_upto`].
#[inline]
pub fn signed_order(table: &[f64], order: i32) -> f64 {
    let n = order.unsigned_abs() as usize;
    let v = table[n];
    if order < 0 && n % 2 == 1 {
        -v
    } else {
        v
    }
}

fn series(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    // (x/2)^n / n!
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let y = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= y / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let top = (nmax as f64).max(x);
    let mut start = (top + 20.0 + 2.0 * (40.0 * top).sqrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0; nmax + 1];
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // j_{k+1}
    let mut current = 1e-300; // j_k
    let mut neumann = 0.0;
    for k in (1..=start).rev() {
        if k <= nmax {
            out[k] = current;
        }
        if k % 2 == 0 {
            neumann += 2.0 * current;
        }
        let below = k as f64 * two_over_x * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            neumann *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }
    // `current` now holds the unnormalised j_0, `above` j_1.
    out[0] = current;
    neumann += current;
    let scale = if x < ASYMPTOTIC_LIMIT {
        1.0 / neumann
    } else {
        let (j0, j1) = hankel_j0_j1(x);
        if j0.abs() >= j1.abs() {
            j0 / current
        } else {
            j1 / above
        }
    };
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Hankel's asymptotic expansion for `J_0` and `J_1`, valid to machine
/// precision once `x >= 25`.
fn hankel_j0_j1(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    let mut out = [0.0; 2];
    for (nu, slot) in out.iter_mut().enumerate() {
        let mu = 4.0 * (nu * nu) as f64;
        let (mut p, mut q) = (1.0, 0.0);
        let mut term = 1.0;
        let mut last = f64::INFINITY;
        for k in 1..120 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (8.0 * k as f64 * x);
            if term.abs() > last {
                break;
            }
            last = term.abs();
            // a_k / x^k contributes to Q for odd k, to P for even k, with
            // alternating signs in each.
            match k % 4 {
                1 => q += term,
                2 => p -= term,
                3 => q -= term,
                _ => p += term,
            }
            if term.abs() < 1e-18 {
                break;
            }
        }
        // omega = x - nu*pi/2 - pi/4
        let (cos_w, sin_w) = if nu == 0 {
            ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
        } else {
            ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
        };
        *slot = amp * (p * cos_w - q * sin_w);
    }
    (out[0], out[1])
}
