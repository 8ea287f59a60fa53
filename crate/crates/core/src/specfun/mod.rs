//! Real special functions and the quadrature engine behind every amplitude.

mod bessel;
mod laguerre;
mod legendre;
mod quadrature;

pub use bessel::{bessel_j, bessel_j_upto, signed_order};
pub use laguerre::laguerre;
pub use legendre::{assoc_legendre, wigner_d_m0};
pub(crate) use legendre::factorial_ratio_sqrt;
pub use quadrature::{
    composite_nodes, integrate_periodic, GaussLegendre, QuadratureConfig, QUAD_TOL_ENV,
};

use num_complex::Complex64;

/// `(-i)^n` for any integer `n`.
pub fn neg_i_pow(n: i32) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}
