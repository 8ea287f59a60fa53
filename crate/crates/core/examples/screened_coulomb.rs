//! Vortex amplitude of a Yukawa potential: closed form against quadrature.

use num_complex::Complex64;
use std::f64::consts::PI;
use vortex_born::cylindrical::f_elastic_screened;
use vortex_born::kinematics::BeamSpec;
use vortex_born::specfun::{integrate_periodic, neg_i_pow, QuadratureConfig};

fn main() -> vortex_born::Result<()> {
    let (ktp, qz, mu) = (0.9, 0.2, 0.7);
    for ell in -3..=3 {
        let beam = BeamSpec::new(0.6, 20.0, ell)?;
        let closed = f_elastic_screened(&beam, ktp, qz, 0.0, mu, 1.0)?;
        let kt = beam.k_perp;
        let integral = integrate_periodic(
            |d| Complex64::from_polar(-2.0 / (kt * kt + ktp * ktp - 2.0 * kt * ktp * d.cos() + qz * qz + mu * mu), ell as f64 * d),
            &QuadratureConfig::default(),
        )?;
        let numeric = neg_i_pow(ell) * integral / (2.0 * PI);
        println!("ell {ell:+}: {closed:.12} vs {numeric:.12}");
    }
    Ok(())
}
