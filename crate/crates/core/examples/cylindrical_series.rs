//! The Bessel-series representation summed to increasing order, next to the
//! azimuthal-quadrature value.

use vortex_born::atomic::Transition;
use vortex_born::cylindrical::{f_cyl_series, ReducedMEConfig};
use vortex_born::kinematics::BeamSpec;
use vortex_born::specfun::QuadratureConfig;
use vortex_born::vortex::{f_vortex_quad, VortexAmplitudeRequest};

fn main() -> vortex_born::Result<()> {
    let t = Transition::parse("1s:2s", 1.0)?;
    let beam = BeamSpec::from_kev_mrad(120.0, 10.0, 1)?;
    let req = VortexAmplitudeRequest::new(t, beam, 12e-3, 0.0, QuadratureConfig::default())?;
    let g = req.geometry()?;
    let reference = f_vortex_quad(&req)?;
    println!("quadrature: {reference:.10}");
    for m in [2, 5, 10, 20, 40] {
        match f_cyl_series(&t, &beam, g.k_perp_prime(), g.q_z, 0.0, m, &ReducedMEConfig::default()) {
            Ok(s) => println!("M = {m:>2}: {:.10}  last term {:.1e}  rel gap {:.1e}", s.value, s.last_term, (s.value - reference).norm() / reference.norm()),
            Err(e) => println!("M = {m:>2}: {e}"),
        }
    }
    Ok(())
}
