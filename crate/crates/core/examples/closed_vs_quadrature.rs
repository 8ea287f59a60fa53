//! The ring-averaged plane-wave amplitude evaluated two ways: closed forms for
//! 1s->1s and 1s->2s, and direct azimuthal quadrature.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::BeamSpec;
use vortex_born::specfun::QuadratureConfig;
use vortex_born::vortex::{f_vortex_quad, vortex_amplitude, VortexAmplitudeRequest};

fn main() -> vortex_born::Result<()> {
    let quad = QuadratureConfig::default();
    for name in ["1s:1s", "1s:2s"] {
        for ell in [-2, 0, 1, 3] {
            let beam = BeamSpec::from_kev_mrad(120.0, 10.0, ell)?;
            let req = VortexAmplitudeRequest::new(Transition::parse(name, 1.0)?, beam, 8e-3, 0.6, quad)?;
            let closed = vortex_amplitude(&req)?;
            let numeric = f_vortex_quad(&req)?;
            println!("{name} ell={ell:+}: closed {closed:.12}  quadrature {numeric:.12}  rel {:.1e}", (closed - numeric).norm() / closed.norm());
        }
    }
    Ok(())
}
