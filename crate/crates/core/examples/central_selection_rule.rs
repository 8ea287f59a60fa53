//! On-axis amplitudes: only the beam whose OAM matches the atomic dm scatters
//! into theta = 0.

use vortex_born::atomic::Transition;
use vortex_born::cylindrical::f_central;
use vortex_born::kinematics::BeamSpec;
use vortex_born::specfun::QuadratureConfig;
use vortex_born::vortex::{vortex_amplitude, VortexAmplitudeRequest};

fn main() -> vortex_born::Result<()> {
    for name in ["1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"] {
        let t = Transition::parse(name, 1.0)?;
        let cells: Vec<String> = (-2..=2)
            .map(|ell| {
                let beam = BeamSpec::from_kev_mrad(120.0, 10.0, ell)?;
                let numeric = vortex_amplitude(&VortexAmplitudeRequest::new(t, beam, 0.0, 0.0, QuadratureConfig::default())?)?;
                let closed = f_central(&t, &beam)?;
                Ok(format!("{:>9.3e}/{:<9.3e}", numeric.norm(), closed.norm()))
            })
            .collect::<vortex_born::Result<_>>()?;
        println!("{name:<8} ell=-2..2 |f(0)| numeric/closed: {}", cells.join(" "));
    }
    Ok(())
}
