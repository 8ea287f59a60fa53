//! An ell = 1 beam exciting 2p+ (OAM absorbed) or 2p- (OAM released): the
//! first scatters mostly inside the cone theta < alpha, the second outside.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::{BeamSpec, ThetaGrid};
use vortex_born::specfun::QuadratureConfig;
use vortex_born::vortex::profile;

fn main() -> vortex_born::Result<()> {
    let quad = QuadratureConfig::default();
    let grid = ThetaGrid::from_mrad(40.0, 801)?;
    for alpha in [1.0, 10.0, 21.2] {
        let beam = BeamSpec::from_kev_mrad(120.0, alpha, 1)?;
        for name in ["1s:2p+1", "1s:2p-1", "1s:2p0"] {
            let p = profile(&Transition::parse(name, 1.0)?, &beam, &grid, &quad)?;
            let peak = p.peak();
            println!(
                "alpha {alpha:>4} mrad {name:<8} peak {:.3e} at {:>6.2} mrad, dcs(0) = {:.3e}",
                peak.dcs,
                peak.theta * 1e3,
                p.rows[0].dcs
            );
        }
    }
    Ok(())
}
