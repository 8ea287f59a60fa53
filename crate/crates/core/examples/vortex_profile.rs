//! Elastic cross sections for Bessel beams with OAM 0..3 at a fixed opening
//! angle, printed as one CSV per ell.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::{BeamSpec, ThetaGrid};
use vortex_born::specfun::QuadratureConfig;
use vortex_born::vortex::profile;

fn main() -> vortex_born::Result<()> {
    let tr = Transition::parse("1s:1s", 1.0)?;
    let grid = ThetaGrid::from_mrad(50.0, 11)?;
    let quad = QuadratureConfig::default();
    for ell in 0..=3 {
        let beam = BeamSpec::from_kev_mrad(120.0, 10.0, ell)?;
        let p = profile(&tr, &beam, &grid, &quad)?;
        println!("# ell = {ell}, peak at {:.2} mrad", p.peak().theta * 1e3);
        for r in &p.rows {
            println!("{:.1},{:.6e}", r.theta * 1e3, r.dcs);
        }
    }
    Ok(())
}
