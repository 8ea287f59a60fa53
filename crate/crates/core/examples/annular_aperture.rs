//! A hollow cone of plane waves (uniform annulus in k_perp, ell = 0) still
//! scatters elastically onto the axis, unlike a vortex beam.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::{BeamSpec, ThetaGrid};
use vortex_born::specfun::QuadratureConfig;
use vortex_born::units::{mrad_to_rad, wavenumber_from_kev};
use vortex_born::vortex::{aperture_superpose, Aperture};

fn main() -> vortex_born::Result<()> {
    let k = wavenumber_from_kev(120.0);
    let kt = |mrad: f64| BeamSpec::from_k_alpha(k, mrad_to_rad(mrad), 0).map(|b| b.k_perp);
    let aperture = Aperture::new(kt(10.0)?, kt(21.2)?, 16)?;
    let tr = Transition::parse("1s:1s", 1.0)?;
    let grid = ThetaGrid::from_mrad(40.0, 9)?;
    for ell in [0, 1] {
        let p = aperture_superpose(&tr, &aperture, |_| 1.0, ell, k, &grid, &QuadratureConfig::default())?;
        println!("ell = {ell}");
        for r in &p.rows {
            println!("  {:>5.1} mrad  {:.5e}", r.theta * 1e3, r.dcs);
        }
    }
    Ok(())
}
