//! Beam wavenumbers, momentum transfer and the q_z = 0 angle at 120 keV.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::{outgoing_k, q_total, theta_zero, BeamSpec};
use vortex_born::units::{mrad_to_rad, rad_to_mrad, wavenumber_from_kev};

fn main() -> vortex_born::Result<()> {
    let k = wavenumber_from_kev(120.0);
    let tr = Transition::parse("1s:2p0", 1.0)?;
    let kp = outgoing_k(k, tr.delta_e)?;
    println!("k = {k:.12} a.u., k' = {kp:.12} a.u. (dE = {} Ha)", tr.delta_e);
    println!("q_min = k - k' = {:.6e}", q_total(k, kp, 0.0));

    for alpha_mrad in [5.0, 10.0, 21.2] {
        let beam = BeamSpec::from_kev_mrad(120.0, alpha_mrad, 0)?;
        match theta_zero(k, kp, mrad_to_rad(alpha_mrad)) {
            Ok(t0) => println!("alpha = {alpha_mrad:>4} mrad: k_perp = {:.5}, theta0 = {:.4} mrad", beam.k_perp, rad_to_mrad(t0)),
            Err(e) => println!("alpha = {alpha_mrad:>4} mrad: k_perp = {:.5}, {e}", beam.k_perp),
        }
    }
    Ok(())
}
