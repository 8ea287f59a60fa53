//! The 1s->2p_z amplitude is proportional to q_z, so its profile vanishes at
//! theta0 = arccos(k cos(alpha) / k') whenever that angle exists.

use vortex_born::atomic::Transition;
use vortex_born::kinematics::{outgoing_k, theta_zero, BeamSpec, ThetaGrid};
use vortex_born::specfun::QuadratureConfig;
use vortex_born::units::{mrad_to_rad, wavenumber_from_kev};
use vortex_born::vortex::profile;

fn main() -> vortex_born::Result<()> {
    let tr = Transition::parse("1s:2p0", 1.0)?;
    let grid = ThetaGrid::from_mrad(30.0, 1201)?;
    for kev in [120.0, 600.0] {
        let k = wavenumber_from_kev(kev);
        let kp = outgoing_k(k, tr.delta_e)?;
        for alpha_mrad in [5.0, 10.0, 21.2] {
            let alpha = mrad_to_rad(alpha_mrad);
            let p = profile(&tr, &BeamSpec::from_k_alpha(k, alpha, 0)?, &grid, &QuadratureConfig::default())?;
            let crossing = p
                .rows
                .windows(2)
                .find(|w| (w[0].amplitude * w[1].amplitude.conj()).re < 0.0)
                .map(|w| format!("{:.3} mrad", 0.5e3 * (w[0].theta + w[1].theta)))
                .unwrap_or_else(|| "none".into());
            let predicted = theta_zero(k, kp, alpha)
                .map(|t| format!("{:.3} mrad", t * 1e3))
                .unwrap_or_else(|e| e.to_string());
            println!("{kev} keV, alpha {alpha_mrad} mrad: sign change {crossing}; theta0 {predicted}");
        }
    }
    Ok(())
}
