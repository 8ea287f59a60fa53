//! Plane-wave cross sections for the n = 2 final states at 120 keV, including
//! the three 2p substates and their sum.

use vortex_born::atomic::Transition;
use vortex_born::planewave::{dcs_pw, dcs_pw_2p_total};
use vortex_born::units::wavenumber_from_kev;

fn main() -> vortex_born::Result<()> {
    let k = wavenumber_from_kev(120.0);
    let names = ["1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"];
    println!("theta_mrad,{},2p_total", names.join(","));
    for j in 0..=20 {
        let theta = 1e-3 * j as f64 * 0.25;
        let mut row = vec![format!("{}", theta * 1e3)];
        for n in names {
            row.push(format!("{:.6e}", dcs_pw(&Transition::parse(n, 1.0)?, k, theta)?));
        }
        row.push(format!("{:.6e}", dcs_pw_2p_total(1.0, k, theta)?));
        println!("{}", row.join(","));
    }
    Ok(())
}
