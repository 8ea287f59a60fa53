//! Bessel-mode content of an ell = 1 beam whose axis misses the atom by r0.

use vortex_born::kinematics::BeamSpec;
use vortex_born::vortex::displaced_oam_weights;

fn main() -> vortex_born::Result<()> {
    let beam = BeamSpec::from_kev_mrad(120.0, 10.0, 1)?;
    for r0 in [0.0, 0.5, 2.0, 5.0] {
        let w = displaced_oam_weights(beam.ell, beam.k_perp, r0, -6, 8)?;
        let norm: f64 = w.iter().map(|(_, x)| x * x).sum();
        let shown: Vec<String> = w.iter().filter(|(_, x)| x.abs() > 1e-3).map(|(mu, x)| format!("{mu}:{x:.3}")).collect();
        println!("r0 = {r0} bohr: sum w^2 = {norm:.6}  [{}]", shown.join(" "));
    }
    Ok(())
}
