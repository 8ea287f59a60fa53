//! Hydrogen-like orbitals and the transitions with closed-form amplitudes.

use vortex_born::atomic::{AtomicOrbital, Transition};

fn main() -> vortex_born::Result<()> {
    for name in ["1s", "2s", "2p-1", "2p0", "2p+1", "3d+2"] {
        let o = AtomicOrbital::parse(name, 1.0)?;
        println!(
            "{:<5} E = {:+.4} Ha  R(1 bohr) = {:.6}  psi(r=1, theta=0.3, phi=0.2) = {:.6}",
            o.name(),
            o.energy(),
            o.radial(1.0),
            o.eval(1.0, 0.3, 0.2)
        );
    }
    for spec in ["1s:1s", "1s:2s", "1s:2p+1", "1s:2p-1", "1s:2p0", "1s:3d0"] {
        let t = Transition::parse(spec, 1.0)?;
        let channel = t.channel().map(|c| format!("{c:?}")).unwrap_or_else(|e| e.to_string());
        println!("{t}: dE = {:.4} Ha, dm = {:+}, {channel}", t.delta_e, t.dm_atom);
    }
    Ok(())
}
