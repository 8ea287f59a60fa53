//! Plane wave in, Bessel beam out versus Bessel beam in, plane wave out.

use vortex_born::atomic::Transition;
use vortex_born::cylindrical::{reciprocity_check, ReducedMEConfig};
use vortex_born::units::wavenumber_from_kev;

fn main() -> vortex_born::Result<()> {
    let k = wavenumber_from_kev(120.0);
    for name in ["1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"] {
        for kt in [0.1, 0.5, 1.5] {
            let r = reciprocity_check(&Transition::parse(name, 1.0)?, k, kt, &ReducedMEConfig::default())?;
            println!("{name:<8} k_perp = {kt}: {:.10e} vs {:.10e} (rel gap {:.1e})", r.lhs, r.rhs, r.rel_gap);
        }
    }
    Ok(())
}
