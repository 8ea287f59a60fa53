//! Brute-force <f|e^{iq.r}|i> against the closed-form plane-wave amplitudes,
//! for a hydrogen and a Z = 2 ion.

use vortex_born::atomic::Transition;
use vortex_born::planewave::{f_pw, me_oracle, QVector};

fn main() -> vortex_born::Result<()> {
    let q = QVector::new(0.8, 0.4, -0.5)?;
    for z in [1.0, 2.0] {
        for name in ["1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"] {
            let t = Transition::parse(name, z)?;
            let me = me_oracle(&t, &q)?;
            let elastic = if t.is_elastic() { z } else { 0.0 };
            let oracle = -2.0 * (me - elastic) / q.magnitude_squared();
            let closed = f_pw(&t, &q)?;
            println!("Z={z} {name:<8} oracle {oracle:.12}  closed {closed:.12}  |diff| {:.1e}", (oracle - closed).norm());
        }
    }
    Ok(())
}
