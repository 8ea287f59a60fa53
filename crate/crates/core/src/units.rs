//! Hartree atomic units and the conversions used at the CLI boundary.

/// One Hartree in electronvolts (CODATA 2018).
pub const HARTREE_EV: f64 = 27.211_386_245_988;

pub fn kev_to_hartree(kev: f64) -> f64 {
    kev * 1000.0 / HARTREE_EV
}

pub fn hartree_to_kev(hartree: f64) -> f64 {
    hartree * HARTREE_EV / 1000.0
}

/// Non-relativistic wavenumber `k = sqrt(2E)` of an electron with kinetic energy in keV.
pub fn wavenumber_from_kev(kev: f64) -> f64 {
    (2.0 * kev_to_hartree(kev)).sqrt()
}

pub fn kev_from_wavenumber(k: f64) -> f64 {
    hartree_to_kev(0.5 * k * k)
}

pub fn mrad_to_rad(mrad: f64) -> f64 {
    mrad * 1e-3
}

pub fn rad_to_mrad(rad: f64) -> f64 {
    rad * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn beam_energy_120_kev() {
        let k = wavenumber_from_kev(120.0);
        assert!((k - 93.913_988_958_819_11).abs() < 1e-10, "{k}");
    }

    proptest! {
        #[test]
        fn conversions_are_inverse(kev in 1e-3f64..1e4, mrad in -500.0f64..500.0) {
            let back = hartree_to_kev(kev_to_hartree(kev));
            prop_assert!((back - kev).abs() <= 1e-12 * kev);
            let back = kev_from_wavenumber(wavenumber_from_kev(kev));
            prop_assert!((back - kev).abs() <= 1e-12 * kev);
            let back = rad_to_mrad(mrad_to_rad(mrad));
            prop_assert!((back - mrad).abs() <= 1e-12 * mrad.abs().max(1.0));
        }
    }
}
