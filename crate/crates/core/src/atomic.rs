//! Hydrogen-like bound states and transitions between them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{assoc_legendre, factorial_ratio_sqrt, laguerre};

const SPECTROSCOPIC: [char; 9] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l'];

/// Largest orbital quantum number handled by the angular routines.
pub const MAX_L: u32 = 8;

/// Hydrogenic state `|n l m>` around a nucleus of charge `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomicOrbital {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub z: f64,
}

impl AtomicOrbital {
    pub fn new(n: u32, l: u32, m: i32, z: f64) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(Error::InvalidOrbital(format!("need 0 <= l < n, got n={n}, l={l}")));
        }
        if l > MAX_L {
            return Err(Error::InvalidOrbital(format!("l={l} exceeds the supported maximum {MAX_L}")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidOrbital(format!("need |m| <= l, got l={l}, m={m}")));
        }
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidOrbital(format!("nuclear charge must be > 0, got {z}")));
        }
        Ok(Self { n, l, m, z })
    }

    /// Parses names such as `1s`, `2p0`, `2p+1`, `2p-1`, `3d+2`.
    pub fn parse(name: &str, z: f64) -> Result<Self> {
        let bad = || Error::InvalidOrbital(format!("cannot parse orbital {name:?} (expected e.g. 1s, 2p0, 2p+1, 2p-1)"));
        let letter_at = name.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let n: u32 = name[..letter_at].parse().map_err(|_| bad())?;
        let mut rest = name[letter_at..].chars();
        let letter = rest.next().ok_or_else(bad)?.to_ascii_lowercase();
        let l = SPECTROSCOPIC.iter().position(|&c| c == letter).ok_or_else(bad)? as u32;
        let tail: String = rest.collect();
        let m = if tail.is_empty() {
            if l != 0 {
                return Err(Error::InvalidOrbital(format!(
                    "orbital {name:?} needs a magnetic quantum number (e.g. {n}{letter}0)"
                )));
            }
            0
        } else {
            tail.parse::<i32>().map_err(|_| bad())?
        };
        Self::new(n, l, m, z)
    }

    pub fn energy(&self) -> f64 {
        orbital_energy(self.n, self.z)
    }

    pub fn radial(&self, r: f64) -> f64 {
        radial(self.n, self.l, self.z, r)
    }

    /// `theta`-dependent factor of the spherical harmonic, see [`theta_part`].
    pub fn theta_part(&self, theta: f64) -> f64 {
        theta_part(self.l, self.m, theta)
    }

    pub fn eval(&self, r: f64, theta: f64, phi: f64) -> Complex64 {
        eval_orbital(self, r, theta, phi)
    }

    /// Canonical name as accepted by [`AtomicOrbital::parse`].
    pub fn name(&self) -> String {
        let letter = SPECTROSCOPIC[self.l as usize];
        if self.l == 0 {
            format!("{}{}", self.n, letter)
        } else if self.m > 0 {
            format!("{}{}+{}", self.n, letter, self.m)
        } else {
            format!("{}{}{}", self.n, letter, self.m)
        }
    }
}

impl fmt::Display for AtomicOrbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `E_n = -z^2 / (2 n^2)` Hartree.
pub fn orbital_energy(n: u32, z: f64) -> f64 {
    let n = n as f64;
    -z * z / (2.0 * n * n)
}

/// Normalised radial function `R_nl(r)` with `int r^2 R^2 dr = 1`.
pub fn radial(n: u32, l: u32, z: f64, r: f64) -> f64 {
    let nf = n as f64;
    let eta = 2.0 * z / nf;
    let rho = eta * r;
    // (n-l-1)!/(n+l)!
    let mut ratio = 1.0;
    for k in (n - l)..=(n + l) {
        ratio /= k as f64;
    }
    let norm = (eta * eta * eta * ratio / (2.0 * nf)).sqrt();
    norm * rho.powi(l as i32) * laguerre(n - l - 1, 2 * l + 1, rho) * (-0.5 * rho).exp()
}

/// `Theta_lm(theta)` with `Y_lm = Theta_lm(theta) e^{i m phi} / sqrt(2 pi)`,
/// normalised so that `int Theta^2 sin(theta) d theta = 1`.
///
/// Condon–Shortley phase; `Theta_{l,-m} = (-1)^m Theta_{l,m}`.
pub fn theta_part(l: u32, m: i32, theta: f64) -> f64 {
    let am = m.unsigned_abs();
    let x = theta.cos().clamp(-1.0, 1.0);
    let p = assoc_legendre(l, am, x).unwrap_or(0.0);
    let v = ((2 * l + 1) as f64 / 2.0).sqrt() * factorial_ratio_sqrt(l, am) * p;
    if m < 0 && am % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    Complex64::from_polar(theta_part(l, m, theta) / (2.0 * PI).sqrt(), m as f64 * phi)
}

/// `psi_nlm(r, theta, phi) = R_nl(r) Y_lm(theta, phi)`.
pub fn eval_orbital(orb: &AtomicOrbital, r: f64, theta: f64, phi: f64) -> Complex64 {
    orb.radial(r) * spherical_harmonic(orb.l, orb.m, theta, phi)
}

/// A bound state written as `R(r) * A(theta, phi)`, which is all the
/// matrix-element oracle needs.
pub trait BoundState: Sync {
    fn radial(&self, r: f64) -> f64;
    fn angular(&self, theta: f64, phi: f64) -> Complex64;
    /// Exponential decay rate of `R(r)` (`z/n` for hydrogenic states).
    fn decay_rate(&self) -> f64;
    /// Polynomial degree of `R(r) e^{decay r}`, used to size radial grids.
    fn radial_degree(&self) -> u32;
    fn l(&self) -> u32;
}

impl BoundState for AtomicOrbital {
    fn radial(&self, r: f64) -> f64 {
        AtomicOrbital::radial(self, r)
    }

    fn angular(&self, theta: f64, phi: f64) -> Complex64 {
        spherical_harmonic(self.l, self.m, theta, phi)
    }

    fn decay_rate(&self) -> f64 {
        self.z / self.n as f64
    }

    fn radial_degree(&self) -> u32 {
        self.n - 1
    }

    fn l(&self) -> u32 {
        self.l
    }
}

/// Closed-form channels available for the amplitude dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    /// 1s -> 1s
    Elastic1s,
    /// 1s -> 2s
    Excite2s,
    /// 1s -> 2p with final magnetic number `m`
    Excite2p(i32),
}

/// Transition `initial -> final_`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub initial: AtomicOrbital,
    #[serde(rename = "final")]
    pub final_: AtomicOrbital,
    pub delta_e: f64,
    /// `m_final - m_initial`, the OAM taken up by the atom.
    pub dm_atom: i32,
}

pub fn make_transition(initial: AtomicOrbital, final_: AtomicOrbital) -> Result<Transition> {
    if initial.z != final_.z {
        return Err(Error::MismatchedCharge {
            initial: initial.z,
            final_: final_.z,
        });
    }
    Ok(Transition {
        initial,
        final_,
        delta_e: final_.energy() - initial.energy(),
        dm_atom: final_.m - initial.m,
    })
}

impl Transition {
    /// Parses `initial:final`, e.g. `1s:2p+1`.
    pub fn parse(spec: &str, z: f64) -> Result<Self> {
        let (a, b) = spec.split_once(':').ok_or_else(|| {
            Error::InvalidOrbital(format!("transition {spec:?} must look like initial:final, e.g. 1s:2p+1"))
        })?;
        make_transition(AtomicOrbital::parse(a.trim(), z)?, AtomicOrbital::parse(b.trim(), z)?)
    }

    pub fn z(&self) -> f64 {
        self.initial.z
    }

    pub fn is_elastic(&self) -> bool {
        self.initial == self.final_
    }

    pub fn name(&self) -> String {
        format!("{}:{}", self.initial, self.final_)
    }

    /// Closed-form channel, or an error naming the transition.
    pub fn channel(&self) -> Result<Channel> {
        let i = &self.initial;
        let f = &self.final_;
        if (i.n, i.l) != (1, 0) {
            return Err(Error::UnsupportedTransition(self.name()));
        }
        match (f.n, f.l) {
            (1, 0) => Ok(Channel::Elastic1s),
            (2, 0) => Ok(Channel::Excite2s),
            (2, 1) => Ok(Channel::Excite2p(f.m)),
            _ => Err(Error::UnsupportedTransition(self.name())),
        }
    }
}

impl FromStr for AtomicOrbital {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 1.0)
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{composite_nodes, GaussLegendre};
    use proptest::prelude::*;

    fn all_orbitals(nmax: u32, z: f64) -> Vec<AtomicOrbital> {
        let mut out = Vec::new();
        for n in 1..=nmax {
            for l in 0..n {
                for m in -(l as i32)..=(l as i32) {
                    out.push(AtomicOrbital::new(n, l, m, z).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn energies() {
        assert_eq!(orbital_energy(1, 1.0), -0.5);
        assert_eq!(orbital_energy(2, 1.0), -0.125);
        let t = Transition::parse("1s:2p+1", 1.0).unwrap();
        assert_eq!(t.delta_e, 0.375);
        assert_eq!(t.dm_atom, 1);
    }

    #[test]
    fn transitions() {
        let t = Transition::parse("1s:1s", 1.0).unwrap();
        assert_eq!((t.dm_atom, t.delta_e), (0, 0.0));
        assert!(t.is_elastic());
        let t = Transition::parse("2p-1:1s", 1.0).unwrap();
        assert_eq!((t.dm_atom, t.delta_e), (1, -0.375));
        assert!(t.channel().is_err());
        let a = AtomicOrbital::new(1, 0, 0, 1.0).unwrap();
        let b = AtomicOrbital::new(2, 1, 0, 2.0).unwrap();
        assert!(matches!(make_transition(a, b), Err(Error::MismatchedCharge { .. })));
        assert_eq!(Transition::parse("1s:2p-1", 1.0).unwrap().channel().unwrap(), Channel::Excite2p(-1));
    }

    #[test]
    fn parsing() {
        for (s, (n, l, m)) in [("1s", (1, 0, 0)), ("2p0", (2, 1, 0)), ("2p+1", (2, 1, 1)), ("2p-1", (2, 1, -1)), ("3d-2", (3, 2, -2))] {
            let o: AtomicOrbital = s.parse().unwrap();
            assert_eq!((o.n, o.l, o.m), (n, l, m));
            assert_eq!(o.name(), s);
        }
        for bad in ["", "s", "1p0", "2p", "2p+2", "2x0", "0s", "2s1", "1s:2s"] {
            assert!(bad.parse::<AtomicOrbital>().is_err(), "{bad}");
        }
        assert!(AtomicOrbital::parse("1s", 0.0).is_err());
    }

    #[test]
    fn values_at_origin_and_axis() {
        for z in [1.0, 2.5] {
            let o = AtomicOrbital::new(1, 0, 0, z).unwrap();
            assert!((o.eval(0.0, 0.3, 1.1).re - (z * z * z / PI).sqrt()).abs() < 1e-14);
        }
        for o in all_orbitals(3, 1.0).into_iter().filter(|o| o.m != 0) {
            assert_eq!(o.eval(1.3, 0.0, 0.7).norm(), 0.0);
            assert!(o.eval(1.3, PI, 0.7).norm() < 1e-15);
        }
    }

    #[test]
    fn orthonormal_up_to_n3() {
        let z = 1.3;
        let orbs = all_orbitals(3, z);
        let radial_nodes = composite_nodes(60.0 / z, 0.5, &GaussLegendre::new(16));
        let polar = GaussLegendre::new(24);
        let n_phi = 16;
        let mut grid = Vec::new();
        for &(r, wr) in &radial_nodes {
            for (u, wu) in polar.mapped(-1.0, 1.0) {
                for j in 0..n_phi {
                    let phi = 2.0 * PI * j as f64 / n_phi as f64;
                    grid.push((r, u.acos(), phi, wr * wu * r * r * 2.0 * PI / n_phi as f64));
                }
            }
        }
        let values: Vec<Vec<Complex64>> = orbs
            .iter()
            .map(|o| grid.iter().map(|&(r, t, p, _)| o.eval(r, t, p)).collect())
            .collect();
        for (a, va) in orbs.iter().zip(&values) {
            for (b, vb) in orbs.iter().zip(&values) {
                let s: Complex64 = grid.iter().zip(va.iter().zip(vb)).map(|(g, (x, y))| g.3 * x.conj() * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((s - expect).norm() < 1e-8, "<{a}|{b}> = {s}");
            }
        }
    }

    #[test]
    fn theta_part_normalised() {
        let gl = GaussLegendre::new(20);
        for l in 0..=MAX_L {
            for m in -(l as i32)..=(l as i32) {
                let s = gl.integrate(-1.0, 1.0, |u| theta_part(l, m, u.acos()).powi(2));
                assert!((s - 1.0).abs() < 1e-12, "l={l} m={m}: {s}");
            }
        }
    }

    proptest! {
        #[test]
        fn m_ladder_conjugation(r in 0.0f64..10.0, theta in 0.0f64..PI, phi in 0.0f64..6.3, idx in 0usize..14) {
            let o = all_orbitals(3, 1.0)[idx];
            let neg = AtomicOrbital { m: -o.m, ..o };
            let sign = if o.m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let lhs = neg.eval(r, theta, phi);
            let rhs = sign * o.eval(r, theta, phi).conj();
            prop_assert!((lhs - rhs).norm() < 1e-14);
        }
    }
}
