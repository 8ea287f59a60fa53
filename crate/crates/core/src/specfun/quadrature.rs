//! Quadrature rules: trapezoidal doubling for smooth periodic integrands and
//! Gauss–Legendre rules (plain and composite) for finite intervals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Environment variable that overrides [`QuadratureConfig::rel_tol`].
pub const QUAD_TOL_ENV: &str = "VS_QUAD_TOL";

/// Stopping rule for [`integrate_periodic`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub initial_nodes: usize,
    pub max_nodes: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            initial_nodes: 64,
            max_nodes: 1 << 20,
            rel_tol: 1e-10,
            abs_floor: 1e-16,
        }
    }
}

impl QuadratureConfig {
    pub fn new(initial_nodes: usize, max_nodes: usize, rel_tol: f64, abs_floor: f64) -> Result<Self> {
        let cfg = Self {
            initial_nodes,
            max_nodes,
            rel_tol,
            abs_floor,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_nodes < 16 || !self.initial_nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "initial_nodes must be a power of two >= 16, got {}",
                self.initial_nodes
            )));
        }
        if self.max_nodes < self.initial_nodes || !self.max_nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "max_nodes must be a power of two >= initial_nodes ({}), got {}",
                self.initial_nodes, self.max_nodes
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_floor must be positive, got {}",
                self.abs_floor
            )));
        }
        Ok(())
    }

    /// Defaults, with `rel_tol` taken from `VS_QUAD_TOL` when it is set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(QUAD_TOL_ENV) {
            cfg.rel_tol = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{QUAD_TOL_ENV}={raw:?} is not a number"))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Integrates a smooth 2π-periodic function over one period.
///
/// The trapezoidal rule is refined by doubling (reusing every earlier node)
/// until two successive estimates differ by at most
/// `rel_tol * |estimate| + abs_floor`. A roundoff allowance proportional to
/// `eps * sqrt(n) * integral(|f|)` is added so that integrals which vanish
/// exactly by symmetry still terminate.
pub fn integrate_periodic<F>(f: F, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut n = cfg.initial_nodes;
    let mut h = 2.0 * PI / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for j in 0..n {
        let v = f(j as f64 * h);
        sum += v;
        mass += v.norm();
    }
    let mut estimate = sum * h;
    loop {
        if 2 * n > cfg.max_nodes {
            return Err(Error::NotConverged {
                what: "periodic trapezoid",
                nodes: n,
                estimate,
                gap: f64::NAN,
            });
        }
        for j in 0..n {
            let v = f((j as f64 + 0.5) * h);
            sum += v;
            mass += v.norm();
        }
        n *= 2;
        h *= 0.5;
        let refined = sum * h;
        let gap = (refined - estimate).norm();
        let roundoff = 8.0 * f64::EPSILON * (n as f64).sqrt() * mass * h;
        let tol = cfg.rel_tol * refined.norm() + cfg.abs_floor + roundoff;
        if gap <= tol {
            return Ok(refined);
        }
        if 2 * n > cfg.max_nodes {
            return Err(Error::NotConverged {
                what: "periodic trapezoid",
                nodes: n,
                estimate: refined,
                gap,
            });
        }
        estimate = refined;
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule: `[0, end]` cut into equal panels of at most
/// `panel_width`, each carrying the same `per_panel`-point rule.
pub fn composite_nodes(end: f64, panel_width: f64, per_panel: &GaussLegendre) -> Vec<(f64, f64)> {
    let panels = (end / panel_width).ceil().max(1.0) as usize;
    let width = end / panels as f64;
    let mut out = Vec::with_capacity(panels * per_panel.len());
    for p in 0..panels {
        let a = p as f64 * width;
        out.extend(per_panel.mapped(a, a + width));
    }
    out
}
