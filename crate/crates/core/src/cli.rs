//! Command-line front end. Every table command writes its rows either to
//! stdout or to `--output`, in which case a `<output>.manifest.json` with the
//! resolved parameters and a canonical argument list is written next to it.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 kinematically closed
//! channel, 3 numerical non-convergence (or a failed `validate` check).

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::atomic::Transition;
use crate::cylindrical::{f_central, reciprocity_check, ReducedMEConfig};
use crate::error::Error;
use crate::kinematics::{outgoing_k, BeamSpec, ThetaGrid};
use crate::specfun::QuadratureConfig;
use crate::units::{mrad_to_rad, rad_to_mrad, wavenumber_from_kev};
use crate::validation::run_suite;
use crate::vortex::{aperture_superpose, displaced_oam_weights, profile, AngularProfile, Aperture};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "vortex-born", version, about = "Born amplitudes for Bessel (vortex) electron beams on hydrogen-like atoms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Angular profile f(theta), |f|^2 of one Bessel beam
    Profile(ProfileArgs),
    /// Forward (theta = 0) amplitude from the closed form
    Central(CentralArgs),
    /// Plane-in/vortex-out vs vortex-in/plane-out central amplitudes
    Reciprocity(ReciprocityArgs),
    /// Bessel-mode weights of a beam displaced from the atom
    OamWeights(OamWeightsArgs),
    /// Angular profile of a uniform annular aperture in k_perp
    Aperture(ApertureArgs),
    /// Consistency checks between the representations at reduced grids
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct EnergyArgs {
    /// Beam kinetic energy in keV
    #[arg(long)]
    pub energy_kev: Option<f64>,
    /// Beam wavenumber in atomic units
    #[arg(long)]
    pub k_au: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ConvergenceArgs {
    /// Opening angle of the Bessel beam in mrad
    #[arg(long)]
    pub alpha_mrad: Option<f64>,
    /// Transverse wavenumber in atomic units
    #[arg(long)]
    pub kperp_au: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct BeamArgs {
    #[command(flatten)]
    pub energy: EnergyArgs,
    #[command(flatten)]
    pub convergence: ConvergenceArgs,
    /// Orbital angular momentum of the beam
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub ell: i32,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Transition `initial:final`, e.g. 1s:2p+1
    #[arg(long)]
    pub transition: String,
    /// Nuclear charge
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 50.0)]
    pub theta_max_mrad: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Table destination; stdout (and no manifest) when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Relative tolerance of the azimuthal quadrature (overrides VS_QUAD_TOL)
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// Node cap of the azimuthal quadrature (power of two)
    #[arg(long)]
    pub quad_max_nodes: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub beam: BeamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CentralArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub beam: BeamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReciprocityArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub energy: EnergyArgs,
    #[command(flatten)]
    pub convergence: ConvergenceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OamWeightsArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    /// Transverse displacement of the beam axis from the atom, in bohr
    #[arg(long)]
    pub r0_au: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu_min: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu_max: Option<i32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ApertureArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub energy: EnergyArgs,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub ell: i32,
    /// Inner opening angle of the annulus in mrad
    #[arg(long)]
    pub alpha_min_mrad: f64,
    /// Outer opening angle of the annulus in mrad
    #[arg(long)]
    pub alpha_max_mrad: f64,
    /// Gauss–Legendre nodes across the annulus
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub quad_tol: Option<f64>,
}

/// Failures of a CLI run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Physics(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{failed} validation check(s) failed")]
    Validation { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Physics(e) => match e.root() {
                Error::KinematicallyClosed { .. } => 2,
                Error::NotConverged { .. } | Error::SeriesNotConverged { .. } => 3,
                _ => 1,
            },
            CliError::Io { .. } => 1,
            CliError::Validation { .. } => 3,
        }
    }
}

enum Cell {
    F(f64),
    I(i64),
}

struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn from_profile(p: &AngularProfile) -> Self {
        Self {
            columns: &["theta_mrad", "re_f", "im_f", "dcs"],
            rows: p
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::F(rad_to_mrad(r.theta)),
                        Cell::F(r.amplitude.re),
                        Cell::F(r.amplitude.im),
                        Cell::F(r.dcs),
                    ]
                })
                .collect(),
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.columns.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| match c {
                            // Debug gives the shortest string that parses back to the same f64
                            Cell::F(x) => format!("{x:?}"),
                            Cell::I(n) => n.to_string(),
                        })
                        .collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(name, c)| {
                                let v = match c {
                                    Cell::F(x) => json!(x),
                                    Cell::I(n) => json!(n),
                                };
                                (name.to_string(), v)
                            })
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("rows serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// Canonical argument list: every setting explicit, in `--flag=value` form.
struct Argv(Vec<String>);

impl Argv {
    fn new(command: &str) -> Self {
        Self(vec![command.to_string()])
    }

    fn push(&mut self, flag: &str, value: impl std::fmt::Display) {
        self.0.push(format!("--{flag}={value}"));
    }

    fn float(&mut self, flag: &str, value: f64) {
        self.push(flag, format!("{value:?}"));
    }

    fn energy(&mut self, e: &EnergyArgs) {
        match (e.energy_kev, e.k_au) {
            (Some(v), _) => self.float("energy-kev", v),
            (_, Some(v)) => self.float("k-au", v),
            _ => unreachable!("clap enforces the group"),
        }
    }

    fn convergence(&mut self, c: &ConvergenceArgs) {
        match (c.alpha_mrad, c.kperp_au) {
            (Some(v), _) => self.float("alpha-mrad", v),
            (_, Some(v)) => self.float("kperp-au", v),
            _ => unreachable!("clap enforces the group"),
        }
    }

    fn target(&mut self, t: &TargetArgs) {
        self.push("transition", &t.transition);
        self.float("z", t.z);
    }

    fn grid(&mut self, g: &GridArgs) {
        self.float("theta-max-mrad", g.theta_max_mrad);
        self.push("points", g.points);
    }

    fn output(&mut self, o: &OutputArgs, quad: &QuadratureConfig) {
        self.push("format", o.format.name());
        self.float("quad-tol", quad.rel_tol);
        self.push("quad-max-nodes", quad.max_nodes);
        if let Some(p) = &o.output {
            self.push("output", p.display());
        }
    }
}

fn wavenumber(e: &EnergyArgs) -> Result<f64, Error> {
    let k = match (e.energy_kev, e.k_au) {
        (Some(kev), _) => {
            if !(kev.is_finite() && kev > 0.0) {
                return Err(Error::InvalidParameter(format!("--energy-kev must be > 0, got {kev}")));
            }
            wavenumber_from_kev(kev)
        }
        (_, Some(k)) => k,
        _ => unreachable!("clap enforces the group"),
    };
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidParameter(format!("beam wavenumber must be > 0, got {k}")));
    }
    Ok(k)
}

fn transverse(k: f64, c: &ConvergenceArgs) -> Result<f64, Error> {
    match (c.alpha_mrad, c.kperp_au) {
        (Some(a), _) => Ok(BeamSpec::from_k_alpha(k, mrad_to_rad(a), 0)?.k_perp),
        (_, Some(kt)) => Ok(BeamSpec::from_k_kperp(k, kt, 0)?.k_perp),
        _ => unreachable!("clap enforces the group"),
    }
}

fn beam(b: &BeamArgs) -> Result<BeamSpec, Error> {
    let k = wavenumber(&b.energy)?;
    match (b.convergence.alpha_mrad, b.convergence.kperp_au) {
        (Some(a), _) => BeamSpec::from_k_alpha(k, mrad_to_rad(a), b.ell),
        (_, Some(kt)) => BeamSpec::from_k_kperp(k, kt, b.ell),
        _ => unreachable!("clap enforces the group"),
    }
}

fn quadrature(tol: Option<f64>, max_nodes: Option<usize>) -> Result<QuadratureConfig, Error> {
    let mut cfg = QuadratureConfig::from_env()?;
    if let Some(tol) = tol {
        cfg.rel_tol = tol;
    }
    if let Some(n) = max_nodes {
        cfg.max_nodes = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn beam_json(b: &BeamSpec) -> Value {
    json!({
        "k": b.k(),
        "k_perp": b.k_perp,
        "k_z": b.k_z,
        "alpha_rad": b.alpha(),
        "ell": b.ell,
        "energy_hartree": b.energy(),
    })
}

fn transition_json(t: &Transition) -> Value {
    json!({
        "name": t.name(),
        "z": t.z(),
        "delta_e_hartree": t.delta_e,
        "dm_atom": t.dm_atom,
    })
}

fn grid_json(g: &ThetaGrid) -> Value {
    json!({ "theta_max_rad": g.theta_max, "points": g.points, "step_rad": g.step() })
}

struct Artifact {
    table: Table,
    argv: Argv,
    parameters: Value,
    numerics: Value,
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn emit(artifact: Artifact, command: &str, out_args: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = artifact.table.render(out_args.format);
    match &out_args.output {
        None => stdout.write_all(body.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
        Some(path) => {
            write_file(path, &body)?;
            let manifest = json!({
                "tool": "vortex-born",
                "version": VERSION,
                "command": command,
                "argv": artifact.argv.0,
                "units": "hartree atomic units; angles in rad",
                "parameters": artifact.parameters,
                "numerics": artifact.numerics,
                "table": {
                    "path": path.display().to_string(),
                    "format": out_args.format.name(),
                    "columns": artifact.table.columns,
                    "rows": artifact.table.rows.len(),
                },
            });
            let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
            text.push('\n');
            write_file(&manifest_path(path), &text)
        }
    }
}

fn run_profile(a: &ProfileArgs) -> Result<Artifact, CliError> {
    let t = Transition::parse(&a.target.transition, a.target.z)?;
    let b = beam(&a.beam)?;
    let grid = ThetaGrid::from_mrad(a.grid.theta_max_mrad, a.grid.points)?;
    let quad = quadrature(a.out.quad_tol, a.out.quad_max_nodes)?;
    let p = profile(&t, &b, &grid, &quad)?;
    let mut argv = Argv::new("profile");
    argv.target(&a.target);
    argv.energy(&a.beam.energy);
    argv.convergence(&a.beam.convergence);
    argv.push("ell", a.beam.ell);
    argv.grid(&a.grid);
    argv.output(&a.out, &quad);
    Ok(Artifact {
        table: Table::from_profile(&p),
        argv,
        parameters: json!({
            "transition": transition_json(&t),
            "beam": beam_json(&b),
            "k_prime": outgoing_k(b.k(), t.delta_e)?,
            "grid": grid_json(&grid),
            "phi_prime": 0.0,
        }),
        numerics: json!({ "azimuthal_quadrature": quad }),
    })
}

fn run_central(a: &CentralArgs) -> Result<Artifact, CliError> {
    let t = Transition::parse(&a.target.transition, a.target.z)?;
    let b = beam(&a.beam)?;
    let quad = quadrature(a.out.quad_tol, a.out.quad_max_nodes)?;
    let f = f_central(&t, &b)?;
    let mut argv = Argv::new("central");
    argv.target(&a.target);
    argv.energy(&a.beam.energy);
    argv.convergence(&a.beam.convergence);
    argv.push("ell", a.beam.ell);
    argv.output(&a.out, &quad);
    Ok(Artifact {
        table: Table {
            columns: &["theta_mrad", "re_f", "im_f", "dcs"],
            rows: vec![vec![Cell::F(0.0), Cell::F(f.re), Cell::F(f.im), Cell::F(f.norm_sqr())]],
        },
        argv,
        parameters: json!({
            "transition": transition_json(&t),
            "beam": beam_json(&b),
            "k_prime": outgoing_k(b.k(), t.delta_e)?,
            "theta": 0.0,
            "phi_prime": 0.0,
        }),
        numerics: json!({ "method": "closed form" }),
    })
}

fn run_reciprocity(a: &ReciprocityArgs) -> Result<Artifact, CliError> {
    let t = Transition::parse(&a.target.transition, a.target.z)?;
    let k = wavenumber(&a.energy)?;
    let kt = transverse(k, &a.convergence)?;
    let quad = quadrature(a.out.quad_tol, a.out.quad_max_nodes)?;
    let cfg = ReducedMEConfig::default();
    let r = reciprocity_check(&t, k, kt, &cfg)?;
    let mut argv = Argv::new("reciprocity");
    argv.target(&a.target);
    argv.energy(&a.energy);
    argv.convergence(&a.convergence);
    argv.output(&a.out, &quad);
    Ok(Artifact {
        table: Table {
            columns: &["k_au", "kperp_au", "q_z_au", "lhs", "rhs", "rel_gap"],
            rows: vec![vec![Cell::F(k), Cell::F(kt), Cell::F(r.q_z), Cell::F(r.lhs), Cell::F(r.rhs), Cell::F(r.rel_gap)]],
        },
        argv,
        parameters: json!({
            "transition": transition_json(&t),
            "k": k,
            "k_transverse": kt,
            "phi_prime": 0.0,
        }),
        numerics: json!({ "reduced_matrix_element": cfg }),
    })
}

fn run_oam_weights(a: &OamWeightsArgs) -> Result<Artifact, CliError> {
    let b = beam(&a.beam)?;
    let mu_min = a.mu_min.unwrap_or(b.ell - 20);
    let mu_max = a.mu_max.unwrap_or(b.ell + 20);
    let quad = quadrature(a.out.quad_tol, a.out.quad_max_nodes)?;
    let w = displaced_oam_weights(b.ell, b.k_perp, a.r0_au, mu_min, mu_max)?;
    let mut argv = Argv::new("oam-weights");
    argv.energy(&a.beam.energy);
    argv.convergence(&a.beam.convergence);
    argv.push("ell", a.beam.ell);
    argv.float("r0-au", a.r0_au);
    argv.push("mu-min", mu_min);
    argv.push("mu-max", mu_max);
    argv.output(&a.out, &quad);
    Ok(Artifact {
        table: Table {
            columns: &["mu", "weight"],
            rows: w.iter().map(|&(mu, x)| vec![Cell::I(mu as i64), Cell::F(x)]).collect(),
        },
        argv,
        parameters: json!({
            "beam": beam_json(&b),
            "r0": a.r0_au,
            "mu_min": mu_min,
            "mu_max": mu_max,
        }),
        numerics: json!({ "method": "Bessel functions" }),
    })
}

fn run_aperture(a: &ApertureArgs) -> Result<Artifact, CliError> {
    let t = Transition::parse(&a.target.transition, a.target.z)?;
    let k = wavenumber(&a.energy)?;
    let kt_min = BeamSpec::from_k_alpha(k, mrad_to_rad(a.alpha_min_mrad), 0)?.k_perp;
    let kt_max = BeamSpec::from_k_alpha(k, mrad_to_rad(a.alpha_max_mrad), 0)?.k_perp;
    let aperture = Aperture::new(kt_min, kt_max, a.nodes)?;
    let grid = ThetaGrid::from_mrad(a.grid.theta_max_mrad, a.grid.points)?;
    let quad = quadrature(a.out.quad_tol, a.out.quad_max_nodes)?;
    let p = aperture_superpose(&t, &aperture, |_| 1.0, a.ell, k, &grid, &quad)?;
    let mut argv = Argv::new("aperture");
    argv.target(&a.target);
    argv.energy(&a.energy);
    argv.push("ell", a.ell);
    argv.float("alpha-min-mrad", a.alpha_min_mrad);
    argv.float("alpha-max-mrad", a.alpha_max_mrad);
    argv.push("nodes", a.nodes);
    argv.grid(&a.grid);
    argv.output(&a.out, &quad);
    Ok(Artifact {
        table: Table::from_profile(&p),
        argv,
        parameters: json!({
            "transition": transition_json(&t),
            "k": k,
            "ell": a.ell,
            "aperture": aperture,
            "weight": "uniform",
            "grid": grid_json(&grid),
            "phi_prime": 0.0,
        }),
        numerics: json!({ "azimuthal_quadrature": quad }),
    })
}

fn run_validate(a: &ValidateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let quad = quadrature(a.quad_tol, None)?;
    let outcomes = run_suite(&quad);
    let io = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    for c in &outcomes {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {}: {}", c.name, c.detail).map_err(io)?;
    }
    match outcomes.iter().filter(|c| !c.passed).count() {
        0 => Ok(()),
        failed => Err(CliError::Validation { failed }),
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (artifact, name, out) = match &cli.command {
        Command::Profile(a) => (run_profile(a)?, "profile", &a.out),
        Command::Central(a) => (run_central(a)?, "central", &a.out),
        Command::Reciprocity(a) => (run_reciprocity(a)?, "reciprocity", &a.out),
        Command::OamWeights(a) => (run_oam_weights(a)?, "oam-weights", &a.out),
        Command::Aperture(a) => (run_aperture(a)?, "aperture", &a.out),
        Command::Validate(a) => return run_validate(a, stdout),
    };
    emit(artifact, name, out, stdout)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::kev_to_hartree;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("vortex-born").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn profile_to_stdout() {
        let (code, out, err) = call(&[
            "profile", "--transition", "1s:2s", "--energy-kev", "120", "--alpha-mrad", "10", "--ell", "-1",
            "--theta-max-mrad", "20", "--points", "5",
        ]);
        assert_eq!(code, 0, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "theta_mrad,re_f,im_f,dcs");
        assert_eq!(lines.len(), 6);
        assert!(lines[1].starts_with("0.0,"));
        assert!(lines[5].starts_with("20.0,"));
    }

    #[test]
    fn exit_codes() {
        // neither energy flag
        assert_eq!(call(&["profile", "--transition", "1s:2s", "--alpha-mrad", "1"]).0, 1);
        // both energy flags
        assert_eq!(call(&["profile", "--transition", "1s:2s", "--energy-kev", "1", "--k-au", "2", "--alpha-mrad", "1"]).0, 1);
        assert_eq!(call(&["profile", "--transition", "1s:2s", "--k-au", "5", "--alpha-mrad", "1", "--points", "1"]).0, 1);
        assert_eq!(call(&["profile", "--transition", "1s:4f0", "--k-au", "5", "--alpha-mrad", "1"]).0, 1);
        // 1s -> 2s needs k^2 > 0.75
        let (code, _, err) = call(&["central", "--transition", "1s:2s", "--k-au", "0.5", "--alpha-mrad", "1"]);
        assert_eq!(code, 2, "{err}");
        assert!(err.contains("kinematically closed"));
        assert_eq!(call(&["--version"]).0, 0);
    }

    #[test]
    fn non_convergence_reports_angle() {
        let e = CliError::Physics(Error::AtAngle {
            theta: 0.0125,
            source: Box::new(Error::NotConverged {
                what: "azimuthal integral",
                nodes: 64,
                estimate: num_complex::Complex64::new(0.0, 0.0),
                gap: 1e-3,
            }),
        });
        assert_eq!(e.exit_code(), 3);
        let msg = e.to_string();
        assert!(msg.contains("1.25e-2") && msg.contains("gap 1e-3"), "{msg}");
    }

    #[test]
    fn central_selection_rule() {
        let (code, out, _) = call(&["central", "--transition", "1s:2p+1", "--energy-kev", "120", "--alpha-mrad", "10", "--ell", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1).unwrap(), "0.0,0.0,0.0,0.0");
    }

    #[test]
    fn json_rows() {
        let (code, out, _) = call(&["oam-weights", "--k-au", "10", "--kperp-au", "1", "--ell", "2", "--r0-au", "0", "--mu-min", "1", "--mu-max", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1]["mu"], json!(2));
        assert_eq!(rows[1]["weight"], json!(1.0));
        assert_eq!(rows[0]["weight"], json!(0.0));
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(manifest_path(Path::new("a/b.csv")), PathBuf::from("a/b.csv.manifest.json"));
    }

    #[test]
    fn unit_conversions_used_by_flags() {
        assert_eq!(mrad_to_rad(1.0), 1e-3);
        assert!((kev_to_hartree(0.027_211_386_245_988) - 1.0).abs() < 1e-15);
    }
}
