//! Command line front end: curvature tables, geodesic trajectories,
//! rotation-surface roots and profiles, mesh export, and the verification
//! battery.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! usage or configuration errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use radialgeo_core::config::{factor_from_str, SurfaceConfig};
use radialgeo_core::metric::ConformalFactor;
use radialgeo_core::surface::SurfaceSpec;

mod output;
mod commands {
    pub mod curvature;
    pub mod geodesic;
    pub mod mesh;
    pub mod rotation;
    pub mod verify;
}

#[derive(Parser)]
#[command(
    name = "radialgeo",
    version,
    about = "Curvature, geodesics and verification for radial conformally flat 3-spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification battery and emit a JSON report
    Verify(VerifyArgs),
    /// Per-point Euclidean and conformal curvature table (CSV)
    Curvature(CurvatureArgs),
    /// Integrate a geodesic and export the trajectory (CSV)
    Geodesic(GeodesicArgs),
    /// Sphere radii for a prescribed extrinsic curvature, sweeps and
    /// profile integration (CSV)
    Rotation(RotationArgs),
    /// Export a surface mesh (OBJ) plus a per-vertex curvature sidecar (CSV)
    Mesh(MeshArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Conformal factor: euclidean | radial | exp | custom:poly:c0,c1,...
    #[arg(long)]
    factor: Option<String>,
    /// JSON config file; explicit flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Seed for the randomized checks
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Surface JSON (inline or @file)
    #[arg(long)]
    surface: Option<String>,
    /// Sample grid, e.g. 10x10 (cell centers, u-major rows)
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args)]
struct GeodesicArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Start point, e.g. 1,0,0
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Initial direction (renormalized to unit g-speed), e.g. 0,1,0
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Arclength to integrate
    #[arg(long)]
    length: Option<f64>,
    /// Integrator step
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args)]
struct RotationArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Prescribed extrinsic curvature
    #[arg(long)]
    c0: Option<f64>,
    /// Log-spaced curvature sweep lo:hi:n
    #[arg(long)]
    sweep: Option<String>,
    /// Integrate the profile ODE from phi0[:dphi0] at u = 0 instead of
    /// solving for radii
    #[arg(long)]
    profile_start: Option<String>,
    /// Half-width of the profile integration interval
    #[arg(long)]
    span: Option<f64>,
    /// Profile integrator step
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args)]
struct MeshArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Surface JSON (inline or @file)
    #[arg(long)]
    surface: Option<String>,
    /// Vertex grid, e.g. 24x24 (nodes including the domain edges)
    #[arg(long)]
    grid: Option<String>,
    /// Point map applied before export: none | psi | inversion
    #[arg(long)]
    map: Option<String>,
}

/// Keys accepted in the JSON config file; flags override.
#[derive(Deserialize, Default)]
pub struct FileConfig {
    pub factor: Option<String>,
    pub surface: Option<serde_json::Value>,
    pub grid: Option<String>,
    pub seed: Option<u64>,
    pub c0: Option<f64>,
    pub sweep: Option<String>,
    pub profile_start: Option<String>,
    pub span: Option<f64>,
    pub step: Option<f64>,
    pub length: Option<f64>,
    pub start: Option<String>,
    pub direction: Option<String>,
    pub map: Option<String>,
    pub out: Option<String>,
}

pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn load_config(path: &Option<PathBuf>) -> CliResult<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| UsageError(format!("config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("config {}: {e}", p.display())))
        }
    }
}

fn resolve_factor(flag: &Option<String>, cfg: &FileConfig) -> CliResult<ConformalFactor<f64>> {
    let name = flag
        .clone()
        .or_else(|| cfg.factor.clone())
        .unwrap_or_else(|| "radial".into());
    factor_from_str(&name).map_err(UsageError)
}

fn resolve_surface(flag: &Option<String>, cfg: &FileConfig) -> CliResult<SurfaceSpec<f64>> {
    let config: SurfaceConfig = match (flag, &cfg.surface) {
        (Some(text), _) => {
            let text = if let Some(path) = text.strip_prefix('@') {
                fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?
            } else {
                text.clone()
            };
            SurfaceConfig::from_json(&text).map_err(UsageError)?
        }
        (None, Some(value)) => serde_json::from_value(value.clone())
            .map_err(|e| UsageError(format!("config surface: {e}")))?,
        (None, None) => return Err(UsageError("no surface given (--surface or config)".into())),
    };
    config.build().map_err(UsageError)
}

fn parse_grid(
    flag: &Option<String>,
    cfg: &FileConfig,
    default: (usize, usize),
) -> CliResult<(usize, usize)> {
    let text = match flag.clone().or_else(|| cfg.grid.clone()) {
        None => return Ok(default),
        Some(t) => t,
    };
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| UsageError(format!("grid '{text}' is not NxM")))?;
    let nu: usize = a
        .trim()
        .parse()
        .map_err(|e| UsageError(format!("grid: {e}")))?;
    let nv: usize = b
        .trim()
        .parse()
        .map_err(|e| UsageError(format!("grid: {e}")))?;
    if nu == 0 || nv == 0 {
        return Err(UsageError("grid sizes must be positive".into()));
    }
    Ok((nu, nv))
}

fn parse_vec3(text: &str) -> CliResult<radialgeo_core::Vec3<f64>> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| UsageError(format!("'{text}': {e}")))?;
    if parts.len() != 3 {
        return Err(UsageError(format!("'{text}' is not x,y,z")));
    }
    Ok(radialgeo_core::Vec3::new(parts[0], parts[1], parts[2]))
}

/// Write to `--out` (flag or config) or stdout.
fn emit(out: &Option<PathBuf>, cfg: &FileConfig, payload: &str) -> CliResult<()> {
    let path = out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&p, payload)?;
        }
        None => {
            std::io::stdout().write_all(payload.as_bytes())?;
        }
    }
    Ok(())
}

fn sidecar_path(obj: &Path) -> PathBuf {
    obj.with_extension("csv")
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.cmd {
        Cmd::Verify(args) => {
            let cfg = load_config(&args.common.config)?;
            let seed = args.seed.or(cfg.seed).unwrap_or(42);
            let (json, all_pass) = commands::verify::run(seed)?;
            emit(&args.common.out, &cfg, &json)?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Curvature(args) => {
            let cfg = load_config(&args.common.config)?;
            let factor = resolve_factor(&args.common.factor, &cfg)?;
            let surface = resolve_surface(&args.surface, &cfg)?;
            let grid = parse_grid(&args.grid, &cfg, (10, 10))?;
            let csv = commands::curvature::run(&factor, &surface, grid);
            emit(&args.common.out, &cfg, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Geodesic(args) => {
            let cfg = load_config(&args.common.config)?;
            let factor = resolve_factor(&args.common.factor, &cfg)?;
            let start = args
                .start
                .clone()
                .or_else(|| cfg.start.clone())
                .ok_or_else(|| UsageError("geodesic needs --start x,y,z".into()))?;
            let direction = args
                .direction
                .clone()
                .or_else(|| cfg.direction.clone())
                .ok_or_else(|| UsageError("geodesic needs --direction x,y,z".into()))?;
            let length = args.length.or(cfg.length).unwrap_or(1.0);
            let step = args.step.or(cfg.step).unwrap_or(1e-3);
            let csv = commands::geodesic::run(
                &factor,
                parse_vec3(&start)?,
                parse_vec3(&direction)?,
                length,
                step,
            )?;
            emit(&args.common.out, &cfg, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rotation(args) => {
            let cfg = load_config(&args.common.config)?;
            let factor = resolve_factor(&args.common.factor, &cfg)?;
            let profile_start = args
                .profile_start
                .clone()
                .or_else(|| cfg.profile_start.clone());
            let csv = if let Some(start) = profile_start {
                let c0 = args.c0.or(cfg.c0).unwrap_or(0.0);
                let span = args.span.or(cfg.span).unwrap_or(0.9);
                let step = args.step.or(cfg.step).unwrap_or(1e-3);
                commands::rotation::run_profile(&factor, c0, &start, span, step)?
            } else if let Some(sweep) = args.sweep.clone().or_else(|| cfg.sweep.clone()) {
                commands::rotation::run_sweep(&factor, &sweep)?
            } else {
                let c0 = args.c0.or(cfg.c0).ok_or_else(|| {
                    UsageError("rotation needs --c0, --sweep or --profile-start".into())
                })?;
                commands::rotation::run_single(&factor, c0)
            };
            emit(&args.common.out, &cfg, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Mesh(args) => {
            let cfg = load_config(&args.common.config)?;
            let factor = resolve_factor(&args.common.factor, &cfg)?;
            let surface = resolve_surface(&args.surface, &cfg)?;
            let grid = parse_grid(&args.grid, &cfg, (24, 24))?;
            let map = args
                .map
                .clone()
                .or_else(|| cfg.map.clone())
                .unwrap_or_else(|| "none".into());
            let out = args
                .common
                .out
                .clone()
                .or_else(|| cfg.out.as_ref().map(PathBuf::from))
                .ok_or_else(|| UsageError("mesh needs --out <path.obj>".into()))?;
            let (obj, sidecar) = commands::mesh::run(&factor, &surface, grid, &map)?;
            if let Some(parent) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&out, obj)?;
            fs::write(sidecar_path(&out), sidecar)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
