//! `rotation`: sphere radii for prescribed extrinsic curvature, sweeps,
//! and profile integration.

use radialgeo_core::metric::ConformalFactor;
use radialgeo_core::rotation::{radius_for_curvature, solve_profile};

use crate::output::{num, sanitize, CsvBuilder};
use crate::{CliResult, UsageError};

pub const ROOTS_HEADER: [&str; 5] = ["c0", "R_roots", "w_min", "brackets_found", "error"];
pub const PROFILE_HEADER: [&str; 6] = ["u", "phi", "dphi", "ddphi", "residual", "error"];

fn root_row(csv: &mut CsvBuilder, factor: &ConformalFactor<f64>, c0: f64) {
    match radius_for_curvature(factor, c0) {
        Ok(roots) => {
            let joined = roots
                .roots
                .iter()
                .map(|r| num(*r))
                .collect::<Vec<_>>()
                .join(";");
            csv.raw_row(&[
                num(c0),
                joined,
                num(roots.w_min),
                roots.brackets.to_string(),
                String::new(),
            ]);
        }
        Err(err) => {
            csv.raw_row(&[
                num(c0),
                String::new(),
                String::new(),
                "0".into(),
                sanitize(&err.to_string()),
            ]);
        }
    }
}

pub fn run_single(factor: &ConformalFactor<f64>, c0: f64) -> String {
    let mut csv = CsvBuilder::new(&ROOTS_HEADER);
    root_row(&mut csv, factor, c0);
    csv.finish()
}

/// `lo:hi:n` log-spaced curvature sweep.
pub fn run_sweep(factor: &ConformalFactor<f64>, sweep: &str) -> CliResult<String> {
    let parts: Vec<&str> = sweep.split(':').collect();
    if parts.len() != 3 {
        return Err(UsageError(format!("sweep '{sweep}' is not lo:hi:n")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|e| UsageError(format!("sweep lo: {e}")))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|e| UsageError(format!("sweep hi: {e}")))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|e| UsageError(format!("sweep n: {e}")))?;
    if lo <= 0.0 || hi <= lo || n < 2 {
        return Err(UsageError("sweep needs 0 < lo < hi and n >= 2".into()));
    }
    let mut csv = CsvBuilder::new(&ROOTS_HEADER);
    for idx in 0..n {
        let frac = idx as f64 / (n - 1) as f64;
        let c0 = lo * (hi / lo).powf(frac);
        root_row(&mut csv, factor, c0);
    }
    Ok(csv.finish())
}

/// Integrate the profile ODE from `phi0[:dphi0]` at `u = 0`.
pub fn run_profile(
    factor: &ConformalFactor<f64>,
    c0: f64,
    start: &str,
    span: f64,
    step: f64,
) -> CliResult<String> {
    let (phi0, dphi0) = match start.split_once(':') {
        Some((a, b)) => (
            a.parse::<f64>()
                .map_err(|e| UsageError(format!("phi0: {e}")))?,
            b.parse::<f64>()
                .map_err(|e| UsageError(format!("dphi0: {e}")))?,
        ),
        None => (
            start
                .parse::<f64>()
                .map_err(|e| UsageError(format!("phi0: {e}")))?,
            0.0,
        ),
    };
    let mut csv = CsvBuilder::new(&PROFILE_HEADER);
    match solve_profile(factor, c0, 0.0, phi0, dphi0, span, step) {
        Ok(sol) => {
            for idx in 0..sol.u.len() {
                let residual = radialgeo_core::rotation::extrinsic_residual_raw(
                    factor,
                    sol.u[idx],
                    sol.phi[idx],
                    sol.dphi[idx],
                    sol.ddphi[idx],
                    c0,
                )
                .unwrap_or(f64::NAN);
                csv.row(&[
                    sol.u[idx],
                    sol.phi[idx],
                    sol.dphi[idx],
                    sol.ddphi[idx],
                    residual,
                ]);
            }
        }
        Err(err) => csv.error_row(&[0.0, phi0, dphi0], &err.to_string()),
    }
    Ok(csv.finish())
}
