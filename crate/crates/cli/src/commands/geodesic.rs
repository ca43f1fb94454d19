//! `geodesic`: integrate one trajectory and export it.

use radialgeo_core::geodesic::{g_speed, geodesic_rhs, integrate, GeodesicState};
use radialgeo_core::metric::ConformalFactor;
use radialgeo_core::Vec3;

use crate::output::CsvBuilder;
use crate::{CliResult, UsageError};

pub const HEADER: [&str; 7] = ["s", "x1", "x2", "x3", "gspeed", "residual", "error"];

pub fn run(
    factor: &ConformalFactor<f64>,
    start: Vec3<f64>,
    direction: Vec3<f64>,
    length: f64,
    step: f64,
) -> CliResult<String> {
    let traj = integrate(
        factor,
        GeodesicState {
            x: start,
            v: direction,
        },
        length,
        step,
    )
    .map_err(|e| UsageError(e.to_string()))?;

    let mut csv = CsvBuilder::new(&HEADER);
    let pts = &traj.points;
    let h = traj.step;
    for (idx, p) in pts.iter().enumerate() {
        let speed = g_speed(factor, &p.state).unwrap_or(f64::NAN);
        // discrete residual of the geodesic equation from neighbor points
        let residual = if idx > 0 && idx + 1 < pts.len() {
            let second = (pts[idx + 1].state.x - p.state.x * 2.0 + pts[idx - 1].state.x) / (h * h);
            match geodesic_rhs(factor, &p.state) {
                Ok(acc) => (second - acc).norm(),
                Err(_) => f64::NAN,
            }
        } else {
            0.0
        };
        let values = [
            p.s,
            p.state.x[0],
            p.state.x[1],
            p.state.x[2],
            speed,
            residual,
        ];
        if traj.truncated && idx + 1 == pts.len() {
            csv.flagged_row(&values, "domain exit: trajectory truncated");
        } else {
            csv.row(&values);
        }
    }
    Ok(csv.finish())
}
