//! `mesh`: OBJ export of a surface grid with a per-vertex curvature
//! sidecar. Degenerate vertices are kept (as flagged placeholder rows) so
//! grid indexing stays intact; faces touching them are dropped.

use std::fmt::Write as _;

use radialgeo_core::conformal::transform;
use radialgeo_core::metric::ConformalFactor;
use radialgeo_core::radial_model::psi;
use radialgeo_core::surface::{euclidean_curvatures, jet, SurfaceSpec};

use crate::output::CsvBuilder;
use crate::{CliResult, UsageError};

const CURV_COLS: [&str; 12] = [
    "E", "G", "H", "K", "t", "nu", "Ht", "KEt", "Kt", "W1", "W2", "error",
];

struct Vertex {
    position: [f64; 3],
    row: Result<Vec<f64>, String>,
    /// extra leading columns: (p1, p2, p3, h) for the product chart
    chart: Option<[f64; 4]>,
}

pub fn run(
    factor: &ConformalFactor<f64>,
    surface: &SurfaceSpec<f64>,
    (nu, nv): (usize, usize),
    map: &str,
) -> CliResult<(String, String)> {
    if nu < 2 || nv < 2 {
        return Err(UsageError("mesh grid needs at least 2x2 nodes".into()));
    }
    let spec = match map {
        "none" | "psi" => surface.clone(),
        "inversion" => surface.clone().inverted(),
        other => return Err(UsageError(format!("unknown map '{other}'"))),
    };

    let nodes = spec.domain.nodes(nu, nv);
    let mut vertices: Vec<(f64, f64, Vertex)> = Vec::with_capacity(nodes.len());
    for &(u, v) in &nodes {
        let vertex = (|| -> radialgeo_core::Result<Vertex> {
            let j = jet(&spec, u, v)?;
            let ec = euclidean_curvatures(&j)?;
            let cc = transform(factor, &ec)?;
            let chart = if map == "psi" {
                let pp = psi(j.x)?;
                Some([pp.p[0], pp.p[1], pp.p[2], pp.h])
            } else {
                None
            };
            Ok(Vertex {
                position: j.x.as_f64(),
                row: Ok(vec![
                    ec.E, ec.G, ec.H, ec.K, ec.t, ec.nu, cc.mean, cc.k_ext, cc.k, cc.w1, cc.w2,
                ]),
                chart,
            })
        })();
        let vertex = vertex.unwrap_or_else(|err| Vertex {
            position: [0.0; 3],
            row: Err(err.to_string()),
            chart: None,
        });
        vertices.push((u, v, vertex));
    }

    // OBJ: vertices in node order (u-major), quads triangulated, 1-indexed
    let mut obj = String::new();
    writeln!(
        obj,
        "# radialgeo mesh: {} under factor {}",
        spec.name(),
        factor.name()
    )
    .ok();
    writeln!(obj, "# vertices: {} ({} x {})", vertices.len(), nu, nv).ok();
    for (_, _, vx) in &vertices {
        writeln!(
            obj,
            "v {} {} {}",
            vx.position[0], vx.position[1], vx.position[2]
        )
        .ok();
    }
    let ok = |i: usize, j: usize| vertices[i * nv + j].2.row.is_ok();
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            if ok(i, j) && ok(i + 1, j) && ok(i + 1, j + 1) && ok(i, j + 1) {
                let a = i * nv + j + 1;
                let b = (i + 1) * nv + j + 1;
                let c = (i + 1) * nv + j + 2;
                let d = i * nv + j + 2;
                writeln!(obj, "f {a} {b} {c}").ok();
                writeln!(obj, "f {a} {c} {d}").ok();
            }
        }
    }

    // sidecar CSV
    let mut header: Vec<&str> = vec!["u", "v"];
    if map == "psi" {
        header.extend_from_slice(&["p1", "p2", "p3", "h"]);
    } else {
        header.extend_from_slice(&["x1", "x2", "x3"]);
    }
    header.extend_from_slice(&CURV_COLS);
    let mut csv = CsvBuilder::new(&header);
    for (u, v, vx) in &vertices {
        match &vx.row {
            Ok(values) => {
                let mut all = vec![*u, *v];
                match &vx.chart {
                    Some(chart) => all.extend_from_slice(chart),
                    None => all.extend_from_slice(&vx.position),
                }
                all.extend_from_slice(values);
                csv.row(&all);
            }
            Err(message) => csv.error_row(&[*u, *v], message),
        }
    }
    Ok((obj, csv.finish()))
}
