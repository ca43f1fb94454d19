//! `curvature`: per-point table of Euclidean and conformal curvature data.

use radialgeo_core::conformal::transform;
use radialgeo_core::metric::ConformalFactor;
use radialgeo_core::surface::{euclidean_curvatures, jet, SurfaceSpec};

use crate::output::CsvBuilder;

pub const HEADER: [&str; 19] = [
    "u", "v", "E", "G", "e", "f", "g", "H", "K", "t", "nu", "lambda1t", "lambda2t", "Ht", "KEt",
    "Kt", "W1", "W2", "error",
];

pub fn run(
    factor: &ConformalFactor<f64>,
    surface: &SurfaceSpec<f64>,
    (nu, nv): (usize, usize),
) -> String {
    let mut csv = CsvBuilder::new(&HEADER);
    for (u, v) in surface.domain.grid(nu, nv) {
        let point = (|| -> radialgeo_core::Result<[f64; 18]> {
            let ec = euclidean_curvatures(&jet(surface, u, v)?)?;
            let cc = transform(factor, &ec)?;
            Ok([
                u, v, ec.E, ec.G, ec.e, ec.f, ec.g, ec.H, ec.K, ec.t, ec.nu, cc.lambda1,
                cc.lambda2, cc.mean, cc.k_ext, cc.k, cc.w1, cc.w2,
            ])
        })();
        match point {
            Ok(values) => csv.row(&values),
            Err(err) => csv.error_row(&[u, v], &err.to_string()),
        }
    }
    csv.finish()
}
