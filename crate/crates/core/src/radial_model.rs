//! The `F = sqrt(t)` space as a model of `S^2 x R`.
//!
//! `psi(x) = (x/|x|, log |x|)` identifies `R^3 \ {0}` with the product of
//! the unit round sphere and the line; its differential is closed-form, so
//! isometry residuals sit at rounding level. The inversion
//! `x -> x / <x, x>` is an isometry of this model (and generically of no
//! other radial factor), fixing the unit sphere pointwise.

use crate::error::{GeomError, Result};
use crate::metric::{metric_inner, ConformalFactor, ORIGIN_GUARD};
use crate::scalar::Real;
use crate::surface::SurfaceSpec;
use crate::vec3::Vec3;

/// Point of `S^2 x R`: unit direction plus height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductPoint<T> {
    pub p: Vec3<T>,
    pub h: T,
}

/// `psi(x) = (x/|x|, log |x|)`.
pub fn psi<T: Real>(x: Vec3<T>) -> Result<ProductPoint<T>> {
    let r = x.norm();
    if r <= T::of(ORIGIN_GUARD) {
        return Err(GeomError::Domain(format!(
            "|x| = {r} too small for the product chart"
        )));
    }
    Ok(ProductPoint {
        p: x / r,
        h: r.ln(),
    })
}

/// Inverse chart: `(p, h) -> e^h p`.
pub fn psi_inv<T: Real>(pp: &ProductPoint<T>) -> Vec3<T> {
    pp.p * pp.h.exp()
}

/// Differential of `psi`: tangent part on the sphere factor and height
/// derivative, both in closed form.
pub fn psi_differential<T: Real>(x: Vec3<T>, v: Vec3<T>) -> Result<(Vec3<T>, T)> {
    let r2 = x.norm_sq();
    let r = r2.sqrt();
    if r <= T::of(ORIGIN_GUARD) {
        return Err(GeomError::Domain(
            "differential of psi at the origin".into(),
        ));
    }
    let xv = x.dot(v);
    let sphere_part = v / r - x * (xv / (r2 * r));
    Ok((sphere_part, xv / r2))
}

/// `| <v,w>_g(x) - ( <dpsi v, dpsi w>_{S^2} + dh(v) dh(w) ) |` for the
/// `sqrt(t)` metric; identically zero for the true isometry.
pub fn psi_isometry_residual<T: Real>(x: Vec3<T>, v: Vec3<T>, w: Vec3<T>) -> Result<T> {
    let lhs = v.dot(w) / x.norm_sq();
    let (sv, hv) = psi_differential(x, v)?;
    let (sw, hw) = psi_differential(x, w)?;
    Ok((lhs - (sv.dot(sw) + hv * hw)).abs())
}

/// `x -> x / <x, x>`.
pub fn invert_point<T: Real>(x: Vec3<T>) -> Result<Vec3<T>> {
    let t = x.norm_sq();
    if t <= T::of(ORIGIN_GUARD * ORIGIN_GUARD) {
        return Err(GeomError::Domain("inversion at the origin".into()));
    }
    Ok(x / t)
}

/// Differential of the inversion at `x`.
pub fn inversion_differential<T: Real>(x: Vec3<T>, v: Vec3<T>) -> Result<Vec3<T>> {
    let t = x.norm_sq();
    if t <= T::of(ORIGIN_GUARD * ORIGIN_GUARD) {
        return Err(GeomError::Domain(
            "inversion differential at the origin".into(),
        ));
    }
    Ok(v / t - x * (T::of(2.0) * x.dot(v) / (t * t)))
}

/// `| <v,w>_g(x) - <df v, df w>_g(f(x)) |` for the inversion `f`; zero for
/// the `sqrt(t)` factor, nonzero for generic factors away from the unit
/// sphere.
pub fn inversion_isometry_residual<T: Real>(
    factor: &ConformalFactor<T>,
    x: Vec3<T>,
    v: Vec3<T>,
    w: Vec3<T>,
) -> Result<T> {
    let lhs = metric_inner(factor, x, v, w)?;
    let y = invert_point(x)?;
    let dv = inversion_differential(x, v)?;
    let dw = inversion_differential(x, w)?;
    let rhs = metric_inner(factor, y, dv, dw)?;
    Ok((lhs - rhs).abs())
}

/// Curvature battery of the origin sphere of radius `R` in the `sqrt(t)`
/// model, maxima over a parameter grid.
#[derive(Clone, Copy, Debug)]
pub struct SphereReport<T> {
    /// max `|K~_E|`; zero for totally geodesic spheres.
    pub k_ext: T,
    /// Gauss curvature at the point furthest from 1.
    pub gauss: T,
    /// max `|H~|`; zero for minimal spheres.
    pub mean: T,
    /// max `|lambda~_i|`, the totally-geodesic residual.
    pub totally_geodesic: T,
}

pub fn sphere_report<T: Real>(radius: T, nu: usize, nv: usize) -> Result<SphereReport<T>> {
    let factor = ConformalFactor::RadialModel;
    let spec = SurfaceSpec::sphere_origin(radius);
    let mut k_ext = T::zero();
    let mut mean = T::zero();
    let mut tg = T::zero();
    let mut gauss = T::one();
    let mut gauss_dev = T::zero();
    for (u, v) in spec.domain.grid(nu, nv) {
        let ec = crate::surface::euclidean_curvatures(&crate::surface::jet(&spec, u, v)?)?;
        let cc = crate::conformal::transform(&factor, &ec)?;
        k_ext = k_ext.max(cc.k_ext.abs());
        mean = mean.max(cc.mean.abs());
        tg = tg.max(cc.lambda1.abs().max(cc.lambda2.abs()));
        let dev = (cc.k - T::one()).abs();
        if dev >= gauss_dev {
            gauss_dev = dev;
            gauss = cc.k;
        }
    }
    Ok(SphereReport {
        k_ext,
        gauss,
        mean,
        totally_geodesic: tg,
    })
}
