//! JSON descriptions of surfaces and textual factor specs, shared by the
//! CLI and by experiment files.
//!
//! A surface is the object `{"name": ..., "params": {...}, "domain":
//! [u0, u1, v0, v1]}`; the domain is optional and defaults per catalog
//! entry. `inverted` nests the inner surface under `params.inner`.
//! Factors parse from `euclidean | radial | exp | custom:poly:c0,c1,...`,
//! the latter being the polynomial `h(t) = c0 + c1 t + ...` with exact
//! derivatives.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::metric::ConformalFactor;
use crate::scalar::Real;
use crate::surface::{Domain, SurfaceKind, SurfaceSpec};
use crate::vec3::Vec3;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub params: serde_json::Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 4]>,
}

fn param_f64(params: &serde_json::Map<String, Value>, key: &str) -> Result<f64, String> {
    params
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing or non-numeric parameter '{key}'"))
}

fn param_vec3<T: Real>(
    params: &serde_json::Map<String, Value>,
    key: &str,
) -> Result<Vec3<T>, String> {
    let arr = params
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing parameter '{key}' (expected [x, y, z])"))?;
    if arr.len() != 3 {
        return Err(format!("parameter '{key}' must have three components"));
    }
    let mut out = [0.0; 3];
    for (slot, value) in out.iter_mut().zip(arr) {
        *slot = value
            .as_f64()
            .ok_or_else(|| format!("non-numeric component in '{key}'"))?;
    }
    Ok(Vec3::from_f64(out))
}

impl SurfaceConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("surface JSON: {e}"))
    }

    /// Build the typed surface. Catalog names only; profile and custom
    /// surfaces are code-level constructions.
    pub fn build<T: Real>(&self) -> Result<SurfaceSpec<T>, String> {
        let mut spec = match self.name.as_str() {
            "sphere_origin" => {
                SurfaceSpec::sphere_origin(T::of(param_f64(&self.params, "radius")?))
            }
            "sphere" => SurfaceSpec::sphere(
                param_vec3(&self.params, "center")?,
                T::of(param_f64(&self.params, "radius")?),
            ),
            "plane" => SurfaceSpec::plane(param_vec3(&self.params, "normal")?),
            "cone" => SurfaceSpec::cone(T::of(param_f64(&self.params, "slope")?)),
            "catenoid" => SurfaceSpec::catenoid(),
            "helicoid" => SurfaceSpec::helicoid(),
            "enneper" => SurfaceSpec::enneper(),
            "inverted" => {
                let inner_value = self
                    .params
                    .get("inner")
                    .ok_or("'inverted' needs params.inner")?;
                let inner: SurfaceConfig = serde_json::from_value(inner_value.clone())
                    .map_err(|e| format!("params.inner: {e}"))?;
                inner.build::<T>()?.inverted()
            }
            other => return Err(format!("unknown surface '{other}'")),
        };
        if let Some(d) = self.domain {
            if d[0] >= d[1] || d[2] >= d[3] {
                return Err(format!("degenerate domain {d:?}"));
            }
            spec.domain = Domain::from_f64(d);
        }
        Ok(spec)
    }
}

/// Config description of a catalog surface; `None` for profile, custom and
/// generator-backed kinds that have no JSON form.
pub fn describe<T: Real>(spec: &SurfaceSpec<T>) -> Option<SurfaceConfig> {
    let mut params = serde_json::Map::new();
    let name = match &spec.kind {
        SurfaceKind::SphereOrigin { radius } => {
            params.insert("radius".into(), radius.as_f64().into());
            "sphere_origin"
        }
        SurfaceKind::Sphere { center, radius } => {
            params.insert("center".into(), Value::from(center.as_f64().to_vec()));
            params.insert("radius".into(), radius.as_f64().into());
            "sphere"
        }
        SurfaceKind::Plane { normal } => {
            params.insert("normal".into(), Value::from(normal.as_f64().to_vec()));
            "plane"
        }
        SurfaceKind::Cone { slope } => {
            params.insert("slope".into(), slope.as_f64().into());
            "cone"
        }
        SurfaceKind::Catenoid => "catenoid",
        SurfaceKind::Helicoid => "helicoid",
        SurfaceKind::Enneper => "enneper",
        SurfaceKind::Inverted { inner } => {
            let inner_cfg = describe(inner)?;
            params.insert("inner".into(), serde_json::to_value(inner_cfg).ok()?);
            "inverted"
        }
        _ => return None,
    };
    Some(SurfaceConfig {
        name: name.into(),
        params,
        domain: Some(spec.domain.as_f64()),
    })
}

/// Parse `euclidean | radial | exp | custom:poly:c0,c1,...`.
pub fn factor_from_str<T: Real>(text: &str) -> Result<ConformalFactor<T>, String> {
    match text {
        "euclidean" => Ok(ConformalFactor::Euclidean),
        "radial" => Ok(ConformalFactor::RadialModel),
        "exp" => Ok(ConformalFactor::ExpModel),
        _ => {
            let rest = text
                .strip_prefix("custom:poly:")
                .ok_or_else(|| format!("unknown factor '{text}'"))?;
            let coeffs: Vec<f64> = rest
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|e| format!("'{c}': {e}")))
                .collect::<Result<_, _>>()?;
            if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0.0) {
                return Err("polynomial factor needs a nonzero coefficient".into());
            }
            Ok(polynomial_factor(&coeffs))
        }
    }
}

/// `h(t) = c0 + c1 t + c2 t^2 + ...` with exact first and second
/// derivatives.
pub fn polynomial_factor<T: Real>(coeffs: &[f64]) -> ConformalFactor<T> {
    let coeffs: Vec<f64> = coeffs.to_vec();
    let label = coeffs
        .iter()
        .map(|c| format!("{c}"))
        .collect::<Vec<_>>()
        .join(",");
    ConformalFactor::custom(format!("poly:{label}"), move |t: T| {
        let mut h = T::zero();
        let mut hp = T::zero();
        let mut hpp = T::zero();
        // Horner, highest degree first
        for (k, &c) in coeffs.iter().enumerate().rev() {
            let c = T::of(c);
            let kf = T::of(k as f64);
            h = h * t + c;
            if k >= 1 {
                hp = hp * t + c * kf;
            }
            if k >= 2 {
                hpp = hpp * t + c * kf * (kf - T::one());
            }
        }
        (h, hp, hpp)
    })
}
