//! Differential geometry of radial conformally flat 3-spaces.
//!
//! The ambient space is `R^3` carrying the conformal metric
//! `g_ij = delta_ij / F(t)^2`, where `t = x1^2 + x2^2 + x3^2` and `F` is a
//! radial conformal factor. Three factors get first-class treatment:
//!
//! * `Euclidean`: `F = 1`, the flat metric;
//! * `RadialModel`: `F = sqrt(t)` on `R^3 \ {0}`, isometric to `S^2 x R`;
//! * `ExpModel`: `F = exp(-t)`.
//!
//! The crate evaluates the metric, its Christoffel symbols and sectional
//! curvatures, integrates geodesics, computes Euclidean and conformal
//! curvature data of immersed surfaces, solves rotation-surface problems
//! with prescribed extrinsic curvature, and exposes the isometry between
//! the `F = sqrt(t)` space and the product `S^2 x R`.
//!
//! Everything is generic over the floating scalar through [`Real`];
//! concrete `f64` (and a few `f32`) aliases live at the crate root.

pub mod config;
pub mod conformal;
pub mod error;
pub mod geodesic;
pub mod jet;
pub mod metric;
pub mod radial_model;
pub mod rotation;
pub mod scalar;
pub mod surface;
pub mod vec3;
pub mod verify;
pub mod weierstrass;

pub use error::{GeomError, Result};
pub use scalar::Real;
pub use vec3::Vec3;

/// Double-precision aliases; these are what the CLI and most tests use.
pub type Vec3f64 = Vec3<f64>;
pub type Jet2f64 = jet::Jet2<f64>;
pub type FactorF64 = metric::ConformalFactor<f64>;
pub type ChristoffelF64 = metric::ChristoffelTable<f64>;
pub type SurfaceF64 = surface::SurfaceSpec<f64>;
pub type SurfaceJetF64 = surface::SurfaceJet<f64>;
pub type EuclideanCurvatureF64 = surface::EuclideanCurvature<f64>;
pub type ConformalCurvatureF64 = conformal::ConformalCurvature<f64>;
pub type GeodesicStateF64 = geodesic::GeodesicState<f64>;
pub type TrajectoryF64 = geodesic::Trajectory<f64>;
pub type RotationProfileF64 = rotation::RotationProfile<f64>;
pub type ProductPointF64 = radial_model::ProductPoint<f64>;

/// Single-precision aliases for callers that trade accuracy for size.
pub type Vec3f32 = Vec3<f32>;
pub type Jet2f32 = jet::Jet2<f32>;
pub type FactorF32 = metric::ConformalFactor<f32>;
pub type SurfaceF32 = surface::SurfaceSpec<f32>;
