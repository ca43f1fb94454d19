//! Geodesics of the radial conformal metric: right-hand side in radial
//! closed form, fixed-step fourth-order integration, and residual checks
//! for sampled curves.

use crate::error::{GeomError, Result};
use crate::metric::{christoffel, metric_inner, ConformalFactor};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Ambient position and velocity of a curve point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicState<T> {
    pub x: Vec3<T>,
    pub v: Vec3<T>,
}

/// Position, velocity and acceleration sample of a twice-differentiable
/// curve, used by [`geodesic_residual`].
#[derive(Clone, Copy, Debug)]
pub struct CurveSample<T> {
    pub x: Vec3<T>,
    pub v: Vec3<T>,
    pub a: Vec3<T>,
}

/// `|v|_g = |v| / F(<x, x>)`.
pub fn g_speed<T: Real>(factor: &ConformalFactor<T>, state: &GeodesicState<T>) -> Result<T> {
    Ok(metric_inner(factor, state.x, state.v, state.v)?.sqrt())
}

/// Geodesic acceleration in radial closed form; a geodesic satisfies
/// `x'' = geodesic_rhs(x, x')`. Agrees with minus the Christoffel
/// contraction of the general equation to rounding, which the tests pin.
pub fn geodesic_rhs<T: Real>(
    factor: &ConformalFactor<T>,
    state: &GeodesicState<T>,
) -> Result<Vec3<T>> {
    let (h, hp, _) = factor.eval_at(state.x)?;
    let ratio = hp / h;
    let (two, four) = (T::of(2.0), T::of(4.0));
    let speed2 = state.v.norm_sq();
    let xv = state.x.dot(state.v);
    let mut acc = Vec3::zero();
    for k in 0..3 {
        let xk = state.x[k];
        let vk = state.v[k];
        acc.0[k] =
            -(two * xk * ratio) * (speed2 - two * vk * vk) + four * ratio * vk * (xv - xk * vk);
    }
    Ok(acc)
}

/// Same acceleration assembled as `-Gamma^k_ij v^i v^j` from the
/// Christoffel table; cross-validation route.
pub fn geodesic_rhs_via_christoffel<T: Real>(
    factor: &ConformalFactor<T>,
    state: &GeodesicState<T>,
) -> Result<Vec3<T>> {
    let table = christoffel(factor, state.x)?;
    Ok(-table.contract(state.v, state.v))
}

/// One trajectory point with its arclength parameter.
#[derive(Clone, Copy, Debug)]
pub struct TrajectoryPoint<T> {
    pub s: T,
    pub state: GeodesicState<T>,
}

#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub points: Vec<TrajectoryPoint<T>>,
    /// Set when the integration left the factor domain and stopped early.
    pub truncated: bool,
    pub step: T,
}

impl<T: Real> Trajectory<T> {
    pub fn endpoint(&self) -> &TrajectoryPoint<T> {
        self.points
            .last()
            .expect("trajectory has at least the start")
    }
}

/// Integrate the geodesic equation with the classical fourth-order
/// scheme at fixed step. The initial velocity is renormalized to exact
/// g-unit speed, so `s` is g-arclength. Domain exits truncate the
/// trajectory and set the flag instead of failing.
pub fn integrate<T: Real>(
    factor: &ConformalFactor<T>,
    start: GeodesicState<T>,
    length: T,
    step: T,
) -> Result<Trajectory<T>> {
    if step <= T::zero() {
        return Err(GeomError::Step(step.as_f64()));
    }
    if length <= T::zero() {
        return Err(GeomError::Domain(format!(
            "trajectory length must be positive, got {length}"
        )));
    }
    let speed = g_speed(factor, &start)?;
    if speed == T::zero() {
        return Err(GeomError::Domain("zero initial velocity".into()));
    }
    let start = GeodesicState {
        x: start.x,
        v: start.v / speed,
    };

    let n = (length / step).ceil().as_f64() as usize;
    let h = length / T::of(n as f64);
    let mut points = Vec::with_capacity(n + 1);
    points.push(TrajectoryPoint {
        s: T::zero(),
        state: start,
    });

    let deriv = |st: &GeodesicState<T>| -> Result<(Vec3<T>, Vec3<T>)> {
        Ok((st.v, geodesic_rhs(factor, st)?))
    };

    let mut current = start;
    let mut s = T::zero();
    let mut truncated = false;
    let (half, two, six) = (T::of(0.5), T::of(2.0), T::of(6.0));
    for _ in 0..n {
        #[allow(clippy::redundant_closure_call)] // scoped so a domain exit truncates cleanly
        let step_result = (|| -> Result<GeodesicState<T>> {
            let k1 = deriv(&current)?;
            let mid1 = GeodesicState {
                x: current.x + k1.0 * (h * half),
                v: current.v + k1.1 * (h * half),
            };
            let k2 = deriv(&mid1)?;
            let mid2 = GeodesicState {
                x: current.x + k2.0 * (h * half),
                v: current.v + k2.1 * (h * half),
            };
            let k3 = deriv(&mid2)?;
            let end = GeodesicState {
                x: current.x + k3.0 * h,
                v: current.v + k3.1 * h,
            };
            let k4 = deriv(&end)?;
            let sixth = h / six;
            Ok(GeodesicState {
                x: current.x + (k1.0 + (k2.0 + k3.0) * two + k4.0) * sixth,
                v: current.v + (k1.1 + (k2.1 + k3.1) * two + k4.1) * sixth,
            })
        })();
        match step_result {
            Ok(next) => {
                current = next;
                s = s + h;
                points.push(TrajectoryPoint { s, state: current });
            }
            Err(GeomError::Domain(_)) => {
                truncated = true;
                break;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(Trajectory {
        points,
        truncated,
        step: h,
    })
}

/// Maximum norm of the geodesic-equation residual `x'' + Gamma(x', x')`
/// over the samples. The curve must be parametrized by g-arclength; a
/// speed drift beyond 1e-4 is an error.
pub fn geodesic_residual<T: Real>(
    factor: &ConformalFactor<T>,
    samples: &[CurveSample<T>],
) -> Result<T> {
    let mut worst = T::zero();
    for sample in samples {
        let state = GeodesicState {
            x: sample.x,
            v: sample.v,
        };
        let drift = (g_speed(factor, &state)? - T::one()).abs();
        if drift > T::of(1e-4) {
            return Err(GeomError::Parametrization(drift.as_f64()));
        }
        let resid = (sample.a - geodesic_rhs(factor, &state)?).norm();
        worst = worst.max(resid);
    }
    Ok(worst)
}

/// Samples of the radial line `u -> u dir` reparametrized by g-arclength:
/// at parameter `u` the curve data are `(u dir, F dir, 2 u F F' dir)`.
pub fn radial_line_samples<T: Real>(
    factor: &ConformalFactor<T>,
    dir: Vec3<T>,
    u_range: (T, T),
    n: usize,
) -> Result<Vec<CurveSample<T>>> {
    let dir = dir.unit();
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let frac = T::of(idx as f64) / T::of((n - 1).max(1) as f64);
        let u = u_range.0 + (u_range.1 - u_range.0) * frac;
        let (h, hp, _) = factor.eval(u * u)?;
        out.push(CurveSample {
            x: dir * u,
            v: dir * h,
            a: dir * (T::of(2.0) * u * h * hp),
        });
    }
    Ok(out)
}

/// Samples of the circle of radius `R` about the origin in the plane
/// `x3 = 0`, parametrized by g-arclength: the angle at arclength `s` is
/// `F(R^2) s / R`.
pub fn origin_circle_samples<T: Real>(
    factor: &ConformalFactor<T>,
    radius: T,
    arc: T,
    n: usize,
) -> Result<Vec<CurveSample<T>>> {
    let (h, _, _) = factor.eval(radius * radius)?;
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let s = arc * T::of(idx as f64) / T::of((n - 1).max(1) as f64);
        let angle = h * s / radius;
        let (sa, ca) = (angle.sin(), angle.cos());
        out.push(CurveSample {
            x: Vec3::new(radius * ca, radius * sa, T::zero()),
            v: Vec3::new(-h * sa, h * ca, T::zero()),
            a: Vec3::new(-h * h / radius * ca, -h * h / radius * sa, T::zero()),
        });
    }
    Ok(out)
}

/// Samples of the straight line `tau -> p + tau d` reparametrized by
/// g-arclength; generically not a geodesic unless the line is radial.
pub fn line_samples<T: Real>(
    factor: &ConformalFactor<T>,
    p: Vec3<T>,
    dir: Vec3<T>,
    tau_range: (T, T),
    n: usize,
) -> Result<Vec<CurveSample<T>>> {
    let dir = dir.unit();
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let frac = T::of(idx as f64) / T::of((n - 1).max(1) as f64);
        let tau = tau_range.0 + (tau_range.1 - tau_range.0) * frac;
        let x = p + dir * tau;
        let (h, hp, _) = factor.eval_at(x)?;
        out.push(CurveSample {
            x,
            v: dir * h,
            a: dir * (T::of(2.0) * x.dot(dir) * h * hp),
        });
    }
    Ok(out)
}
