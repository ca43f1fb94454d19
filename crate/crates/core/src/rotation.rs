//! Rotation surfaces `(phi(u) cos v, phi(u) sin v, u)` with prescribed
//! constant extrinsic curvature in the conformal ambient space.
//!
//! The profile `phi` satisfies a second-order ODE whose residual is
//! exposed point by point; spheres centered at the origin are explicit
//! solutions and their extrinsic curvature has the closed form
//! `(F(R^2) - 2 F'(R^2) R^2)^2 / R^2`. Inverting that relation in `R` is a
//! scan-and-bisect root problem on `w(t) = ((F - 2 F' t)/sqrt(t))^2`.

use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::metric::ConformalFactor;
use crate::scalar::Real;

/// Generating curve of a rotation surface: `u -> (phi, phi', phi'')` on an
/// interval with `phi > 0`.
#[derive(Clone)]
pub struct RotationProfile<T: Real> {
    pub name: String,
    eval_fn: Arc<dyn Fn(T) -> (T, T, T) + Send + Sync>,
    pub u_min: T,
    pub u_max: T,
}

impl<T: Real> fmt::Debug for RotationProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RotationProfile({}, [{}, {}])",
            self.name, self.u_min, self.u_max
        )
    }
}

impl<T: Real> RotationProfile<T> {
    pub fn new(
        name: impl Into<String>,
        u_min: T,
        u_max: T,
        eval_fn: impl Fn(T) -> (T, T, T) + Send + Sync + 'static,
    ) -> Self {
        RotationProfile {
            name: name.into(),
            eval_fn: Arc::new(eval_fn),
            u_min,
            u_max,
        }
    }

    /// `phi = sqrt(R^2 - u^2)`, the origin sphere of radius `R`; the
    /// interval is trimmed away from the poles.
    pub fn sphere(radius: T) -> Self {
        let r2 = radius * radius;
        let margin = T::of(2.0 * crate::surface::DOMAIN_SHRINK) * radius;
        RotationProfile::new(
            format!("sphere(R={radius})"),
            -radius + margin,
            radius - margin,
            move |u| {
                let phi2 = r2 - u * u;
                let phi = phi2.sqrt();
                (phi, -u / phi, -r2 / (phi2 * phi))
            },
        )
    }

    /// `phi = cosh(u)`.
    pub fn catenoid(u_min: T, u_max: T) -> Self {
        RotationProfile::new("catenoid", u_min, u_max, |u| (u.cosh(), u.sinh(), u.cosh()))
    }

    /// `phi = slope * u` (cone through the origin).
    pub fn cone(slope: T, u_min: T, u_max: T) -> Self {
        RotationProfile::new(format!("cone(k={slope})"), u_min, u_max, move |u| {
            (slope * u, slope, T::zero())
        })
    }

    /// `phi = c` (cylinder).
    pub fn cylinder(c: T, u_min: T, u_max: T) -> Self {
        RotationProfile::new(format!("cylinder(c={c})"), u_min, u_max, move |_| {
            (c, T::zero(), T::zero())
        })
    }

    pub fn eval(&self, u: T) -> Result<(T, T, T)> {
        if u < self.u_min || u > self.u_max {
            return Err(GeomError::Domain(format!(
                "u = {u} outside profile interval [{}, {}]",
                self.u_min, self.u_max
            )));
        }
        let (phi, dphi, ddphi) = (self.eval_fn)(u);
        if phi <= T::zero() {
            return Err(GeomError::Domain(format!(
                "profile value phi({u}) = {phi} is not positive"
            )));
        }
        Ok((phi, dphi, ddphi))
    }
}

/// Residual of the constant-extrinsic-curvature equation at `u` from raw
/// profile values:
///
/// `[F + 2 phi F'(-phi + u phi')] [F phi'' - 2 a^2 F'(-phi + u phi')] + c0 a^4 phi`
///
/// with `a^2 = 1 + phi'^2`; zero exactly when the rotation surface has
/// extrinsic curvature `c0` at the point.
pub fn extrinsic_residual_raw<T: Real>(
    factor: &ConformalFactor<T>,
    u: T,
    phi: T,
    dphi: T,
    ddphi: T,
    c0: T,
) -> Result<T> {
    let t = phi * phi + u * u;
    let (h, hp, _) = factor.eval(t)?;
    let two = T::of(2.0);
    let support = -phi + u * dphi; // a * <X, N>
    let a2 = T::one() + dphi * dphi;
    let b1 = h + two * phi * hp * support;
    let b2 = h * ddphi - two * a2 * hp * support;
    Ok(b1 * b2 + c0 * a2 * a2 * phi)
}

/// [`extrinsic_residual_raw`] evaluated through a profile.
pub fn extrinsic_residual<T: Real>(
    factor: &ConformalFactor<T>,
    profile: &RotationProfile<T>,
    u: T,
    c0: T,
) -> Result<T> {
    let (phi, dphi, ddphi) = profile.eval(u)?;
    extrinsic_residual_raw(factor, u, phi, dphi, ddphi, c0)
}

/// Residual of the `F = exp(-t)` specialization, scaled by `exp(2t)`:
///
/// `[1 + 2 phi^2 - 2 u phi phi'] [phi'' - 2 a^2 (phi - u phi')] + c0 a^4 phi e^{2(u^2+phi^2)}`
///
/// Identical to `exp(2t)` times the general residual with the exponential
/// factor, which the tests verify.
pub fn e3_residual<T: Real>(profile: &RotationProfile<T>, u: T, c0: T) -> Result<T> {
    let (phi, dphi, ddphi) = profile.eval(u)?;
    let t = phi * phi + u * u;
    let two = T::of(2.0);
    let a2 = T::one() + dphi * dphi;
    let lead = T::one() + two * phi * phi - two * u * phi * dphi;
    Ok(lead * (ddphi - two * a2 * (phi - u * dphi)) + c0 * a2 * a2 * phi * (two * t).exp())
}

/// Extrinsic curvature of the origin sphere of radius `R`:
/// `(F(R^2) - 2 F'(R^2) R^2)^2 / R^2`.
pub fn sphere_extrinsic<T: Real>(factor: &ConformalFactor<T>, radius: T) -> Result<T> {
    if radius <= T::zero() {
        return Err(GeomError::Domain(format!(
            "sphere radius must be positive, got {radius}"
        )));
    }
    let t = radius * radius;
    let (h, hp, _) = factor.eval(t)?;
    let two = T::of(2.0);
    let num = h - two * hp * t;
    Ok(num * num / t)
}

/// `w(t) = ((F - 2 F' t) / sqrt(t))^2`, the curvature-versus-radius map
/// whose level sets give sphere radii for a prescribed extrinsic
/// curvature.
pub fn sphere_curvature_of_t<T: Real>(factor: &ConformalFactor<T>, t: T) -> Result<T> {
    let (h, hp, _) = factor.eval(t)?;
    let num = h - T::of(2.0) * hp * t;
    Ok(num * num / t)
}

/// All sphere radii with extrinsic curvature `c0`, from a log-spaced scan
/// of `w` over `t` in `[1e-6, 1e6]` followed by bisection on every
/// bracketed sign change.
#[derive(Clone, Debug)]
pub struct CurvatureRoots<T> {
    /// Radii in increasing order; first entry is the smallest root.
    pub roots: Vec<T>,
    /// Smallest and largest scanned `w` value.
    pub w_min: T,
    pub w_max: T,
    /// Number of sign-change brackets found.
    pub brackets: usize,
}

pub const SCAN_T_MIN: f64 = 1e-6;
pub const SCAN_T_MAX: f64 = 1e6;
pub const SCAN_NODES: usize = 2000;

pub fn radius_for_curvature<T: Real>(
    factor: &ConformalFactor<T>,
    c0: T,
) -> Result<CurvatureRoots<T>> {
    if c0 <= T::zero() {
        return Err(GeomError::Domain(format!(
            "prescribed curvature must be positive, got {c0}"
        )));
    }
    let log_min = SCAN_T_MIN.ln();
    let log_max = SCAN_T_MAX.ln();
    let mut ts = Vec::with_capacity(SCAN_NODES);
    let mut ws = Vec::with_capacity(SCAN_NODES);
    for idx in 0..SCAN_NODES {
        let frac = idx as f64 / (SCAN_NODES - 1) as f64;
        let t = T::of((log_min + (log_max - log_min) * frac).exp());
        ts.push(t);
        ws.push(sphere_curvature_of_t(factor, t)?);
    }
    let w_min = ws.iter().cloned().fold(ws[0], |a, b| a.min(b));
    let w_max = ws.iter().cloned().fold(ws[0], |a, b| a.max(b));

    // degenerate map (the sqrt(t) factor): w vanishes identically, so no
    // positive level is ever bracketed
    if w_max < T::of(1e-15) {
        return Err(GeomError::NoBracket(c0.as_f64()));
    }
    if ws[0] < c0 {
        return Err(GeomError::Hypothesis {
            tmin: ts[0].as_f64(),
            w: ws[0].as_f64(),
            c0: c0.as_f64(),
        });
    }

    let mut roots: Vec<T> = Vec::new();
    let mut brackets = 0usize;
    for idx in 0..SCAN_NODES - 1 {
        let fa = ws[idx] - c0;
        let fb = ws[idx + 1] - c0;
        if fa == T::zero() {
            push_root(&mut roots, ts[idx].sqrt());
            brackets += 1;
            continue;
        }
        if fa * fb < T::zero() {
            brackets += 1;
            let mut lo = ts[idx];
            let mut hi = ts[idx + 1];
            let mut flo = fa;
            for _ in 0..200 {
                let mid = (lo + hi) * T::of(0.5);
                let fm = sphere_curvature_of_t(factor, mid)? - c0;
                if fm == T::zero() {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < T::zero() {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
                if (hi - lo) <= T::of(1e-16) * hi {
                    break;
                }
            }
            push_root(&mut roots, ((lo + hi) * T::of(0.5)).sqrt());
        }
    }
    if roots.is_empty() {
        return Err(GeomError::NoBracket(c0.as_f64()));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(CurvatureRoots {
        roots,
        w_min,
        w_max,
        brackets,
    })
}

fn push_root<T: Real>(roots: &mut Vec<T>, r: T) {
    if roots
        .iter()
        .all(|&existing| (existing - r).abs() > T::of(1e-12) * r.max(T::one()))
    {
        roots.push(r);
    }
}

/// Numerically continued profile with prescribed extrinsic curvature.
#[derive(Clone, Debug)]
pub struct ProfileSolution<T> {
    pub u: Vec<T>,
    pub phi: Vec<T>,
    pub dphi: Vec<T>,
    pub ddphi: Vec<T>,
}

impl<T: Real> ProfileSolution<T> {
    /// Worst residual of the curvature equation along the solution.
    pub fn max_extrinsic_residual(&self, factor: &ConformalFactor<T>, c0: T) -> Result<T> {
        let mut worst = T::zero();
        for idx in 0..self.u.len() {
            let r = extrinsic_residual_raw(
                factor,
                self.u[idx],
                self.phi[idx],
                self.dphi[idx],
                self.ddphi[idx],
                c0,
            )?;
            worst = worst.max(r.abs());
        }
        Ok(worst)
    }
}

const SINGULAR_GUARD: f64 = 1e-10;

/// `phi''` solved from the curvature equation. For `c0 = 0` the equation
/// factors and the nonsingular branch `F phi'' = 2 a^2 F' (-phi + u phi')`
/// is integrated directly, without dividing by the leading coefficient.
fn profile_accel<T: Real>(factor: &ConformalFactor<T>, c0: T, u: T, phi: T, dphi: T) -> Result<T> {
    if phi <= T::zero() {
        return Err(GeomError::Domain(format!(
            "profile crossed the rotation axis at u = {u}"
        )));
    }
    let t = phi * phi + u * u;
    let (h, hp, _) = factor.eval(t)?;
    let two = T::of(2.0);
    let support = -phi + u * dphi;
    let a2 = T::one() + dphi * dphi;
    let curvature_term = if c0 == T::zero() {
        T::zero()
    } else {
        let b1 = h + two * phi * hp * support;
        if b1.abs() <= T::of(SINGULAR_GUARD) {
            return Err(GeomError::SingularCoefficient(b1.as_f64()));
        }
        -c0 * a2 * a2 * phi / b1
    };
    Ok((curvature_term + two * a2 * hp * support) / h)
}

/// Integrate the profile ODE from `(phi0, dphi0)` at `u0` over
/// `[u0 - span, u0 + span]` with a fixed-step classical fourth-order
/// scheme. The output node list is ordered by increasing `u`.
pub fn solve_profile<T: Real>(
    factor: &ConformalFactor<T>,
    c0: T,
    u0: T,
    phi0: T,
    dphi0: T,
    span: T,
    step: T,
) -> Result<ProfileSolution<T>> {
    if step <= T::zero() {
        return Err(GeomError::Step(step.as_f64()));
    }
    if span <= T::zero() {
        return Err(GeomError::Domain(format!(
            "span must be positive, got {span}"
        )));
    }
    let n = (span / step).ceil().as_f64() as usize;
    let h = span / T::of(n as f64);

    let sweep = |dir: T| -> Result<Vec<(T, T, T, T)>> {
        let mut out = Vec::with_capacity(n);
        let (mut u, mut phi, mut dphi) = (u0, phi0, dphi0);
        let hd = h * dir;
        for _ in 0..n {
            let k1 = (dphi, profile_accel(factor, c0, u, phi, dphi)?);
            let half = T::of(0.5);
            let k2 = (
                dphi + hd * half * k1.1,
                profile_accel(
                    factor,
                    c0,
                    u + hd * half,
                    phi + hd * half * k1.0,
                    dphi + hd * half * k1.1,
                )?,
            );
            let k3 = (
                dphi + hd * half * k2.1,
                profile_accel(
                    factor,
                    c0,
                    u + hd * half,
                    phi + hd * half * k2.0,
                    dphi + hd * half * k2.1,
                )?,
            );
            let k4 = (
                dphi + hd * k3.1,
                profile_accel(factor, c0, u + hd, phi + hd * k3.0, dphi + hd * k3.1)?,
            );
            let sixth = hd / T::of(6.0);
            let two = T::of(2.0);
            phi = phi + sixth * (k1.0 + two * k2.0 + two * k3.0 + k4.0);
            dphi = dphi + sixth * (k1.1 + two * k2.1 + two * k3.1 + k4.1);
            u = u + hd;
            out.push((u, phi, dphi, profile_accel(factor, c0, u, phi, dphi)?));
        }
        Ok(out)
    };

    let right = sweep(T::one())?;
    let left = sweep(-T::one())?;

    let mut u = Vec::with_capacity(2 * n + 1);
    let mut phi = Vec::with_capacity(2 * n + 1);
    let mut dphi = Vec::with_capacity(2 * n + 1);
    let mut ddphi = Vec::with_capacity(2 * n + 1);
    for &(uu, p, dp, ddp) in left.iter().rev() {
        u.push(uu);
        phi.push(p);
        dphi.push(dp);
        ddphi.push(ddp);
    }
    u.push(u0);
    phi.push(phi0);
    dphi.push(dphi0);
    ddphi.push(profile_accel(factor, c0, u0, phi0, dphi0)?);
    for &(uu, p, dp, ddp) in &right {
        u.push(uu);
        phi.push(p);
        dphi.push(dp);
        ddphi.push(ddp);
    }
    Ok(ProfileSolution {
        u,
        phi,
        dphi,
        ddphi,
    })
}
