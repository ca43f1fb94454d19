//! The radial conformal metric `g_ij = delta_ij / F(t)^2`, `t = <x, x>`.
//!
//! `F` is always a function of the squared distance to the origin. Its
//! value together with the first two `t`-derivatives is everything the
//! rest of the crate needs: Christoffel symbols, sectional curvatures,
//! geodesics and the curvature transform are all built from the triple
//! `(h, h', h'')` returned by [`ConformalFactor::eval`].

use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Points with `|x|` below this are rejected for factors that are singular
/// at the origin (the `F = sqrt(t)` model lives on `R^3 \ {0}`).
pub const ORIGIN_GUARD: f64 = 1e-12;

/// Radial conformal factor `F(t)` with first and second `t`-derivatives.
#[derive(Clone)]
pub enum ConformalFactor<T: Real> {
    /// `F = 1`: the flat Euclidean metric.
    Euclidean,
    /// `F = sqrt(t)` on `R^3 \ {0}`: the radial model of `S^2 x R`.
    RadialModel,
    /// `F = exp(-t)`.
    ExpModel,
    /// User-supplied closed-form triple `t -> (h, h', h'')`.
    ///
    /// No symbolic differentiation happens here; callers hand in the
    /// derivatives and [`ConformalFactor::validate_derivatives`] guards
    /// against inconsistent triples with a finite-difference probe.
    Custom {
        name: String,
        eval: Arc<dyn Fn(T) -> (T, T, T) + Send + Sync>,
    },
}

impl<T: Real> fmt::Debug for ConformalFactor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl<T: Real> ConformalFactor<T> {
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(T) -> (T, T, T) + Send + Sync + 'static,
    ) -> Self {
        ConformalFactor::Custom {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ConformalFactor::Euclidean => "euclidean".into(),
            ConformalFactor::RadialModel => "radial".into(),
            ConformalFactor::ExpModel => "exp".into(),
            ConformalFactor::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    /// Evaluate `(h, h', h'')` at `t = <x, x>`.
    pub fn eval(&self, t: T) -> Result<(T, T, T)> {
        if t < T::zero() {
            return Err(GeomError::Domain(format!("t = {t} is negative")));
        }
        match self {
            ConformalFactor::Euclidean => Ok((T::one(), T::zero(), T::zero())),
            ConformalFactor::RadialModel => {
                if t <= T::of(ORIGIN_GUARD * ORIGIN_GUARD) {
                    return Err(GeomError::Domain(format!(
                        "t = {t} too close to the origin for F = sqrt(t)"
                    )));
                }
                let s = t.sqrt();
                Ok((s, T::of(0.5) / s, -T::of(0.25) / (t * s)))
            }
            ConformalFactor::ExpModel => {
                let e = (-t).exp();
                Ok((e, -e, e))
            }
            ConformalFactor::Custom { eval, .. } => {
                let (h, hp, hpp) = eval(t);
                if h == T::zero() {
                    return Err(GeomError::Domain(format!(
                        "custom factor vanishes at t = {t}"
                    )));
                }
                Ok((h, hp, hpp))
            }
        }
    }

    /// Evaluate at a point of `R^3`.
    pub fn eval_at(&self, x: Vec3<T>) -> Result<(T, T, T)> {
        self.eval(x.norm_sq())
    }

    /// Central-difference check that `h'` is really the derivative of `h`
    /// at each sample. Guards user-supplied custom triples.
    pub fn validate_derivatives(&self, samples: &[T], rel_tol: f64) -> Result<()> {
        let step = T::of(1e-5);
        for &t in samples {
            let (_, hp, _) = self.eval(t)?;
            let (hr, _, _) = self.eval(t + step)?;
            let (hl, _, _) = self.eval(t - step)?;
            let fd = (hr - hl) / (T::of(2.0) * step);
            let scale = T::one().max(hp.abs());
            if (fd - hp).abs() > T::of(rel_tol) * scale {
                return Err(GeomError::Domain(format!(
                    "factor derivative mismatch at t = {t}: h' = {hp}, finite difference = {fd}"
                )));
            }
        }
        Ok(())
    }
}

/// `<v, w>_g = <v, w> / F(<x, x>)^2`.
pub fn metric_inner<T: Real>(
    factor: &ConformalFactor<T>,
    x: Vec3<T>,
    v: Vec3<T>,
    w: Vec3<T>,
) -> Result<T> {
    let (h, _, _) = factor.eval_at(x)?;
    Ok(v.dot(w) / (h * h))
}

/// Christoffel symbols `Gamma^k_ij` of the conformal metric at a point.
///
/// Only three patterns survive for a diagonal conformal metric:
/// `Gamma^j_ii = F_j/F` for `i != j`, `Gamma^i_ij = -F_j/F`, and zero
/// whenever all three indices differ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChristoffelTable<T> {
    /// Indexed as `gamma[k][i][j]` for `Gamma^k_ij`.
    pub gamma: [[[T; 3]; 3]; 3],
}

impl<T: Real> ChristoffelTable<T> {
    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> T {
        self.gamma[k][i][j]
    }

    /// `out_k = sum_ij Gamma^k_ij a_i b_j`.
    pub fn contract(&self, a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        let mut out = Vec3::zero();
        for k in 0..3 {
            let mut acc = T::zero();
            for i in 0..3 {
                for j in 0..3 {
                    acc = acc + self.gamma[k][i][j] * a[i] * b[j];
                }
            }
            out.0[k] = acc;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    m = m.max((self.gamma[k][i][j] - other.gamma[k][i][j]).abs());
                }
            }
        }
        m
    }
}

/// Christoffel symbols at `x`, using `F_j = 2 x_j h'(t)`.
pub fn christoffel<T: Real>(
    factor: &ConformalFactor<T>,
    x: Vec3<T>,
) -> Result<ChristoffelTable<T>> {
    let (h, hp, _) = factor.eval_at(x)?;
    let two = T::of(2.0);
    let ratio = [
        two * x[0] * hp / h,
        two * x[1] * hp / h,
        two * x[2] * hp / h,
    ];
    let mut gamma = [[[T::zero(); 3]; 3]; 3];
    for (k, plane) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                plane[i][j] = if i == j {
                    if k == i {
                        -ratio[k]
                    } else {
                        ratio[k]
                    }
                } else if k == i {
                    -ratio[j]
                } else if k == j {
                    -ratio[i]
                } else {
                    T::zero()
                };
            }
        }
    }
    Ok(ChristoffelTable { gamma })
}

fn check_plane_indices(i: usize, j: usize) -> Result<()> {
    if i > 2 || j > 2 || i == j {
        return Err(GeomError::Domain(format!(
            "coordinate plane indices must be distinct and in 0..3, got ({i}, {j})"
        )));
    }
    Ok(())
}

/// Sectional curvature of the coordinate plane spanned by `d/dx_i, d/dx_j`,
/// in the radial closed form
/// `K = -4 h'^2 x_k^2 + 4 h h' + 4 (x_i^2 + x_j^2)(h h'' - h'^2)`.
pub fn sectional_curvature<T: Real>(
    factor: &ConformalFactor<T>,
    x: Vec3<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    check_plane_indices(i, j)?;
    let k = 3 - i - j;
    let (h, hp, hpp) = factor.eval_at(x)?;
    let four = T::of(4.0);
    Ok(-four * hp * hp * x[k] * x[k]
        + four * h * hp
        + four * (x[i] * x[i] + x[j] * x[j]) * (h * hpp - hp * hp))
}

/// Same sectional curvature assembled along the general route
/// `[(F_i/F)_i + (F_j/F)_j - (F_k/F)^2] F^2` with the chain rule
/// `F_m = 2 x_m h'(t)` expanded term by term. Cross-validates the radial
/// closed form used by [`sectional_curvature`].
pub fn sectional_curvature_general<T: Real>(
    factor: &ConformalFactor<T>,
    x: Vec3<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    check_plane_indices(i, j)?;
    let k = 3 - i - j;
    let (h, hp, hpp) = factor.eval_at(x)?;
    let two = T::of(2.0);
    // d/dx_m of (2 x_m h'/h)
    let d = |m: usize| {
        two * hp / h + two * x[m] * (two * x[m] * hpp * h - two * x[m] * hp * hp) / (h * h)
    };
    let fk_over_f = two * x[k] * hp / h;
    Ok((d(i) + d(j) - fk_over_f * fk_over_f) * h * h)
}

/// g-length of the polyline through `samples`, integrating `|gamma'| / F`
/// with a three-point Simpson rule on every segment. Callers control the
/// resolution through the sampling; there is no adaptive refinement.
pub fn curve_length<T: Real>(factor: &ConformalFactor<T>, samples: &[Vec3<T>]) -> Result<T> {
    if samples.len() < 2 {
        return Err(GeomError::Domain(
            "curve length needs at least two samples".into(),
        ));
    }
    let (half, four, six) = (T::of(0.5), T::of(4.0), T::of(6.0));
    let mut total = T::zero();
    for w in samples.windows(2) {
        let (p, q) = (w[0], w[1]);
        let chord = (q - p).norm();
        if chord == T::zero() {
            continue;
        }
        let mid = (p + q) * half;
        let fp = factor.eval_at(p)?.0;
        let fm = factor.eval_at(mid)?.0;
        let fq = factor.eval_at(q)?.0;
        total = total + chord * (fp.recip() + four * fm.recip() + fq.recip()) / six;
    }
    Ok(total)
}
