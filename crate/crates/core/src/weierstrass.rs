//! Minimal surfaces from holomorphic data.
//!
//! Given holomorphic `f, g` (with derivatives supplied alongside), the map
//!
//! ```text
//! Phi = ( f (1 - g^2) / 2,  i f (1 + g^2) / 2,  f g )
//! X(w) = Re  integral_0^w Phi(omega) d omega
//! ```
//!
//! is a conformal minimal immersion. The position integral runs along the
//! radial segment `[0, w]` with composite Simpson quadrature; all jet
//! derivatives come straight from `Phi` and `Phi'`, so only the position
//! carries quadrature error (none at all for polynomial data).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::scalar::Real;
use crate::surface::SurfaceJet;
use crate::vec3::Vec3;

type Holo<T> = Arc<dyn Fn(Complex<T>) -> Complex<T> + Send + Sync>;

#[derive(Clone)]
pub struct WeierstrassData<T: Real> {
    pub name: String,
    pub f: Holo<T>,
    pub g: Holo<T>,
    pub df: Holo<T>,
    pub dg: Holo<T>,
    /// Simpson panels for the position integral.
    pub panels: usize,
}

impl<T: Real> fmt::Debug for WeierstrassData<T> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "WeierstrassData({})", self.name)
    }
}

impl<T: Real> WeierstrassData<T> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
        g: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
        df: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
        dg: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    ) -> Self {
        WeierstrassData {
            name: name.into(),
            f: Arc::new(f),
            g: Arc::new(g),
            df: Arc::new(df),
            dg: Arc::new(dg),
            panels: 64,
        }
    }

    /// `f = 2, g = w`: the classical Enneper immersion.
    pub fn enneper() -> Self {
        let two = Complex::new(T::of(2.0), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self::new("enneper", move |_| two, |w| w, move |_| zero, move |_| one)
    }

    fn phi(&self, w: Complex<T>) -> [Complex<T>; 3] {
        let one = Complex::new(T::one(), T::zero());
        let half = Complex::new(T::of(0.5), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let f = (self.f)(w);
        let g = (self.g)(w);
        [
            f * (one - g * g) * half,
            i * f * (one + g * g) * half,
            f * g,
        ]
    }

    fn dphi(&self, w: Complex<T>) -> [Complex<T>; 3] {
        let one = Complex::new(T::one(), T::zero());
        let half = Complex::new(T::of(0.5), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let two = Complex::new(T::of(2.0), T::zero());
        let f = (self.f)(w);
        let g = (self.g)(w);
        let df = (self.df)(w);
        let dg = (self.dg)(w);
        [
            (df * (one - g * g) - two * f * g * dg) * half,
            i * (df * (one + g * g) + two * f * g * dg) * half,
            df * g + f * dg,
        ]
    }

    /// Position by Simpson quadrature along the segment `[0, w]`.
    fn position(&self, w: Complex<T>) -> Vec3<T> {
        let n = self.panels;
        let h = T::one() / T::of(n as f64);
        let mut acc = [Complex::new(T::zero(), T::zero()); 3];
        for p in 0..n {
            let t0 = T::of(p as f64) * h;
            let tm = t0 + h * T::of(0.5);
            let t1 = t0 + h;
            let scale = |t: T| Complex::new(t, T::zero()) * w;
            let (a, m, b) = (
                self.phi(scale(t0)),
                self.phi(scale(tm)),
                self.phi(scale(t1)),
            );
            let four = Complex::new(T::of(4.0), T::zero());
            let sixth = Complex::new(h / T::of(6.0), T::zero());
            for k in 0..3 {
                acc[k] = acc[k] + (a[k] + four * m[k] + b[k]) * sixth * w;
            }
        }
        Vec3::new(acc[0].re, acc[1].re, acc[2].re)
    }

    /// Full second-order jet at `w = u + iv`.
    ///
    /// With `X_u = Re Phi` and `X_v = -Im Phi`, the Cauchy-Riemann
    /// relations give `X_uu = Re Phi'`, `X_uv = -Im Phi'`,
    /// `X_vv = -Re Phi'`.
    pub fn jet(&self, u: T, v: T) -> SurfaceJet<T> {
        let w = Complex::new(u, v);
        let phi = self.phi(w);
        let dphi = self.dphi(w);
        SurfaceJet {
            x: self.position(w),
            xu: Vec3::new(phi[0].re, phi[1].re, phi[2].re),
            xv: Vec3::new(-phi[0].im, -phi[1].im, -phi[2].im),
            xuu: Vec3::new(dphi[0].re, dphi[1].re, dphi[2].re),
            xuv: Vec3::new(-dphi[0].im, -dphi[1].im, -dphi[2].im),
            xvv: Vec3::new(-dphi[0].re, -dphi[1].re, -dphi[2].re),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::euclidean_curvatures;

    #[test]
    fn generated_surface_is_minimal_and_conformal() {
        let data = WeierstrassData::<f64>::enneper();
        for (u, v) in [(0.3, -0.4), (0.9, 0.7), (-0.5, 0.1)] {
            let j = data.jet(u, v);
            let c = euclidean_curvatures(&j).unwrap();
            assert!(c.H.abs() < 1e-12, "H = {}", c.H);
            assert!((c.E - c.G).abs() < 1e-12 * c.E);
            assert!(c.Fmix.abs() < 1e-12 * c.E);
        }
    }
}
