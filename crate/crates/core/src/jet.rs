//! Truncated second-order forward-mode automatic differentiation in two
//! variables.
//!
//! A [`Jet2`] carries a value together with both first partials and the
//! three second partials with respect to the surface parameters `(u, v)`.
//! Arithmetic propagates derivatives exactly (no finite differencing),
//! which keeps curvature quantities — two derivative orders deep — clean
//! of truncation noise.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<T> {
    pub v: T,
    pub du: T,
    pub dv: T,
    pub duu: T,
    pub duv: T,
    pub dvv: T,
}

impl<T: Real> Jet2<T> {
    /// Constant: all derivatives vanish.
    pub fn constant(v: T) -> Self {
        Jet2 {
            v,
            du: T::zero(),
            dv: T::zero(),
            duu: T::zero(),
            duv: T::zero(),
            dvv: T::zero(),
        }
    }

    /// Seed for the first parameter: `d/du = 1`.
    pub fn var_u(v: T) -> Self {
        Jet2 {
            du: T::one(),
            ..Self::constant(v)
        }
    }

    /// Seed for the second parameter: `d/dv = 1`.
    pub fn var_v(v: T) -> Self {
        Jet2 {
            dv: T::one(),
            ..Self::constant(v)
        }
    }

    /// Chain rule for a scalar function with value `f`, derivative `df` and
    /// second derivative `ddf` at `self.v`.
    fn chain(self, f: T, df: T, ddf: T) -> Self {
        Jet2 {
            v: f,
            du: df * self.du,
            dv: df * self.dv,
            duu: ddf * self.du * self.du + df * self.duu,
            duv: ddf * self.du * self.dv + df * self.duv,
            dvv: ddf * self.dv * self.dv + df * self.dvv,
        }
    }

    pub fn recip(self) -> Self {
        let inv = self.v.recip();
        let two = T::of(2.0);
        self.chain(inv, -inv * inv, two * inv * inv * inv)
    }

    pub fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        let half = T::of(0.5);
        self.chain(r, half / r, -T::of(0.25) / (self.v * r))
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let inv = self.v.recip();
        self.chain(self.v.ln(), inv, -inv * inv)
    }

    pub fn sin(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(c, -s, -c)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Self {
        self.sinh() / self.cosh()
    }

    pub fn powi(self, n: i32) -> Self {
        let nf = T::of(f64::from(n));
        let f = self.v.powi(n);
        let df = nf * self.v.powi(n - 1);
        let ddf = nf * (nf - T::one()) * self.v.powi(n - 2);
        self.chain(f, df, ddf)
    }
}

impl<T: Real> Add for Jet2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Jet2 {
            v: self.v + r.v,
            du: self.du + r.du,
            dv: self.dv + r.dv,
            duu: self.duu + r.duu,
            duv: self.duv + r.duv,
            dvv: self.dvv + r.dvv,
        }
    }
}

impl<T: Real> Sub for Jet2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Jet2 {
            v: self.v - r.v,
            du: self.du - r.du,
            dv: self.dv - r.dv,
            duu: self.duu - r.duu,
            duv: self.duv - r.duv,
            dvv: self.dvv - r.dvv,
        }
    }
}

impl<T: Real> Neg for Jet2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet2 {
            v: -self.v,
            du: -self.du,
            dv: -self.dv,
            duu: -self.duu,
            duv: -self.duv,
            dvv: -self.dvv,
        }
    }
}

impl<T: Real> Mul for Jet2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let two = T::of(2.0);
        Jet2 {
            v: self.v * r.v,
            du: self.du * r.v + self.v * r.du,
            dv: self.dv * r.v + self.v * r.dv,
            duu: self.duu * r.v + two * self.du * r.du + self.v * r.duu,
            duv: self.duv * r.v + self.du * r.dv + self.dv * r.du + self.v * r.duv,
            dvv: self.dvv * r.v + two * self.dv * r.dv + self.v * r.dvv,
        }
    }
}

impl<T: Real> Div for Jet2<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // a/b = a * (1/b) is the jet chain rule
    fn div(self, r: Self) -> Self {
        self * r.recip()
    }
}

impl<T: Real> Mul<T> for Jet2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Jet2 {
            v: self.v * s,
            du: self.du * s,
            dv: self.dv * s,
            duu: self.duu * s,
            duv: self.duv * s,
            dvv: self.dvv * s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn product_rule_second_order() {
        // f(u, v) = u^2 * v at (3, 2): f_uu = 2v, f_uv = 2u, f_vv = 0.
        let u = Jet2::var_u(3.0);
        let v = Jet2::var_v(2.0);
        let f = u * u * v;
        close(f.v, 18.0, 1e-15);
        close(f.du, 12.0, 1e-15);
        close(f.dv, 9.0, 1e-15);
        close(f.duu, 4.0, 1e-15);
        close(f.duv, 6.0, 1e-15);
        close(f.dvv, 0.0, 1e-15);
    }

    #[test]
    fn chain_rule_matches_hand_derivative() {
        // f(u) = sin(u^2) : f'' = 2 cos(u^2) - 4 u^2 sin(u^2)
        let u0 = 0.7_f64;
        let f = (Jet2::var_u(u0) * Jet2::var_u(u0)).sin();
        close(f.v, (u0 * u0).sin(), 1e-15);
        close(f.du, 2.0 * u0 * (u0 * u0).cos(), 1e-15);
        close(
            f.duu,
            2.0 * (u0 * u0).cos() - 4.0 * u0 * u0 * (u0 * u0).sin(),
            1e-14,
        );
    }

    #[test]
    fn division_and_sqrt() {
        // f(u, v) = sqrt(u) / v at (4, 2)
        let u = Jet2::var_u(4.0_f64);
        let v = Jet2::var_v(2.0);
        let f = u.sqrt() / v;
        close(f.v, 1.0, 1e-15);
        close(f.du, 0.125, 1e-15);
        close(f.dv, -0.5, 1e-15);
        close(f.duu, -1.0 / 64.0, 1e-15);
        close(f.duv, -0.0625, 1e-15);
        close(f.dvv, 0.5, 1e-15);
    }
}
