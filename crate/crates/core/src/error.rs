//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    /// Point or parameter outside the domain of the factor, surface or map.
    #[error("domain: {0}")]
    Domain(String),

    /// Immersion degenerates: `|Xu x Xv|` fell below the regularity guard.
    #[error("irregular immersion: |Xu x Xv| = {norm:.3e}")]
    Regularity { norm: f64 },

    /// Isothermal-parameter hypothesis violated.
    #[error(
        "not isothermal: |E - G| = {e_minus_g:.3e}, |F| = {fmix:.3e} against scale {scale:.3e}"
    )]
    NotIsothermal {
        e_minus_g: f64,
        fmix: f64,
        scale: f64,
    },

    /// Non-positive integrator step.
    #[error("step size must be positive, got {0}")]
    Step(f64),

    /// Curve handed to a residual check is not parametrized by g-arclength.
    #[error("curve not parametrized by g-arclength: speed drift {0:.3e}")]
    Parametrization(f64),

    /// Root scan found no sign change of `w(t) - c0`.
    #[error("no sign change of w(t) - c0 on the scan range for c0 = {0:.6e}")]
    NoBracket(f64),

    /// `w` at the left end of the scan already sits below `c0`, so the
    /// blow-up-at-zero hypothesis fails numerically.
    #[error("w({tmin:.3e}) = {w:.6e} < c0 = {c0:.6e}: cannot bracket a root from above")]
    Hypothesis { tmin: f64, w: f64, c0: f64 },

    /// Coefficient of `phi''` in the profile ODE crossed the singular guard.
    #[error("coefficient of phi'' crossed zero: |{0:.3e}| <= 1e-10")]
    SingularCoefficient(f64),
}

pub type Result<T> = std::result::Result<T, GeomError>;
