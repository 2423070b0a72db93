//! Signed curvature of planar parametric curves and of the pitch curve.
//!
//! The generic routine works from central finite differences and acts as an
//! independent oracle for the closed-form pitch-curve curvature.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::params::DesignParams;

/// Central-difference step giving a good truncation/rounding balance for
/// mm-scale curves with the fourth-order stencil below.
pub const DEFAULT_FD_STEP: f64 = 3e-3;

/// Squared-speed threshold below which the curvature is treated as undefined.
pub const SPEED_TOL: f64 = 1e-12;

/// Signed curvature from first and second derivatives:
/// kappa = (v' u'' - u' v'') / (u'^2 + v'^2)^(3/2).
pub fn curvature_from_derivatives(
    first: (f64, f64),
    second: (f64, f64),
    psi: f64,
) -> Result<f64> {
    let (du, dv) = first;
    let (ddu, ddv) = second;
    let speed_sq = du * du + dv * dv;
    if speed_sq < SPEED_TOL {
        return Err(Error::DegenerateSpeed { psi });
    }
    Ok((dv * ddu - du * ddv) / speed_sq.powf(1.5))
}

/// Signed curvature of the curve (u(psi), v(psi)) by central finite
/// differences with step `h`.
pub fn curvature_parametric<U, V>(u: U, v: V, psi: f64, h: f64) -> Result<f64>
where
    U: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "h",
            reason: "finite-difference step must be positive".to_string(),
        });
    }
    // fourth-order central stencil; three-point differences lose too much
    // precision to rounding at mm scale
    let stencil = |f: &dyn Fn(f64) -> f64| {
        let (f2p, f1p, f0, f1m, f2m) =
            (f(psi + 2.0 * h), f(psi + h), f(psi), f(psi - h), f(psi - 2.0 * h));
        let d1 = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
        let d2 = (-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h);
        (d1, d2)
    };
    let (du, ddu) = stencil(&u);
    let (dv, ddv) = stencil(&v);
    curvature_from_derivatives((du, dv), (ddu, ddv), psi)
}

/// Closed-form curvature of the pitch curve at `psi`, in 1/mm, oriented as
/// the curve is actually traversed with growing psi. It is non-negative
/// everywhere exactly when (2*pi*eta - 1)(pi*eta - 1) >= 0, i.e. outside
/// eta in (1/(2*pi), 1/pi).
pub fn curvature_pitch(params: &DesignParams, psi: f64) -> Result<f64> {
    params.guard_eta()?;
    let n = params.n_f();
    let eta = params.eta();
    let t = n * psi - PI;
    let num = t * t + 2.0 * n * n * (TAU * eta - 1.0) * (PI * eta - 1.0);
    let den = (t * t + n * n * (TAU * eta - 1.0).powi(2)).powf(1.5);
    Ok((2.0 * n * PI / params.p) * num / den)
}

/// Numerator bracket of the pitch-curve curvature,
/// (n psi - pi)^2 + 2 n^2 (2 pi eta - 1)(pi eta - 1).
/// Its sign changes on the lobe exactly when the profile loses convexity.
pub fn pitch_curvature_numerator(params: &DesignParams, psi: f64) -> f64 {
    let n = params.n_f();
    let eta = params.eta();
    let t = n * psi - PI;
    t * t + 2.0 * n * n * (TAU * eta - 1.0) * (PI * eta - 1.0)
}
