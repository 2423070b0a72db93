//! Closed-form cam-profile and pitch-curve points.
//!
//! The contact point C traces the cam profile in the u-v frame; the roller
//! center O2 traces the pitch curve, offset from the profile by exactly the
//! roller radius a4 along the contact normal.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::motion::displacement;
use crate::params::{DesignParams, PlanePoint};

/// Directed angle between the cam axis and the follower travel direction.
/// Fixed by the sign conventions of the mechanism.
pub const ALPHA_1: f64 = -FRAC_PI_2;

/// Coefficients of the closed-form profile expression at one cam angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileCoefficients {
    /// b2 = p/(2*pi), mm.
    pub b2: f64,
    /// Distance from the cam axis to the roller center, mm.
    pub b3: f64,
    /// Polar angle of the roller center seen from the cam axis, rad,
    /// principal branch (valid since 2*pi*eta - 1 > 0 in the feasible region).
    pub delta: f64,
}

/// Evaluates b2, b3 and delta at `psi`.
///
/// Fails with a singularity error when eta is within tolerance of 1/(2*pi),
/// where the delta expression divides by zero.
pub fn profile_coefficients(params: &DesignParams, psi: f64) -> Result<ProfileCoefficients> {
    params.guard_eta()?;
    let n = params.n_f();
    let eta = params.eta();
    let b2 = params.p / TAU;
    let b3 = b2 * ((TAU * eta - 1.0).powi(2) + (psi - PI / n).powi(2)).sqrt();
    let delta = ((n * psi - PI) / (TAU * n * eta - n)).atan();
    Ok(ProfileCoefficients { b2, b3, delta })
}

/// Contact point C on the cam profile, in the u-v frame.
pub fn cam_profile_point(params: &DesignParams, psi: f64) -> Result<PlanePoint> {
    let c = profile_coefficients(params, psi)?;
    let reach = c.b3 - params.a4;
    let u = c.b2 * psi.cos() + reach * (c.delta - psi).cos();
    let v = -c.b2 * psi.sin() + reach * (c.delta - psi).sin();
    Ok(PlanePoint::cam(u, v))
}

/// Same as [`cam_profile_point`] but rejects angles outside the extended
/// lobe domain [delta_ext, 2*pi/n - delta_ext].
pub fn cam_profile_point_strict(
    params: &DesignParams,
    delta_ext: f64,
    psi: f64,
) -> Result<PlanePoint> {
    let lo = delta_ext;
    let hi = TAU / params.n_f() - delta_ext;
    if psi < lo || psi > hi {
        return Err(Error::OutsideLobeDomain { psi, lo, hi });
    }
    cam_profile_point(params, psi)
}

/// v-coordinate of the contact point; the extended angle is its root.
pub fn profile_v(params: &DesignParams, psi: f64) -> Result<f64> {
    Ok(cam_profile_point(params, psi)?.v())
}

/// Roller center O2 in the u-v frame: the fixed-frame point (e, s(psi))
/// rotated into the cam frame.
pub fn pitch_point(params: &DesignParams, psi: f64) -> PlanePoint {
    let s = displacement(params, psi);
    let (sin, cos) = psi.sin_cos();
    PlanePoint::cam(params.e * cos + s * sin, -params.e * sin + s * cos)
}
