//! Pressure angle of the cam-roller contact.
//!
//! Two algebraically equivalent forms are exposed: one from the motion law,
//! tan(mu) = (s' - e)/s, and the n-lobe closed form
//! tan(mu) = (n - 2*n*pi*eta)/(n*psi - pi). The closed form is the
//! implementation route; the motion-law form serves as an independent check.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::motion::{displacement, displacement_derivatives};
use crate::params::DesignParams;

/// tan(mu) via the n-lobe closed form. Returns +-infinity at the pole
/// npsi = pi.
pub fn pressure_tan(params: &DesignParams, psi: f64) -> f64 {
    let n = params.n_f();
    (n - TAU * n * params.eta()) / (n * psi - PI)
}

/// tan(mu) via the motion law, (s'(psi) - e)/s(psi). Independent of the
/// closed form above; undefined (infinite) where s = 0.
pub fn pressure_tan_from_motion(params: &DesignParams, psi: f64) -> f64 {
    let (s1, _) = displacement_derivatives(params);
    (s1 - params.e) / displacement(params, psi)
}

/// Pressure angle mu in radians, in [-pi/2, pi/2].
///
/// At the pole npsi = pi the denominator vanishes; by convention the value
/// returned is the one-sided limit from psi > pi/n, i.e. +-pi/2 with the sign
/// of the (constant) numerator. In the feasible region eta > 1/(2*pi) that
/// sign is negative.
pub fn pressure_angle(params: &DesignParams, psi: f64) -> f64 {
    let n = params.n_f();
    let num = n - TAU * n * params.eta();
    let den = n * psi - PI;
    if den == 0.0 {
        return FRAC_PI_2.copysign(num);
    }
    (num / den).atan()
}

/// Pressure angle in degrees.
pub fn pressure_angle_deg(params: &DesignParams, psi: f64) -> f64 {
    pressure_angle(params, psi).to_degrees()
}
