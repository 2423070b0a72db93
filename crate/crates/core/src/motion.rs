//! Input-output function of the transmission.
//!
//! The follower displacement is affine in the cam angle: one full cam turn
//! advances the follower by exactly one pitch, and in the home configuration
//! (psi = 0) the roller sits at -p/(2n).

use std::f64::consts::TAU;

use crate::params::DesignParams;

/// Follower displacement s(psi) = (p/2pi) psi - p/(2n), in mm.
pub fn displacement(params: &DesignParams, psi: f64) -> f64 {
    params.p / TAU * psi - params.p / (2.0 * params.n_f())
}

/// First and second derivatives of the displacement with respect to psi:
/// (p/2pi, 0), constants of the design.
pub fn displacement_derivatives(params: &DesignParams) -> (f64, f64) {
    (params.p / TAU, 0.0)
}
