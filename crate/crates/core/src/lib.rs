//! Synthesis and analysis of multi-lobed planar cams that drive a
//! translating roller follower.
//!
//! The library covers the full design loop for this transmission family:
//!
//! * closed-form motion law, cam-profile and pitch-curve points
//!   ([`motion`], [`profile`]);
//! * the extended-angle root solve that closes the profile, multi-lobe and
//!   conjugate-cam generation, and a geometric convexity test ([`solver`]);
//! * pressure angle and curvature evaluation ([`pressure`], [`curvature`]);
//! * design constraints and the feasible-region raster ([`feasibility`]);
//! * active intervals, pressure-angle extrema and parameter sweeps
//!   ([`analysis`]);
//! * config parsing and CSV/SVG serialization ([`export`]).
//!
//! Everything is a pure function of immutable inputs; all routines are safe
//! to call concurrently. Lengths are millimeters, angles radians.

pub mod analysis;
pub mod curvature;
pub mod error;
pub mod export;
pub mod feasibility;
pub mod motion;
pub mod params;
pub mod pressure;
pub mod profile;
pub mod solver;

pub use analysis::{
    active_interval, contact_loss_check, max_pressure_angle, pressure_profile, sweep,
    ActiveInterval, ContactLossReport, MaxPressureAngle, PressureProfile, SweepParameter,
    SweepResult,
};
pub use curvature::{curvature_parametric, curvature_pitch};
pub use error::{Error, Result};
pub use export::{parse_config, DesignConfig, DocumentHeader};
pub use feasibility::{check_feasibility, rasterize_region, FeasibilityReport, RegionRaster};
pub use motion::{displacement, displacement_derivatives};
pub use params::{DesignParams, Frame, PlanePoint};
pub use pressure::{pressure_angle, pressure_tan};
pub use profile::{cam_profile_point, pitch_point, profile_coefficients, ProfileCoefficients};
pub use solver::{
    generate_assembly, generate_cam, generate_lobe, is_convex_polyline, solve_extended_angle,
    CamAssembly, CamProfile, ExtendedAngle,
};
