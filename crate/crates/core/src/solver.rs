//! Extended-angle root solve, lobe/cam/assembly generation and the
//! geometric convexity test.
//!
//! The raw closed-form lobe does not close on [0, 2*pi/n]; a negative
//! extended angle shifts both lobe boundaries so that consecutive lobes
//! share their endpoints. The extended angle is the root of v_c(psi) = 0,
//! found by bracketing bisection.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::params::{DesignParams, PlanePoint};
use crate::profile::{cam_profile_point, pitch_point, profile_v};

/// Default bisection tolerance on the residual |v_c(delta)|, mm.
pub const DELTA_RESIDUAL_TOL: f64 = 1e-10;
/// Bisection stops once the bracket width falls below this, rad.
pub const DELTA_BRACKET_TOL: f64 = 1e-12;
/// Hard cap on bisection iterations.
pub const DELTA_MAX_ITERATIONS: u32 = 200;
/// Closure tolerance between matching lobe endpoints, mm.
pub const CLOSURE_TOL: f64 = 1e-6;
/// Default number of samples per lobe.
pub const DEFAULT_SAMPLES: usize = 720;
/// Minimum samples per lobe accepted by the generators.
pub const MIN_SAMPLES: usize = 16;

/// Certified root of v_c(psi) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedAngle {
    /// The extended angle, rad; negative for all workable configurations.
    pub delta: f64,
    /// v_c evaluated at `delta`, mm.
    pub residual: f64,
    /// Bisection iterations spent.
    pub iterations: u32,
}

/// Solves v_c(psi) = 0 for the extended angle by bisection on
/// (-pi/n + 1e-6, -1e-12].
///
/// `tol` bounds the accepted residual |v_c(delta)| in mm. Fails with
/// `NoRootInBracket` when v_c does not change sign on the bracket, which
/// signals infeasible or degenerate parameters.
pub fn solve_extended_angle(params: &DesignParams, tol: f64) -> Result<ExtendedAngle> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: "residual tolerance must be positive".to_string(),
        });
    }
    params.guard_eta()?;
    let mut lo = -TAU / 2.0 / params.n_f() + 1e-6;
    let mut hi = -1e-12;
    let mut f_lo = profile_v(params, lo)?;
    let f_hi = profile_v(params, hi)?;
    if f_lo == 0.0 {
        return Ok(ExtendedAngle { delta: lo, residual: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(ExtendedAngle { delta: hi, residual: 0.0, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    let mut iterations = 0;
    while iterations < DELTA_MAX_ITERATIONS && hi - lo > DELTA_BRACKET_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = profile_v(params, mid)?;
        if f_mid == 0.0 {
            return Ok(ExtendedAngle { delta: mid, residual: 0.0, iterations });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let delta = 0.5 * (lo + hi);
    let residual = profile_v(params, delta)?;
    if residual.abs() > tol {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!(
                "bisection converged in angle but the residual {residual} mm exceeds {tol} mm"
            ),
        });
    }
    Ok(ExtendedAngle { delta, residual, iterations })
}

/// Discretized cam profile: one closed polyline covering all n lobes, with
/// the generating cam angle and lobe id kept per point.
#[derive(Debug, Clone, PartialEq)]
pub struct CamProfile {
    pub points: Vec<PlanePoint>,
    pub psi_values: Vec<f64>,
    pub lobe_index: Vec<u32>,
    pub closed: bool,
}

impl CamProfile {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Axis-aligned bounding box (min_x, min_y, max_x, max_y).
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for pt in &self.points {
            b.0 = b.0.min(pt.x);
            b.1 = b.1.min(pt.y);
            b.2 = b.2.max(pt.x);
            b.3 = b.3.max(pt.y);
        }
        b
    }

    fn rotated(&self, angle: f64) -> CamProfile {
        CamProfile {
            points: self.points.iter().map(|p| p.rotated(angle)).collect(),
            psi_values: self.psi_values.clone(),
            lobe_index: self.lobe_index.clone(),
            closed: self.closed,
        }
    }
}

/// A set of conjugate cams sharing one shaft.
#[derive(Debug, Clone, PartialEq)]
pub struct CamAssembly {
    pub cams: Vec<CamProfile>,
    /// Phase offset of cam k, equal to k * 2*pi/(n*m).
    pub phase_offsets: Vec<f64>,
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: format!("need at least {MIN_SAMPLES} samples per lobe, got {samples}"),
        });
    }
    Ok(())
}

fn sample_lobe<F>(params: &DesignParams, delta: f64, samples: usize, point: F) -> Result<CamProfile>
where
    F: Fn(&DesignParams, f64) -> Result<PlanePoint>,
{
    check_samples(samples)?;
    let lo = delta;
    let hi = TAU / params.n_f() - delta;
    let mut points = Vec::with_capacity(samples);
    let mut psi_values = Vec::with_capacity(samples);
    for i in 0..samples {
        let psi = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        points.push(point(params, psi)?);
        psi_values.push(psi);
    }
    Ok(CamProfile {
        lobe_index: vec![0; points.len()],
        points,
        psi_values,
        closed: false,
    })
}

/// Samples the canonical lobe uniformly in psi over [delta, 2*pi/n - delta].
pub fn generate_lobe(params: &DesignParams, delta: f64, samples: usize) -> Result<CamProfile> {
    sample_lobe(params, delta, samples, cam_profile_point)
}

fn concatenate_lobes(params: &DesignParams, lobe: CamProfile) -> Result<CamProfile> {
    let n = params.n;
    let per_lobe = lobe.len();
    let mut points = Vec::with_capacity(n as usize * per_lobe);
    let mut psi_values = Vec::with_capacity(n as usize * per_lobe);
    let mut lobe_index = Vec::with_capacity(n as usize * per_lobe);
    for k in 0..n {
        // lobe k occupies psi in [delta + k*2pi/n, ...]; geometrically it is
        // the canonical lobe rotated by -k*2pi/n (the profile winds clockwise
        // as psi grows)
        let rot = -(f64::from(k)) * TAU / params.n_f();
        let skip = if k == 0 { 0 } else { 1 };
        for i in skip..per_lobe {
            points.push(lobe.points[i].rotated(rot));
            psi_values.push(lobe.psi_values[i] + f64::from(k) * TAU / params.n_f());
            lobe_index.push(k);
        }
    }
    // shared endpoint between lobe k and k+1 coincides by the lobe symmetry;
    // verify the remaining seam between the last and the first point
    let gap = points[points.len() - 1].distance_to(&points[0])?;
    if gap > CLOSURE_TOL {
        return Err(Error::ClosureFailure { gap, tol: CLOSURE_TOL });
    }
    Ok(CamProfile { points, psi_values, lobe_index, closed: true })
}

/// Generates the full closed n-lobe cam profile. The extended angle is
/// solved internally to the default residual tolerance.
pub fn generate_cam(params: &DesignParams, samples: usize) -> Result<CamProfile> {
    let ext = solve_extended_angle(params, DELTA_RESIDUAL_TOL)?;
    let lobe = generate_lobe(params, ext.delta, samples)?;
    concatenate_lobes(params, lobe)
}

/// Generates the pitch curve over the same extended lobe domain, as a
/// closed polyline matching [`generate_cam`].
pub fn generate_pitch_cam(params: &DesignParams, samples: usize) -> Result<CamProfile> {
    let ext = solve_extended_angle(params, DELTA_RESIDUAL_TOL)?;
    let lobe = sample_lobe(params, ext.delta, samples, |pr, psi| Ok(pitch_point(pr, psi)))?;
    // the pitch curve does not close at the extended-angle seam (only the
    // profile does), so keep it as an open polyline
    let n = params.n;
    let per_lobe = lobe.len();
    let mut points = Vec::with_capacity(n as usize * per_lobe);
    let mut psi_values = Vec::with_capacity(n as usize * per_lobe);
    let mut lobe_index = Vec::with_capacity(n as usize * per_lobe);
    for k in 0..n {
        let rot = -(f64::from(k)) * TAU / params.n_f();
        for i in 0..per_lobe {
            points.push(lobe.points[i].rotated(rot));
            psi_values.push(lobe.psi_values[i] + f64::from(k) * TAU / params.n_f());
            lobe_index.push(k);
        }
    }
    Ok(CamProfile { points, psi_values, lobe_index, closed: false })
}

/// Generates the m conjugate cams; cam k is cam 0 rotated by k * 2*pi/(n*m).
pub fn generate_assembly(params: &DesignParams, samples: usize) -> Result<CamAssembly> {
    let base = generate_cam(params, samples)?;
    assemble(params, base)
}

/// Conjugate pitch curves, phased like [`generate_assembly`].
pub fn generate_pitch_assembly(params: &DesignParams, samples: usize) -> Result<CamAssembly> {
    let base = generate_pitch_cam(params, samples)?;
    assemble(params, base)
}

fn assemble(params: &DesignParams, base: CamProfile) -> Result<CamAssembly> {
    let beta = TAU / (params.n_f() * f64::from(params.m));
    let mut cams = Vec::with_capacity(params.m as usize);
    let mut phase_offsets = Vec::with_capacity(params.m as usize);
    for k in 0..params.m {
        let offset = f64::from(k) * beta;
        cams.push(if k == 0 { base.clone() } else { base.rotated(offset) });
        phase_offsets.push(offset);
    }
    Ok(CamAssembly { cams, phase_offsets })
}

/// Geometric convexity test on a closed polyline: true iff all
/// consecutive-edge cross products share one sign. Near-zero cross products
/// (collinear samples) are tolerated. This is the independent oracle for the
/// curvature-based convexity condition.
pub fn is_convex_polyline(profile: &CamProfile) -> Result<bool> {
    let mut pts: Vec<PlanePoint> = profile.points.clone();
    if pts.len() >= 2 {
        // drop an explicit closing duplicate before the cyclic sweep
        let gap = pts[pts.len() - 1].distance_to(&pts[0])?;
        if gap <= CLOSURE_TOL {
            pts.pop();
        }
    }
    if !profile.closed {
        return Err(Error::DegeneratePolyline {
            reason: "convexity test requires a closed profile".to_string(),
        });
    }
    if pts.len() < 3 {
        return Err(Error::DegeneratePolyline {
            reason: format!("need at least 3 distinct points, got {}", pts.len()),
        });
    }
    let k = pts.len();
    let mut max_edge_sq: f64 = 0.0;
    for i in 0..k {
        let a = &pts[i];
        let b = &pts[(i + 1) % k];
        let d2 = (b.x - a.x).powi(2) + (b.y - a.y).powi(2);
        if d2 == 0.0 {
            return Err(Error::DegeneratePolyline {
                reason: format!("repeated point at index {i}"),
            });
        }
        max_edge_sq = max_edge_sq.max(d2);
    }
    let tol = 1e-9 * max_edge_sq;
    let mut pos = false;
    let mut neg = false;
    for i in 0..k {
        let a = &pts[i];
        let b = &pts[(i + 1) % k];
        let c = &pts[(i + 2) % k];
        let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if cross > tol {
            pos = true;
        } else if cross < -tol {
            neg = true;
        }
        if pos && neg {
            return Ok(false);
        }
    }
    Ok(true)
}
