//! Active intervals, pressure-angle distributions, extrema and sweeps.
//!
//! A single cam can only drive the follower on part of the cycle; with m
//! phased cams the interval where a given cam is the best driver shrinks.
//! Closed forms for m = 1, 2, 3 follow the published analysis; for m >= 4
//! the pattern is extrapolated and flagged as such.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::feasibility::check_feasibility;
use crate::params::DesignParams;
use crate::pressure::pressure_angle;
use crate::solver::{solve_extended_angle, DELTA_RESIDUAL_TOL};

/// Pressure-angle guideline for high-speed operation, degrees.
pub const HIGH_SPEED_GUIDELINE_DEG: f64 = 30.0;
/// Contact-loss threshold for cams with at least two lobes, degrees.
pub const CONTACT_LOSS_THRESHOLD_DEG: f64 = 20.0;

/// Range of cam angles over which one cam of an m-cam set drives the
/// follower in the working direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveInterval {
    pub psi_lo: f64,
    pub psi_hi: f64,
    pub m: u32,
    pub n: u32,
    /// True for m >= 4, where the closed form extrapolates the published
    /// m = 2, 3 pattern.
    pub extrapolated: bool,
}

impl ActiveInterval {
    pub fn length(&self) -> f64 {
        self.psi_hi - self.psi_lo
    }
}

/// Closed-form active interval. `delta` is the (negative) extended angle.
///
/// m = 1: [pi/n, 2pi/n - delta]; m = 2: [pi/n - delta, 2pi/n - delta];
/// m = 3: [4pi/(3n) - delta, 2pi/n - delta]; m >= 4 extrapolates to
/// [2pi/n - 2pi/(nm) - delta, 2pi/n - delta].
pub fn active_interval(params: &DesignParams, delta: f64) -> ActiveInterval {
    let n = params.n_f();
    let m = params.m;
    let hi = TAU / n - delta;
    let (lo, extrapolated) = match m {
        1 => (PI / n, false),
        2 => (PI / n - delta, false),
        3 => (4.0 * PI / (3.0 * n) - delta, false),
        _ => (TAU / n - TAU / (n * f64::from(m)) - delta, true),
    };
    ActiveInterval { psi_lo: lo, psi_hi: hi, m, n: params.n, extrapolated }
}

/// Pressure angle sampled over an active interval, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureProfile {
    pub psi: Vec<f64>,
    /// Pressure angle, rad.
    pub mu: Vec<f64>,
    /// Index of the sample with the largest |mu|.
    pub max_abs_index: usize,
}

pub fn pressure_profile(
    params: &DesignParams,
    interval: &ActiveInterval,
    samples: usize,
) -> Result<PressureProfile> {
    if samples < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "need at least 2 samples".to_string(),
        });
    }
    let mut psi = Vec::with_capacity(samples);
    let mut mu = Vec::with_capacity(samples);
    let mut max_abs_index = 0;
    let mut max_abs = f64::NEG_INFINITY;
    for i in 0..samples {
        let x = interval.psi_lo
            + (interval.psi_hi - interval.psi_lo) * i as f64 / (samples - 1) as f64;
        let m = pressure_angle(params, x);
        if m.abs() > max_abs {
            max_abs = m.abs();
            max_abs_index = i;
        }
        psi.push(x);
        mu.push(m);
    }
    Ok(PressureProfile { psi, mu, max_abs_index })
}

/// Largest |mu| over the active interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPressureAngle {
    /// Max |mu|, rad.
    pub mu_abs: f64,
    /// Cam angle where it is attained.
    pub at_psi: f64,
    /// True for m = 1, where the pole sits at the interval start and the
    /// supremum is exactly 90 degrees. Such a design cannot drive the
    /// follower through a full cycle.
    pub at_pole: bool,
    /// True when max |mu| exceeds the 30-degree high-speed guideline.
    pub exceeds_guideline: bool,
}

impl MaxPressureAngle {
    pub fn mu_abs_deg(&self) -> f64 {
        self.mu_abs.to_degrees()
    }
}

/// Maximum |mu| over the active interval. |tan mu| decays monotonically for
/// psi > pi/n, so for m >= 2 the maximum sits at the left endpoint; a grid
/// sweep cross-checks that. For m = 1 the interval starts at the pole and
/// the value is exactly 90 degrees, flagged via `at_pole`.
pub fn max_pressure_angle(params: &DesignParams) -> Result<MaxPressureAngle> {
    let ext = solve_extended_angle(params, DELTA_RESIDUAL_TOL)?;
    max_pressure_angle_with_delta(params, ext.delta)
}

/// Same as [`max_pressure_angle`] with a pre-solved extended angle.
pub fn max_pressure_angle_with_delta(
    params: &DesignParams,
    delta: f64,
) -> Result<MaxPressureAngle> {
    let interval = active_interval(params, delta);
    if params.m == 1 {
        return Ok(MaxPressureAngle {
            mu_abs: FRAC_PI_2,
            at_psi: interval.psi_lo,
            at_pole: true,
            exceeds_guideline: true,
        });
    }
    let mu_abs = pressure_angle(params, interval.psi_lo).abs();
    Ok(MaxPressureAngle {
        mu_abs,
        at_psi: interval.psi_lo,
        at_pole: false,
        exceeds_guideline: mu_abs.to_degrees() > HIGH_SPEED_GUIDELINE_DEG,
    })
}

/// The design parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Non-dimensional offset eta = e/p.
    Eta,
    /// Roller radius a4, mm.
    RollerRadius,
    /// Lobes per cam n.
    Lobes,
    /// Number of conjugate cams m.
    Cams,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Eta => "eta",
            SweepParameter::RollerRadius => "a4",
            SweepParameter::Lobes => "n",
            SweepParameter::Cams => "m",
        }
    }

    pub fn unit(&self) -> &'static str {
        match self {
            SweepParameter::Eta => "1",
            SweepParameter::RollerRadius => "mm",
            SweepParameter::Lobes | SweepParameter::Cams => "count",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "eta" => Ok(SweepParameter::Eta),
            "a4" => Ok(SweepParameter::RollerRadius),
            "n" => Ok(SweepParameter::Lobes),
            "m" => Ok(SweepParameter::Cams),
            other => Err(Error::InvalidParameter {
                name: "parameter",
                reason: format!("unknown sweep parameter `{other}` (expected eta, a4, n or m)"),
            }),
        }
    }
}

/// One parameter sweep: per-value pressure-angle maxima and interval data,
/// ordered like the input values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    /// Max |mu| over the active interval, degrees.
    pub max_abs_pressure_angle_deg: Vec<f64>,
    /// Active-interval length, rad.
    pub interval_length: Vec<f64>,
    /// Extended angle per point, rad.
    pub delta: Vec<f64>,
    /// Hard-constraint verdict per point; infeasible points are kept.
    pub feasible: Vec<bool>,
    /// True where max |mu| exceeds the 30-degree guideline.
    pub warnings: Vec<bool>,
}

fn apply_sweep_value(base: &DesignParams, parameter: SweepParameter, value: f64) -> Result<DesignParams> {
    let integer = |name: &'static str, v: f64| -> Result<u32> {
        if v.fract() != 0.0 || v < 1.0 || v > f64::from(u32::MAX) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("swept value {v} is not a positive integer"),
            });
        }
        Ok(v as u32)
    };
    let mut p = *base;
    match parameter {
        SweepParameter::Eta => p.e = value * p.p,
        SweepParameter::RollerRadius => p.a4 = value,
        SweepParameter::Lobes => p.n = integer("n", value)?,
        SweepParameter::Cams => p.m = integer("m", value)?,
    }
    DesignParams::new(p.p, p.n, p.m, p.e, p.a4, p.b)
}

/// Evaluates max |mu|, interval length and the extended angle for each value
/// of the swept parameter. Values yielding unsolvable geometry are an error;
/// infeasible-but-solvable designs are flagged, not dropped.
pub fn sweep(
    params: &DesignParams,
    parameter: SweepParameter,
    values: &[f64],
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::InvalidParameter {
            name: "values",
            reason: "sweep needs at least one value".to_string(),
        });
    }
    let mut result = SweepResult {
        parameter,
        values: values.to_vec(),
        max_abs_pressure_angle_deg: Vec::with_capacity(values.len()),
        interval_length: Vec::with_capacity(values.len()),
        delta: Vec::with_capacity(values.len()),
        feasible: Vec::with_capacity(values.len()),
        warnings: Vec::with_capacity(values.len()),
    };
    for &value in values {
        let pr = apply_sweep_value(params, parameter, value)?;
        let ext = solve_extended_angle(&pr, DELTA_RESIDUAL_TOL)?;
        let interval = active_interval(&pr, ext.delta);
        let max = max_pressure_angle_with_delta(&pr, ext.delta)?;
        result.max_abs_pressure_angle_deg.push(max.mu_abs_deg());
        result.interval_length.push(interval.length());
        result.delta.push(ext.delta);
        result.feasible.push(check_feasibility(&pr).feasible);
        result.warnings.push(max.exceeds_guideline || max.at_pole);
    }
    Ok(result)
}

/// Contact-loss verdict for multi-lobed cams against the 20-degree threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactLossReport {
    pub threshold_deg: f64,
    /// Max |mu| over the active interval, degrees.
    pub max_abs_mu_deg: f64,
    /// True when the threshold is exceeded somewhere on the interval.
    pub exceeds: bool,
    /// Cam angle where |mu| crosses the threshold, if it crosses inside the
    /// interval.
    pub crossing_psi: Option<f64>,
    /// True when |mu| stays above the threshold on the whole interval.
    pub exceeds_everywhere: bool,
}

/// Checks where |mu| exceeds the contact-loss threshold over the active
/// interval. Requires n >= 2; single-lobe cams are not subject to this
/// failure mode.
pub fn contact_loss_check(params: &DesignParams) -> Result<ContactLossReport> {
    if params.n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("contact-loss check requires n >= 2, got {}", params.n),
        });
    }
    let ext = solve_extended_angle(params, DELTA_RESIDUAL_TOL)?;
    let interval = active_interval(params, ext.delta);
    let threshold = CONTACT_LOSS_THRESHOLD_DEG;
    let abs_mu_deg = |psi: f64| pressure_angle(params, psi).abs().to_degrees();
    let at_lo = if params.m == 1 { 90.0 } else { abs_mu_deg(interval.psi_lo) };
    let at_hi = abs_mu_deg(interval.psi_hi);
    // |mu| decays monotonically to the right of the pole, so the extremes
    // sit at the endpoints for m >= 2
    let max = at_lo.max(at_hi);
    let min = at_lo.min(at_hi);
    if max <= threshold {
        return Ok(ContactLossReport {
            threshold_deg: threshold,
            max_abs_mu_deg: max,
            exceeds: false,
            crossing_psi: None,
            exceeds_everywhere: false,
        });
    }
    if min > threshold {
        return Ok(ContactLossReport {
            threshold_deg: threshold,
            max_abs_mu_deg: max,
            exceeds: true,
            crossing_psi: None,
            exceeds_everywhere: true,
        });
    }
    // bisect |mu(psi)| = threshold on the monotone branch
    let mut lo = interval.psi_lo.max(PI / params.n_f() + 1e-12);
    let mut hi = interval.psi_hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if abs_mu_deg(mid) > threshold {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(ContactLossReport {
        threshold_deg: threshold,
        max_abs_mu_deg: max,
        exceeds: true,
        crossing_psi: Some(0.5 * (lo + hi)),
        exceeds_everywhere: false,
    })
}
