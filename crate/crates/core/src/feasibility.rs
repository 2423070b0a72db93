//! Design constraints and the feasible-region raster.
//!
//! Three hard constraints gate a design: consecutive rollers must not
//! interfere (a4 < p/(2n)), the roller must clear the camshaft
//! (a4 <= eta*p - b), and the home-configuration orientation forces
//! eta > 1/(2*pi). Convexity of the pitch curve (eta >= 1/pi) is reported
//! as a quality flag, not a gate: well-known working designs violate it.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::params::DesignParams;

/// Per-constraint verdicts with signed margins (positive = satisfied,
/// in the unit of the constrained quantity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    /// a4 < p/(2n), margin p/(2n) - a4 in mm (strict).
    pub roller_spacing_ok: bool,
    pub roller_spacing_margin: f64,
    /// a4 <= eta*p - b, margin eta*p - b - a4 in mm (non-strict).
    pub shaft_clearance_ok: bool,
    pub shaft_clearance_margin: f64,
    /// True when the shaft-clearance bound holds with equality, which is
    /// only workable if cam and shaft are machined from one block.
    pub shaft_clearance_at_limit: bool,
    /// eta > 1/(2*pi), margin eta - 1/(2*pi) (strict).
    pub eta_lower_ok: bool,
    pub eta_lower_margin: f64,
    /// eta >= 1/pi, margin eta - 1/pi (non-strict); quality flag only.
    pub convexity_ok: bool,
    pub convexity_margin: f64,
    /// Conjunction of the three hard constraints (convexity excluded).
    pub feasible: bool,
}

/// Evaluates all constraints with exact comparisons on the computed margins.
pub fn check_feasibility(params: &DesignParams) -> FeasibilityReport {
    let eta = params.eta();
    let roller_spacing_margin = params.p / (2.0 * params.n_f()) - params.a4;
    // eta*p = e exactly, so compute the margin from e to avoid rounding
    // through the ratio
    let shaft_clearance_margin = params.e - params.b - params.a4;
    let eta_lower_margin = eta - 1.0 / TAU;
    let convexity_margin = eta - 1.0 / PI;
    let roller_spacing_ok = roller_spacing_margin > 0.0;
    let shaft_clearance_ok = shaft_clearance_margin >= 0.0;
    let eta_lower_ok = eta_lower_margin > 0.0;
    FeasibilityReport {
        roller_spacing_ok,
        roller_spacing_margin,
        shaft_clearance_ok,
        shaft_clearance_margin,
        shaft_clearance_at_limit: shaft_clearance_margin == 0.0,
        eta_lower_ok,
        eta_lower_margin,
        convexity_ok: convexity_margin >= 0.0,
        convexity_margin,
        feasible: roller_spacing_ok && shaft_clearance_ok && eta_lower_ok,
    }
}

/// Intermediate terms of the home-configuration orientation constraint
/// v_c(0) <= 0, which factors as A * B with A > 0 whenever the roller
/// spacing holds; the constraint then reduces to B <= 0, i.e.
/// eta > 1/(2*pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintTerms {
    /// A = p/(2*n*pi) * sqrt((2*n*pi*eta - n)^2 + pi^2) - a4, mm.
    pub a: f64,
    /// B = sin(arctan(-pi/(2*n*pi*eta - n))), dimensionless.
    pub b: f64,
}

/// Evaluates the A and B terms. Singular at eta = 1/(2*pi).
pub fn constraint_terms(params: &DesignParams) -> Result<ConstraintTerms> {
    params.guard_eta()?;
    let n = params.n_f();
    let eta = params.eta();
    let a = params.p / (2.0 * n * PI) * ((TAU * n * eta - n).powi(2) + PI * PI).sqrt() - params.a4;
    let b = (-PI / (TAU * n * eta - n)).atan().sin();
    Ok(ConstraintTerms { a, b })
}

/// Boolean raster of the (eta, a4) design space for fixed p, b, n.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionRaster {
    /// Cell-center eta values, ascending.
    pub eta_axis: Vec<f64>,
    /// Cell-center a4 values in mm, ascending.
    pub a4_axis: Vec<f64>,
    pub n: u32,
    /// `cells[i][j]` is the verdict at (a4_axis[i], eta_axis[j]).
    pub cells: Vec<Vec<bool>>,
    /// Largest feasible a4 cell center over the eta range, if any.
    pub max_feasible_a4: Option<f64>,
    /// Pitch and shaft radius the raster was computed for, mm.
    pub p: f64,
    pub b: f64,
}

/// Default eta range mirroring the published design-space plot.
pub fn default_eta_range() -> (f64, f64) {
    (0.9 / TAU, 0.5)
}

/// Default roller-radius range (0, p/2].
pub fn default_a4_range(p: f64) -> (f64, f64) {
    (0.0, p / 2.0)
}

/// Default raster resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 200;

/// Rasterizes the feasible region: each cell takes the verdict of
/// [`check_feasibility`] at its center.
pub fn rasterize_region(
    p: f64,
    b: f64,
    n: u32,
    eta_range: (f64, f64),
    a4_range: (f64, f64),
    eta_cells: usize,
    a4_cells: usize,
) -> Result<RegionRaster> {
    if eta_cells < 2 || a4_cells < 2 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            reason: "raster needs at least 2x2 cells".to_string(),
        });
    }
    if !(p > 0.0) || !(b >= 0.0) || n < 1 {
        return Err(Error::InvalidParameter {
            name: "p/b/n",
            reason: "pitch positive, shaft radius non-negative, n >= 1".to_string(),
        });
    }
    let (eta_lo, eta_hi) = eta_range;
    let (a4_lo, a4_hi) = a4_range;
    if !(eta_hi > eta_lo && eta_lo > 0.0) || !(a4_hi > a4_lo && a4_lo >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "range",
            reason: "ranges must be positive and ascending".to_string(),
        });
    }
    let center = |lo: f64, hi: f64, cells: usize, i: usize| {
        lo + (hi - lo) * (i as f64 + 0.5) / cells as f64
    };
    let eta_axis: Vec<f64> = (0..eta_cells).map(|j| center(eta_lo, eta_hi, eta_cells, j)).collect();
    let a4_axis: Vec<f64> = (0..a4_cells).map(|i| center(a4_lo, a4_hi, a4_cells, i)).collect();
    let mut cells = Vec::with_capacity(a4_cells);
    let mut max_feasible_a4 = None;
    for &a4 in &a4_axis {
        let row: Vec<bool> = eta_axis
            .iter()
            .map(|&eta| {
                DesignParams::new(p, n, 1, eta * p, a4, b)
                    .map(|pr| check_feasibility(&pr).feasible)
                    .unwrap_or(false)
            })
            .collect();
        if row.iter().any(|&c| c) {
            max_feasible_a4 = Some(a4);
        }
        cells.push(row);
    }
    Ok(RegionRaster { eta_axis, a4_axis, n, cells, max_feasible_a4, p, b })
}
