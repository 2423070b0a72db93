//! Config parsing and serialization of profiles, rasters and sweeps.
//!
//! Configs are TOML with a strict schema (unknown keys rejected). All text
//! writers are pure and deterministic: identical inputs yield byte-identical
//! output. Floats are written with 17 significant digits, which round-trips
//! 64-bit binary floating point losslessly.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::analysis::SweepResult;
use crate::error::{Error, Result};
use crate::feasibility::{FeasibilityReport, RegionRaster};
use crate::params::DesignParams;
use crate::solver::{CamAssembly, DEFAULT_SAMPLES, DELTA_RESIDUAL_TOL};

/// Formats a float with 17 significant digits (lossless f64 round trip).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parsed design configuration: the design parameters plus solver settings.
///
/// Lengths are millimeters, angles radians. Exactly one of `e` (mm) and
/// `eta` (dimensionless) must be given.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DesignConfig {
    pub p: f64,
    pub n: u32,
    /// Number of conjugate cams; two is the baseline design.
    #[serde(default = "default_m")]
    pub m: u32,
    pub e: Option<f64>,
    pub eta: Option<f64>,
    pub a4: f64,
    #[serde(default = "default_b")]
    pub b: f64,
    /// Samples per lobe for discretized output.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Residual tolerance for the extended-angle solve, mm.
    #[serde(default = "default_delta_tol")]
    pub delta_tol: f64,
    /// Promote the convexity quality flag to a hard feasibility gate.
    #[serde(default)]
    pub require_convex: bool,
}

fn default_m() -> u32 {
    2
}

fn default_b() -> f64 {
    4.25
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_delta_tol() -> f64 {
    DELTA_RESIDUAL_TOL
}

impl DesignConfig {
    /// Resolves the offset and validates the full parameter set.
    pub fn params(&self) -> Result<DesignParams> {
        let e = match (self.e, self.eta) {
            (Some(e), None) => e,
            (None, Some(eta)) => eta * self.p,
            (Some(_), Some(_)) => {
                return Err(Error::ConfigInvalid {
                    field: "e".to_string(),
                    reason: "give either `e` or `eta`, not both".to_string(),
                })
            }
            (None, None) => {
                return Err(Error::ConfigInvalid {
                    field: "e".to_string(),
                    reason: "one of `e` or `eta` is required".to_string(),
                })
            }
        };
        if self.samples < crate::solver::MIN_SAMPLES {
            return Err(Error::ConfigInvalid {
                field: "samples".to_string(),
                reason: format!("need at least {} samples", crate::solver::MIN_SAMPLES),
            });
        }
        if !(self.delta_tol > 0.0) {
            return Err(Error::ConfigInvalid {
                field: "delta_tol".to_string(),
                reason: "must be positive".to_string(),
            });
        }
        DesignParams::new(self.p, self.n, self.m, e, self.a4, self.b).map_err(|err| match err {
            Error::InvalidParameter { name, reason } => Error::ConfigInvalid {
                field: name.to_string(),
                reason,
            },
            other => other,
        })
    }

    /// Applies a `key=value` override; the caller re-validates via
    /// [`DesignConfig::params`].
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |reason: String| Error::ConfigInvalid { field: key.to_string(), reason };
        let as_f64 = || value.parse::<f64>().map_err(|e| bad(format!("not a number: {e}")));
        let as_u32 = || value.parse::<u32>().map_err(|e| bad(format!("not an integer: {e}")));
        match key {
            "p" => self.p = as_f64()?,
            "n" => self.n = as_u32()?,
            "m" => self.m = as_u32()?,
            "e" => {
                self.e = Some(as_f64()?);
                self.eta = None;
            }
            "eta" => {
                self.eta = Some(as_f64()?);
                self.e = None;
            }
            "a4" => self.a4 = as_f64()?,
            "b" => self.b = as_f64()?,
            "samples" => {
                self.samples = value
                    .parse::<usize>()
                    .map_err(|e| bad(format!("not an integer: {e}")))?
            }
            "delta_tol" => self.delta_tol = as_f64()?,
            other => return Err(bad(format!("unknown override key `{other}`"))),
        }
        Ok(())
    }
}

/// Parses a TOML design config; unknown keys and malformed values are
/// reported with the offending location or field.
pub fn parse_config(text: &str) -> Result<DesignConfig> {
    toml::from_str::<DesignConfig>(text).map_err(|e| Error::ConfigParse(e.to_string()))
}

/// Metadata echoed into every emitted document.
#[derive(Debug, Clone)]
pub struct DocumentHeader {
    pub params: DesignParams,
    pub delta: f64,
    pub feasibility: FeasibilityReport,
}

impl DocumentHeader {
    fn write_comments(&self, out: &mut String) {
        let p = &self.params;
        let _ = writeln!(out, "# tool_version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(
            out,
            "# p_mm = {}, n = {}, m = {}, e_mm = {}, a4_mm = {}, b_mm = {}",
            fmt_f64(p.p),
            p.n,
            p.m,
            fmt_f64(p.e),
            fmt_f64(p.a4),
            fmt_f64(p.b)
        );
        let _ = writeln!(out, "# eta = {}", fmt_f64(p.eta()));
        let _ = writeln!(out, "# delta_rad = {}", fmt_f64(self.delta));
        let f = &self.feasibility;
        let _ = writeln!(
            out,
            "# feasible = {}, roller_spacing_ok = {}, shaft_clearance_ok = {}, eta_lower_ok = {}, convex = {}",
            f.feasible, f.roller_spacing_ok, f.shaft_clearance_ok, f.eta_lower_ok, f.convexity_ok
        );
    }
}

/// One row of a profile CSV document.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub cam_index: u32,
    pub lobe_index: u32,
    pub psi: f64,
    pub u: f64,
    pub v: f64,
}

/// Serializes an assembly as CSV: one row per point with
/// `cam_index,lobe_index,psi,u,v`, LF line endings, floats at 17 significant
/// digits.
pub fn write_profile_csv(assembly: &CamAssembly, header: &DocumentHeader) -> String {
    let mut out = String::new();
    header.write_comments(&mut out);
    out.push_str("cam_index,lobe_index,psi,u,v\n");
    for (cam_index, cam) in assembly.cams.iter().enumerate() {
        for i in 0..cam.len() {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                cam_index,
                cam.lobe_index[i],
                fmt_f64(cam.psi_values[i]),
                fmt_f64(cam.points[i].u()),
                fmt_f64(cam.points[i].v())
            );
        }
    }
    out
}

/// Parses a document produced by [`write_profile_csv`] back into rows.
pub fn parse_profile_csv(text: &str) -> Result<Vec<ProfileRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.is_empty() || line.starts_with("cam_index") {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &'static str| {
            fields.next().ok_or_else(|| Error::ConfigParse(format!(
                "profile CSV line {}: missing field `{name}`",
                lineno + 1
            )))
        };
        let parse_err = |lineno: usize, e: std::num::ParseFloatError| {
            Error::ConfigParse(format!("profile CSV line {}: {e}", lineno + 1))
        };
        let cam_index = next("cam_index")?.parse::<u32>().map_err(|e| {
            Error::ConfigParse(format!("profile CSV line {}: {e}", lineno + 1))
        })?;
        let lobe_index = next("lobe_index")?.parse::<u32>().map_err(|e| {
            Error::ConfigParse(format!("profile CSV line {}: {e}", lineno + 1))
        })?;
        let psi = next("psi")?.parse::<f64>().map_err(|e| parse_err(lineno, e))?;
        let u = next("u")?.parse::<f64>().map_err(|e| parse_err(lineno, e))?;
        let v = next("v")?.parse::<f64>().map_err(|e| parse_err(lineno, e))?;
        rows.push(ProfileRow { cam_index, lobe_index, psi, u, v });
    }
    Ok(rows)
}

/// Options for SVG profile output.
#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    /// Pitch curves drawn under the profiles, one per cam.
    pub pitch_overlay: Option<CamAssembly>,
}

fn svg_coord(x: f64) -> String {
    // fixed decimals keep the output deterministic and diff-friendly
    format!("{x:.6}")
}

fn path_for(cam: &crate::solver::CamProfile, close: bool) -> String {
    let mut d = String::new();
    for (i, pt) in cam.points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        // flip v so the drawing matches the mathematical orientation
        let _ = write!(d, "{}{} {} ", cmd, svg_coord(pt.u()), svg_coord(-pt.v()));
    }
    if close {
        d.push('Z');
    } else {
        d.pop();
    }
    d
}

/// Serializes an assembly as an SVG 1.1 document: one path per cam profile
/// (stroked red), optional pitch-curve overlay (blue), millimeter user
/// units, viewBox from the geometry bounds plus a 5% margin.
pub fn write_profile_svg(assembly: &CamAssembly, options: &SvgOptions) -> String {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut absorb = |cams: &[crate::solver::CamProfile]| {
        for cam in cams {
            let (lo_x, lo_y, hi_x, hi_y) = cam.bounds();
            min_x = min_x.min(lo_x);
            min_y = min_y.min(-hi_y);
            max_x = max_x.max(hi_x);
            max_y = max_y.max(-lo_y);
        }
    };
    absorb(&assembly.cams);
    if let Some(pitch) = &options.pitch_overlay {
        absorb(&pitch.cams);
    }
    let margin = 0.05 * (max_x - min_x).max(max_y - min_y);
    let (x, y) = (min_x - margin, min_y - margin);
    let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}mm\" height=\"{}mm\">",
        svg_coord(x),
        svg_coord(y),
        svg_coord(w),
        svg_coord(h),
        svg_coord(w),
        svg_coord(h)
    );
    if let Some(pitch) = &options.pitch_overlay {
        for cam in &pitch.cams {
            let _ = writeln!(
                out,
                "  <path d=\"{}\" fill=\"none\" stroke=\"blue\" stroke-width=\"0.2\"/>",
                path_for(cam, cam.closed)
            );
        }
    }
    for cam in &assembly.cams {
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"none\" stroke=\"red\" stroke-width=\"0.3\"/>",
            path_for(cam, cam.closed)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Serializes a sampled pressure-angle distribution as CSV.
pub fn write_pressure_csv(profile: &crate::analysis::PressureProfile, header: &DocumentHeader) -> String {
    let mut out = String::new();
    header.write_comments(&mut out);
    out.push_str("psi_rad,mu_rad,mu_deg,tan_mu\n");
    for i in 0..profile.psi.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(profile.psi[i]),
            fmt_f64(profile.mu[i]),
            fmt_f64(profile.mu[i].to_degrees()),
            fmt_f64(profile.mu[i].tan())
        );
    }
    out
}

/// Serializes a feasibility raster as a matrix CSV: first row holds the eta
/// cell centers, each following row starts with its a4 cell center, cells
/// are 1 (feasible) or 0.
pub fn write_raster_csv(raster: &RegionRaster) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# tool_version = {}, p_mm = {}, b_mm = {}, n = {}",
        env!("CARGO_PKG_VERSION"),
        fmt_f64(raster.p),
        fmt_f64(raster.b),
        raster.n
    );
    out.push_str("a4_mm\\eta");
    for eta in &raster.eta_axis {
        let _ = write!(out, ",{}", fmt_f64(*eta));
    }
    out.push('\n');
    for (i, a4) in raster.a4_axis.iter().enumerate() {
        let _ = write!(out, "{}", fmt_f64(*a4));
        for cell in &raster.cells[i] {
            out.push_str(if *cell { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

/// Serializes a feasibility raster as an SVG: one rect per contiguous
/// feasible run per row, eta on the horizontal axis, a4 vertical.
pub fn write_raster_svg(raster: &RegionRaster) -> String {
    let eta_cells = raster.eta_axis.len();
    let a4_cells = raster.a4_axis.len();
    let d_eta = if eta_cells > 1 {
        raster.eta_axis[1] - raster.eta_axis[0]
    } else {
        1.0
    };
    let d_a4 = if a4_cells > 1 {
        raster.a4_axis[1] - raster.a4_axis[0]
    } else {
        1.0
    };
    // scale eta so both axes have comparable extents
    let sx = (raster.a4_axis[a4_cells - 1] - raster.a4_axis[0]).max(d_a4)
        / (raster.eta_axis[eta_cells - 1] - raster.eta_axis[0]).max(d_eta);
    let x0 = (raster.eta_axis[0] - 0.5 * d_eta) * sx;
    let y0 = raster.a4_axis[0] - 0.5 * d_a4;
    let w = eta_cells as f64 * d_eta * sx;
    let h = a4_cells as f64 * d_a4;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}mm\" height=\"{}mm\">",
        svg_coord(x0),
        svg_coord(y0),
        svg_coord(w),
        svg_coord(h),
        svg_coord(w),
        svg_coord(h)
    );
    for (i, a4) in raster.a4_axis.iter().enumerate() {
        let row = &raster.cells[i];
        let mut j = 0;
        while j < eta_cells {
            if row[j] {
                let start = j;
                while j < eta_cells && row[j] {
                    j += 1;
                }
                let _ = writeln!(
                    out,
                    "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"green\"/>",
                    svg_coord((raster.eta_axis[start] - 0.5 * d_eta) * sx),
                    svg_coord(a4 - 0.5 * d_a4),
                    svg_coord((j - start) as f64 * d_eta * sx),
                    svg_coord(d_a4)
                );
            } else {
                j += 1;
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Serializes a sweep as CSV with one row per swept value.
pub fn write_sweep_csv(sweep: &SweepResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# tool_version = {}, parameter = {} ({})",
        env!("CARGO_PKG_VERSION"),
        sweep.parameter.name(),
        sweep.parameter.unit()
    );
    out.push_str("value,max_abs_mu_deg,interval_length_rad,delta_rad,feasible,warn_over_30deg\n");
    for i in 0..sweep.values.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(sweep.values[i]),
            fmt_f64(sweep.max_abs_pressure_angle_deg[i]),
            fmt_f64(sweep.interval_length[i]),
            fmt_f64(sweep.delta[i]),
            u8::from(sweep.feasible[i]),
            u8::from(sweep.warnings[i])
        );
    }
    out
}
