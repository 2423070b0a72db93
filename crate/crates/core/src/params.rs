//! Design parameters and plane points.
//!
//! All lengths are millimeters and all angles are radians unless a function
//! name says otherwise. The fixed x-y frame is attached to the machine; the
//! u-v frame rotates with the cam. Both share the origin at the camshaft axis.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Absolute tolerance on eta around the singular value 1/(2*pi).
pub const ETA_SINGULARITY_TOL: f64 = 1e-9;

/// Full parameter set defining one cam transmission design.
///
/// * `p`  - pitch: follower travel per cam revolution (mm)
/// * `n`  - lobes per cam
/// * `m`  - number of conjugate cams on the shaft
/// * `e`  - offset from the cam axis to the line of roller centers (mm)
/// * `a4` - roller radius (mm)
/// * `b`  - camshaft radius (mm)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    pub p: f64,
    pub n: u32,
    pub m: u32,
    pub e: f64,
    pub a4: f64,
    pub b: f64,
}

impl DesignParams {
    pub fn new(p: f64, n: u32, m: u32, e: f64, a4: f64, b: f64) -> Result<Self> {
        let check = |name: &'static str, ok: bool, reason: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: reason.to_string(),
                })
            }
        };
        check("p", p.is_finite() && p > 0.0, "pitch must be positive")?;
        check("n", n >= 1, "at least one lobe per cam")?;
        check("m", m >= 1, "at least one cam")?;
        check("e", e.is_finite() && e > 0.0, "offset must be positive")?;
        check("a4", a4.is_finite() && a4 > 0.0, "roller radius must be positive")?;
        check("b", b.is_finite() && b >= 0.0, "shaft radius must be non-negative")?;
        Ok(Self { p, n, m, e, a4, b })
    }

    /// Non-dimensional offset eta = e/p.
    pub fn eta(&self) -> f64 {
        self.e / self.p
    }

    /// Rejects parameter sets whose eta sits on the coefficient singularity.
    pub fn guard_eta(&self) -> Result<()> {
        let eta = self.eta();
        if (eta - 1.0 / TAU).abs() < ETA_SINGULARITY_TOL {
            Err(Error::EtaSingularity {
                eta,
                tol: ETA_SINGULARITY_TOL,
            })
        } else {
            Ok(())
        }
    }

    /// Lobe count as f64, for use in the closed-form expressions.
    pub(crate) fn n_f(&self) -> f64 {
        f64::from(self.n)
    }
}

/// Frame in which a plane point is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Machine frame (x-y).
    Fixed,
    /// Rotating cam frame (u-v).
    Cam,
}

/// A 2-D point tagged with the frame it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
    pub frame: Frame,
}

impl PlanePoint {
    pub fn fixed(x: f64, y: f64) -> Self {
        Self { x, y, frame: Frame::Fixed }
    }

    pub fn cam(u: f64, v: f64) -> Self {
        Self { x: u, y: v, frame: Frame::Cam }
    }

    /// u-coordinate (alias of `x`, meaningful in the cam frame).
    pub fn u(&self) -> f64 {
        self.x
    }

    /// v-coordinate (alias of `y`, meaningful in the cam frame).
    pub fn v(&self) -> f64 {
        self.y
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation about the origin by `angle`, staying in the same frame.
    pub fn rotated(&self, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self {
            x: self.x * cos - self.y * sin,
            y: self.x * sin + self.y * cos,
            frame: self.frame,
        }
    }

    /// Euclidean distance; points must share a frame.
    pub fn distance_to(&self, other: &PlanePoint) -> Result<f64> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        Ok((self.x - other.x).hypot(self.y - other.y))
    }
}
