use thiserror::Error;

/// Errors produced by the synthesis and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The offset ratio eta = e/p sits on the singularity of the profile
    /// coefficients (division by 2*pi*eta - 1).
    #[error("offset ratio eta = {eta} is within {tol} of the singular value 1/(2*pi)")]
    EtaSingularity { eta: f64, tol: f64 },

    /// A cam angle fell outside the extended lobe domain in strict mode.
    #[error("cam angle {psi} rad is outside the lobe domain [{lo}, {hi}] rad")]
    OutsideLobeDomain { psi: f64, lo: f64, hi: f64 },

    /// Two points expressed in different frames were combined without an
    /// explicit rotation.
    #[error("points are expressed in different frames; rotate explicitly first")]
    FrameMismatch,

    /// The curve speed vanished, so the curvature is undefined (cusp).
    #[error("degenerate curve speed at psi = {psi} rad; curvature undefined")]
    DegenerateSpeed { psi: f64 },

    /// The follower-side profile ordinate does not change sign on the
    /// bisection bracket, so no extended angle exists there.
    #[error("v_c does not change sign on ({lo}, {hi}] rad; parameters are infeasible or degenerate")]
    NoRootInBracket { lo: f64, hi: f64 },

    /// The concatenated multi-lobe profile failed to close.
    #[error("profile closure failed: endpoint gap {gap} mm exceeds tolerance {tol} mm")]
    ClosureFailure { gap: f64, tol: f64 },

    /// A polyline had repeated points or too few vertices for the convexity test.
    #[error("degenerate polyline: {reason}")]
    DegeneratePolyline { reason: String },

    /// A design or solver parameter violated its precondition.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Configuration text failed to parse.
    #[error("config parse error: {0}")]
    ConfigParse(String),

    /// Configuration parsed but failed validation.
    #[error("invalid config field `{field}`: {reason}")]
    ConfigInvalid { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
