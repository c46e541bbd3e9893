use thiserror::Error;

/// Errors produced by the geometric constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The image of a circle is a line: the circle passes through the pole of the map.
    #[error("circle image is a line (circle passes through the pole {pole_re}+{pole_im}i)")]
    LineImage { pole_re: f64, pole_im: f64 },

    #[error("spherical circle passes through the north pole")]
    NorthPoleCircle,

    #[error("coaxial family needs two distinct circles")]
    IdenticalCircles,

    #[error("conjugator parameters inconsistent with the family: {0}")]
    BadKindParams(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("numeric breakdown: {0}")]
    NumericBreakdown(String),

    #[error("initial circle overlaps C_v too deeply (c = {0} < 0)")]
    NegativeC(f64),

    #[error("profile has no interior minimum on [{lo}, {hi}]")]
    NoInteriorMinimum { lo: f64, hi: f64 },

    #[error("profile has no local maximum between the two minimizers")]
    NoLocalMaximum,

    #[error("target {target} outside the open band ({lo}, {hi})")]
    OutOfBand { target: f64, lo: f64, hi: f64 },

    #[error("no circle orthogonal to the base triple when a = {0} <= 1/2")]
    NoOrthogonalCircle(f64),

    #[error("flowed circle contains the incenter")]
    CenterInsideCircle,

    #[error("normalization failed: {0}")]
    NormalizationFailed(String),

    #[error("edge labels disagree by {0:e}")]
    LabelMismatch(f64),

    #[error("bad equatorial setup: {0}")]
    BadEquatorialSetup(String),

    #[error("no tangency solution: {0}")]
    NoTangencySolution(String),

    #[error("length undefined on edge {u}-{v} (cosine argument {arg})")]
    UndefinedLength { u: usize, v: usize, arg: f64 },

    #[error("face {face:?} violates the {inequality}")]
    InvalidFace {
        face: [usize; 3],
        inequality: &'static str,
    },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
