use thiserror::Error;

/// Errors produced anywhere in the rectification pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("character quad {index} is degenerate: {reason}")]
    DegenerateQuad { index: usize, reason: &'static str },

    #[error("center polyline is degenerate at sample {index}")]
    DegeneratePolyline { index: usize },

    #[error("orientation pair has near-zero norm after interpolation")]
    DegenerateOrientation,

    #[error("arc-length fraction {0} is outside [0, 1]")]
    OutOfRange(f64),

    #[error("invalid sample count k = {0} (need k >= 2)")]
    InvalidK(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("center ({x:.3}, {y:.3}) falls outside the {width}x{height} map grid")]
    OutOfBounds {
        x: f64,
        y: f64,
        width: usize,
        height: usize,
    },

    #[error("NoText: TCL mask is empty")]
    NoText,

    #[error("TooShort: extracted center line has {0} point(s)")]
    TooShort(usize),

    #[error("TPS system is singular: {0}")]
    SingularSystem(&'static str),

    #[error("point set length mismatch: {anchors} anchors vs {fiducials} fiducials")]
    LengthMismatch { anchors: usize, fiducials: usize },

    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),

    #[error("NonPositiveScale: ground-truth scale {value} at pixel ({row}, {col})")]
    NonPositiveScale { row: usize, col: usize, value: f64 },

    #[error("InvalidDistribution: step {step}: {reason}")]
    InvalidDistribution { step: usize, reason: String },

    #[error("DoesNotFit: {0}")]
    DoesNotFit(String),

    #[error("SchemaError at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("BoundsError at {path}: ({x}, {y}) outside [0, {width}] x [0, {height}]")]
    Bounds {
        path: String,
        x: f64,
        y: f64,
        width: f64,
        height: f64,
    },

    #[error("BadMagic: expected \"SCRN\"")]
    BadMagic,

    #[error("BadVersion: {0}")]
    BadVersion(u32),

    #[error("BadHeader: {0}")]
    BadHeader(String),

    #[error("TruncatedPayload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },

    #[error("TrailingBytes: {0} unexpected byte(s) after payload")]
    TrailingBytes(usize),

    #[error("UnsupportedFormat: {0}")]
    UnsupportedFormat(String),

    #[error("DecodeError: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
