use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("no root of the orientation equation in (0°, 90°)")]
    NoRoot,

    /// More than one sign change was found; every refined root is reported, in degrees.
    #[error("orientation equation has {} roots in (0°, 90°): {roots_deg:?}", roots_deg.len())]
    AmbiguousRoots { roots_deg: Vec<f64> },

    #[error("point ({x}, {y}) lies outside the corridor footprint")]
    OutsideFootprint { x: f64, y: f64 },

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    #[error("invalid material `{id}`: {reason}")]
    InvalidMaterial { id: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sweep grids differ: {0}")]
    GridMismatch(String),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("back-to-back response vanishes at sample {index} (|H_BB| = {magnitude:e})")]
    DivisionDegeneracy { index: usize, magnitude: f64 },

    #[error("sweep file: {0}")]
    SweepFormat(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("Tx position {index}: {source}")]
    AtPosition {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o: {0}")]
    Io(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
