use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot refine to level {requested}: measure only resolves level {available}")]
    RefinementImpossible { requested: u32, available: u32 },

    #[error("level {level} is out of range (allowed 0..={max})")]
    LevelOutOfRange { level: u32, max: u32 },

    #[error("restriction to a cube of zero mass")]
    ZeroMassRestriction,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("map produced a non-finite value {value} at ({x}, {y})")]
    MapEvaluation { value: f64, x: f64, y: f64 },

    #[error("value {value} falls outside the rescaled window [0, 1]")]
    OutsideWindow { value: f64 },

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("data guard exceeded: {what} = {count} > {limit}")]
    DataGuard {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("vector is not a unit vector (norm {norm})")]
    NonUnitVector { norm: f64 },

    #[error("direction set too sparse: largest angular gap {gap:.4} rad exceeds allowed {allowed:.4} rad")]
    InsufficientDensity { gap: f64, allowed: f64 },

    #[error("square too large for pinned map: gradient deviation {deviation:.3e} > {bound:.3e}; admissible side <= {max_side:.3e}")]
    SquareTooLarge {
        deviation: f64,
        bound: f64,
        max_side: f64,
    },

    #[error("no dense square found inside the search region")]
    SearchExhausted,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("measure fails the linear growth condition (measured constant {growth:.3} > {limit})")]
    InapplicableMeasure { growth: f64, limit: f64 },

    #[error("point {0:?} is not in the support of the measure")]
    OutsideSupport([f64; 2]),

    #[error("vector {0:?} is not a member of the direction net")]
    NotInNet([f64; 2]),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 for configuration problems, 2 for data guards.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DataGuard { .. } => 2,
            _ => 1,
        }
    }
}
