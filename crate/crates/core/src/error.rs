use thiserror::Error;

/// Errors surfaced by the simulation and diagnostic stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice mismatch: fields live on different wavenumber lattices")]
    LatticeMismatch,

    #[error("projection cutoff {requested} exceeds lattice cutoff {lattice}")]
    CutoffTooLarge { requested: usize, lattice: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subordinator restriction [{eps}, {aleph}] is empty")]
    EmptyJumpRestriction { eps: f64, aleph: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state norm {norm:.3e} exceeded blow-up ceiling {ceiling:.3e} at t = {t:.6}")]
    BlowUp { norm: f64, ceiling: f64, t: f64 },

    #[error("record does not cover requested interval [{s}, {t}]")]
    IntervalOutOfRange { s: f64, t: f64 },

    #[error("no clock crossing found within horizon {horizon}")]
    NoClockCrossing { horizon: f64 },

    #[error("noise-time function does not cover [{lo}, {hi}]")]
    NoiseTimeDomain { lo: f64, hi: f64 },

    #[error("eigen decomposition failed: {0}")]
    Eigen(String),

    #[error("ensemble too small for a positive lower confidence bound ({successes} successes in {samples} samples)")]
    InsufficientEvidence { successes: usize, samples: usize },

    #[error("configuration invalid: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
