use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {0} out of range 0..4")]
    IndexOutOfRange(usize),

    #[error("pair code {0} out of range 0..6")]
    PairCodeOutOfRange(usize),

    #[error("degenerate pair ({0}, {0})")]
    DegeneratePair(usize),

    #[error("degenerate tetrad: |det e| = {det:e}")]
    DegenerateTetrad { det: f64 },

    #[error("not a proper Lorentz transformation (deviation {deviation:e})")]
    InvalidLorentz { deviation: f64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("point outside static patch: {0}")]
    OutsideDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
