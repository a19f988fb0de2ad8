//! Iterated function system types, validation, classification and the
//! system document format.

mod carpet;
mod format;
mod scalar;
mod similarity;

pub use carpet::{
    classify, classify_maps, AffineMap2D, BaranskiCarpet, Carpet, CarpetClass, LgCarpet, LgCell,
    LgColumn, Strip, SUM_TOLERANCE,
};
pub use format::{parse_system, render_system, System};
pub use scalar::{ratio_to_f64, ParseScalarError, Scalar, RELATIVE_TOLERANCE};
pub use similarity::{SimilarityIfs1D, SimilarityMap1D};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

impl ModelError {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        ModelError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
