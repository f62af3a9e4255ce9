//! Exact minor containment for small graphs.

mod model;
mod naive;
mod search;

use thiserror::Error;

pub use model::{validate_model, MinorModel, ModelViolation};
pub use naive::{naive_minor, NAIVE_MAX_HOST};
pub use search::{
    find_minor, find_minor_report, MinorOutcome, SearchBudget, SearchReport, MAX_HOST_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("host has {n} vertices, search supports at most {max}")]
    HostTooLarge { n: usize, max: usize },
    #[error("naive oracle supports hosts with at most 9 vertices, got {n}")]
    NaiveTooLarge { n: usize },
}
