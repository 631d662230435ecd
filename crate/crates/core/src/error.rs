use thiserror::Error;

/// Errors for argument-domain violations and table-size shortfalls.
///
/// Mathematical check failures (a falsified identity, a route disagreement)
/// are reported as data by the verification entry points, never as errors;
/// non-integral intermediates and singular pivots are implementation bugs and
/// panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("coefficient table too small: need rows up to m = {needed}, have max_m = {max_m}")]
    InsufficientTable { needed: u32, max_m: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
