use thiserror::Error;

/// Errors raised by the core numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("root bracketing did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("probe coupling too strong: gamma*n*Omega = {0} (must stay below 1)")]
    Smallness(f64),
    #[error("vacuum projection is degenerate: probes never interacted")]
    DegenerateProjection,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T: num_traits::ToPrimitive>(
    what: &'static str,
    value: T,
    expected: &'static str,
) -> Error {
    Error::Domain { what, value: value.to_f64().unwrap_or(f64::NAN), expected }
}
