use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("nonlinearity evaluated at its pole (u = {u})")]
    PoleEvaluation { u: f64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("no crossing of level {level} before t_max = {t_max}")]
    NoCrossing { level: f64, t_max: f64 },

    #[error("integration blew up at t = {t}")]
    BlowUp { t: f64 },

    #[error("no real lattice for s = {s}, mu = {mu}: h^2 = {h2} <= 0")]
    NoRealLattice { s: f64, mu: f64, h2: f64 },

    #[error("index {index} out of range (valid up to {max})")]
    InvalidIndex { index: usize, max: usize },

    #[error("kink front within {margin} sites of the boundary at t = {t}")]
    KinkReachesBoundary { t: f64, margin: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoCrossing { .. }
                | Error::BlowUp { .. }
                | Error::NoRealLattice { .. }
                | Error::PoleEvaluation { .. }
                | Error::KinkReachesBoundary { .. }
        )
    }
}
