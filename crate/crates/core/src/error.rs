use thiserror::Error;

use crate::equilibria::Slot;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The argument lies outside the domain of the microscopic entropy for this slot.
    #[error("f = {value} is outside the entropy domain of slot {slot}")]
    EntropyDomain { slot: Slot, value: f64 },

    #[error("conjugate search failed: {0}")]
    Oracle(String),

    #[error("shock metric undefined: {0}")]
    Metric(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
