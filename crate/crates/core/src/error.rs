use thiserror::Error;

use crate::routing::RouteResult;

#[derive(Debug, Error)]
pub enum Error {
    /// A node, zone or edge id that does not exist.
    #[error("invalid reference: {0}")]
    InvalidReference(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// The instance is outside the regime an algorithm supports.
    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// A search or enumeration ran out of budget. Carries the best solution seen, if any.
    #[error("resource limit exceeded: {message}")]
    ResourceLimit {
        message: String,
        incumbent: Option<Box<RouteResult>>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
