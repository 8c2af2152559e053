use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates the documented precondition of an operation.
    #[error("invalid argument: {0}")]
    Domain(String),

    /// An exact integer computation would leave the supported range.
    #[error("range error: {0}")]
    Range(String),

    /// A configured resource cap would be exceeded.
    #[error("resource cap exceeded for {what}: requested {requested}, cap {cap}")]
    Resource {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    /// A measure or average over an empty point set was requested.
    #[error("empty: {0}")]
    Empty(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_cap(what: &'static str, requested: u128, cap: u128) -> Result<()> {
    if requested > cap {
        Err(Error::Resource {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
