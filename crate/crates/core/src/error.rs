use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported polylogarithm order {0}: closed unit-circle forms exist for 2..=5 only")]
    UnsupportedOrder(u32),

    /// The requested sum diverges for the current sign of the field shift.
    #[error("regime error: {0}")]
    Regime(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A computation produced NaN or an infinity.
    #[error("non-finite result in {0}")]
    NonFinite(String),
}
