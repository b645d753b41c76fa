//! Crate-wide error type.
//!
//! The variants mirror the ways a run can fail: an argument outside a
//! function's mathematical domain, a configuration parameter outside its
//! documented range, a bracketed search leaving the representable range,
//! a grid too coarse for the requested shape, an empty averaging region,
//! a degenerate input (e.g. a constant field where a gradient norm is the
//! denominator), or a malformed domain specification.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (negative or non-finite where a nonnegative real is required, a
    /// curve point outside the domain, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration parameter violates its documented range.
    /// CLI maps this class to exit code 2.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A bracketed search (inversion, norm bisection) left the
    /// representable range [1e-300, 1e300].
    #[error("overflow error: {0}")]
    Overflow(String),

    /// The grid is too coarse to resolve the requested shape.
    #[error("resolution error: {what} (largest usable h ≈ {max_h:e})")]
    Resolution { what: String, max_h: f64 },

    /// A region used for integration or averaging contains no cells.
    #[error("empty region: {0}")]
    EmptyRegion(String),

    /// Input is degenerate for the requested quantity (e.g. constant
    /// field, zero gradient norm in a ratio denominator).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A domain specification is internally inconsistent (overlapping
    /// attachments, neck wider than cap, nesting violated, ...).
    #[error("domain spec error: {0}")]
    DomainSpec(String),

    /// A runtime numeric failure: non-finite intermediate where a finite
    /// value is required.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// I/O failure while reading or writing an artifact (mask files,
    /// reports).
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A text artifact (mask file, config) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the class of errors a CLI should report as misuse
    /// (exit code 2) rather than runtime failure (exit code 1).
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parameter(_) | Error::Parse(_))
    }
}
