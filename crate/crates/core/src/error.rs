use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A substitution would need a negative or fractional power of a
    /// multi-term polynomial.
    #[error("cannot raise multi-term value of `{var}` to power {power}")]
    NonMonomialNegativePower { var: String, power: String },

    /// A substitution would need a fractional power of a coefficient other than 1.
    #[error("cannot raise coefficient {coefficient} to power {power}")]
    CoefficientPower { coefficient: String, power: String },

    /// An exponent finer than a quarter would be produced.
    #[error("exponent of `{var}` is not a multiple of 1/4")]
    ExponentResolution { var: String },

    /// The exponential enumeration would exceed the configured cap.
    #[error("{what} has {items} items, above the enumeration cap of {cap}")]
    SizeLimit { what: &'static str, items: usize, cap: usize },

    #[error("malformed arrow presentation: {0}")]
    MalformedPresentation(String),

    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    /// A map that must be plane fails Euler's relation.
    #[error("rotation system is not plane: v - e + f = {euler} but 2k = {expected} (Euler deficit {deficit})")]
    NotPlane {
        euler: i64,
        expected: i64,
        deficit: i64,
    },

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("malformed Gauss code: {0}")]
    MalformedCode(String),

    #[error("component {component} of the diagram has no orientation")]
    MissingOrientation { component: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
