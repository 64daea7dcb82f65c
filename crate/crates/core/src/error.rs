use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("element {element} does not belong to {ring}")]
    CarrierMismatch { ring: String, element: String },

    #[error("cannot parse ring element `{text}` in {ring}: {reason}")]
    ElementSyntax {
        text: String,
        ring: String,
        reason: String,
    },

    #[error("undecidable at configured bound {bound}: {what}")]
    Undecidable { what: String, bound: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("decomposition is not direct at level {level}")]
    NotDirect { level: usize },

    #[error("point {point} is outside the domain {omega}")]
    Domain { point: String, omega: String },

    #[error("exponent family not unbounded increasing at probe k={k}, i={i}: {reason}")]
    ExponentValidation { k: usize, i: usize, reason: String },

    #[error("series has no vanishing tail before index {0}")]
    SeriesTruncation(usize),

    #[error("leading jet coefficient {0} is not a unit")]
    NonInvertibleLeading(String),

    #[error("jet mismatch: {0}")]
    JetMismatch(String),

    #[error("composability violated: {0}")]
    Composability(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("requested depth {requested} exceeds the allowed maximum {max}")]
    DepthExceeded { requested: usize, max: usize },

    #[error("value would have about {digits} decimal digits, above the cap of {cap}")]
    TooLarge { digits: u64, cap: u64 },

    #[error("parse error at position {position}: expected {expected}, found {found}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("invalid algebra document: {0}")]
    Document(String),
}
