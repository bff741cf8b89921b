use thiserror::Error;

use crate::qsym::Basis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of colors must be positive")]
    NoColors,
    #[error("color {color} out of range for m = {m}")]
    ColorOutOfRange { color: u32, m: u32 },
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("values must be positive integers")]
    ZeroValue,
    #[error("value {0} occurs more than once")]
    DuplicateValue(u32),
    #[error("relation references value {0}, which is not an element")]
    UnknownValue(u32),
    #[error("relations contain a cycle")]
    Cyclic,
    #[error("poset has {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("words share the value {0}")]
    OverlappingValues(u32),
    #[error("mismatched number of colors: {0} and {1}")]
    ColorCountMismatch(u32, u32),
    #[error("expected an element in the {expected:?} basis, found {found:?}")]
    WrongBasis { expected: Basis, found: Basis },
    #[error("K-basis key {0} is not a peak composition")]
    NonPeakKey(String),
    #[error("character tuple has {found} entries, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("characters live on different algebras")]
    DomainMismatch,
    #[error("unknown name {0:?}")]
    UnknownName(String),
}

impl Error {
    /// Short name of the violated invariant, used in machine-readable reports.
    pub fn invariant(&self) -> &'static str {
        match self {
            Error::NoColors => "positive-color-count",
            Error::ColorOutOfRange { .. } => "color-range",
            Error::ZeroPart => "positive-parts",
            Error::ZeroValue => "positive-values",
            Error::DuplicateValue(_) => "distinct-values",
            Error::UnknownValue(_) => "relation-endpoints",
            Error::Cyclic => "acyclic-relations",
            Error::TooLarge(_) => "poset-size",
            Error::OverlappingValues(_) => "disjoint-values",
            Error::ColorCountMismatch(..) => "same-color-count",
            Error::WrongBasis { .. } => "basis",
            Error::NonPeakKey(_) => "peak-keys",
            Error::TupleLength { .. } => "tuple-length",
            Error::DomainMismatch => "same-domain",
            Error::UnknownName(_) => "known-name",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
