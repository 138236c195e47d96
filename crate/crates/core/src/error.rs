use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition with {parts} parts does not fit in {slots} beta slots")]
    SlotsTooFew { parts: usize, slots: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse { what: &'static str, input: String, reason: String },

    #[error("operation is not defined for the {0} series")]
    UnsupportedFamily(&'static str),

    #[error("extremal classification is only available for defect classes 0/±1 and ±2 (n >= 1)")]
    InvalidClass,

    #[error("symbol {symbol} has defect {defect}, outside the {expected} residue class")]
    BadDefectClass { symbol: String, defect: i32, expected: &'static str },

    #[error("first-occurrence search passed its cap of {cap} without finding a partner")]
    CapExceeded { cap: u32 },

    #[error("symbol {0} belongs to no series with a preservation identity")]
    SeriesUndetermined(String),

    #[error("dimension mismatch: family requires {expected}, components give {actual}")]
    DimensionMismatch { expected: u32, actual: u32 },

    #[error("wrong series: {0}")]
    WrongSeries(String),

    #[error("odd orthogonal characters need a sign bit")]
    MissingSignBit,

    #[error("field {0} is not used by this family")]
    SpuriousField(&'static str),

    #[error("operation requires a {expected} character")]
    WrongFamily { expected: &'static str },

    #[error("no correspondence is modelled between these two families")]
    UnsupportedPair,

    #[error("target is not a Witt series related to this character")]
    UnsupportedTarget,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_error(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse { what, input: input.to_string(), reason: reason.into() }
}
