use alloc::string::String;
use core::fmt;

/// Errors reported by the word, substitution and dynamics routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Alphabets need at least two letters.
    AlphabetTooSmall {
        k: usize,
        min: usize,
    },
    LetterOutOfRange {
        letter: u32,
        k: usize,
    },
    EmptyWord,
    AlphabetMismatch {
        left: usize,
        right: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NegativeEntry {
        index: usize,
    },
    NotNormalized,
    /// The last coordinate vanished; the point lives on a smaller alphabet.
    ZeroLastEntry,
    /// `reduce_dimension` was asked to drop a coordinate that is not zero.
    NonZeroComponent {
        index: usize,
    },
    ComponentIndex {
        index: usize,
        k: usize,
    },
    WindowTooSmall {
        requested: usize,
        available: usize,
    },
    CapExceeded {
        size: String,
        cap: usize,
    },
    ItineraryExhausted {
        needed: String,
        available: usize,
    },
    NotAPrefix,
    /// A Hilbert-metric computation met a zero coordinate.
    BoundaryPoint,
    ZeroMatrixEntry {
        row: usize,
        column: usize,
    },
    EmptyItinerary,
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlphabetTooSmall { k, min } => {
                write!(f, "alphabet size {k} is too small (need at least {min})")
            }
            Error::LetterOutOfRange { letter, k } => {
                write!(f, "letter {letter} is outside the alphabet 1..={k}")
            }
            Error::EmptyWord => f.write_str("words must be non-empty"),
            Error::AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: k={left} versus k={right}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NegativeEntry { index } => write!(f, "entry {} is negative", index + 1),
            Error::NotNormalized => f.write_str("entries do not sum to 1"),
            Error::ZeroLastEntry => f.write_str(
                "last entry is zero; drop the letter k and work over k-1 letters \
                 (see reduce_dimension)",
            ),
            Error::NonZeroComponent { index } => {
                write!(f, "component {index} is not zero, cannot delete it")
            }
            Error::ComponentIndex { index, k } => {
                write!(f, "component index {index} must lie in 1..{k}")
            }
            Error::WindowTooSmall {
                requested,
                available,
            } => write!(
                f,
                "window of {requested} letters requested but only {available} are available"
            ),
            Error::CapExceeded { size, cap } => write!(f, "size {size} exceeds the cap {cap}"),
            Error::ItineraryExhausted { needed, available } => {
                write!(f, "itinerary has only {available} entries, {needed} needed")
            }
            Error::NotAPrefix => f.write_str("target word is not a prefix of the sequence"),
            Error::BoundaryPoint => {
                f.write_str("point on the boundary of the simplex (infinite Hilbert distance)")
            }
            Error::ZeroMatrixEntry { row, column } => {
                write!(f, "matrix entry ({}, {}) is zero", row + 1, column + 1)
            }
            Error::EmptyItinerary => f.write_str("itinerary has no entries"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
