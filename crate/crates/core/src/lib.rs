//! Minimax words, infimax sequences and the regular/exceptional dichotomy for
//! the lexicographic order on `k`-letter sequences.
//!
//! Everything here is exact: words are vectors of letters, points of the
//! simplex are big rationals and abelianization matrices carry big integers.
//! The only floating point values are the Birkhoff contraction coefficient and
//! logarithms of Hilbert ratios, which are reported for display.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod infimax;
pub mod itinerary;
pub mod linalg;
pub mod minimax;
pub mod regularity;
pub mod simplex;
pub mod substitution;
pub mod word;

pub use error::{Error, Result};
pub use infimax::{infimax_prefix, InfimaxPrefix, InfimaxSource};
pub use itinerary::{Itinerary, ItinerarySpec};
pub use minimax::{minimax, CountVector, MinimaxSolution};
pub use regularity::{classify, Classification, HilbertRatio, Verdict};
pub use simplex::RationalPoint;
pub use substitution::{AbelianMatrix, Substitution};
pub use word::{Alphabet, Letter, Word};
