//! Itineraries: finite observations and lazily generated specifications.
//!
//! Entries are compared in the reverse lexicographic order (`0 > 1 > 2 > ...`)
//! under which the tower map is order preserving.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// An observed itinerary prefix. `terminated` means the sequence is known to
/// continue with zeros forever after `entries`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Itinerary {
    pub entries: Vec<BigUint>,
    pub terminated: bool,
}

impl Itinerary {
    pub fn terminated(entries: Vec<BigUint>) -> Self {
        let mut it = Itinerary {
            entries,
            terminated: true,
        };
        it.trim_zero_tail();
        it
    }

    pub fn open(entries: Vec<BigUint>) -> Self {
        Itinerary {
            entries,
            terminated: false,
        }
    }

    /// Drops trailing zeros of a terminated itinerary; they carry no
    /// information once the zero tail is known.
    fn trim_zero_tail(&mut self) {
        if self.terminated {
            while self.entries.last().is_some_and(|e| e.is_zero()) {
                self.entries.pop();
            }
        }
    }

    /// Entry `r`, or `None` when the observation stops before `r`.
    pub fn get(&self, r: usize) -> Option<BigUint> {
        match self.entries.get(r) {
            Some(e) => Some(e.clone()),
            None if self.terminated => Some(BigUint::zero()),
            None => None,
        }
    }

    pub fn to_spec(&self) -> ItinerarySpec {
        if self.terminated {
            ItinerarySpec::Terminating(self.entries.clone())
        } else {
            ItinerarySpec::Prefix(self.entries.clone())
        }
    }
}

/// How an itinerary is given: every variant can produce entries on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItinerarySpec {
    /// `n_0 ... n_{r-1}` followed by zeros forever (a rational point).
    Terminating(Vec<BigUint>),
    /// The block repeated forever.
    Periodic(Vec<BigUint>),
    /// Only a finite prefix is known; nothing is asserted about the rest.
    Prefix(Vec<BigUint>),
    /// The minimal sequence with `n_r = 2^{r+2} ∏_{i<r} (n_i + 2)` for
    /// `r >= 1`, starting from `n_0`.
    ExceptionalGrowth { n0: BigUint },
    /// `n_r = coefficient · (r+1)^exponent`.
    Polynomial { coefficient: BigUint, exponent: u32 },
}

impl ItinerarySpec {
    /// A periodic block of zeros is the terminating itinerary `0̄`.
    pub fn normalized(self) -> Self {
        match self {
            ItinerarySpec::Periodic(block) if block.iter().all(|e| e.is_zero()) => {
                ItinerarySpec::Terminating(Vec::new())
            }
            ItinerarySpec::Polynomial { coefficient, .. } if coefficient.is_zero() => {
                ItinerarySpec::Terminating(Vec::new())
            }
            ItinerarySpec::Terminating(entries) => {
                ItinerarySpec::Terminating(Itinerary::terminated(entries).entries)
            }
            other => other,
        }
    }

    pub fn iter(&self) -> Entries<'_> {
        Entries {
            spec: self,
            index: 0,
            growth_product: BigUint::one(),
        }
    }

    /// The first `len` entries, or fewer if a `Prefix` runs out.
    pub fn take(&self, len: usize) -> Vec<BigUint> {
        self.iter().take(len).collect()
    }

    pub fn get(&self, r: usize) -> Option<BigUint> {
        match self {
            ItinerarySpec::Terminating(e) => Some(e.get(r).cloned().unwrap_or_default()),
            ItinerarySpec::Periodic(block) => {
                if block.is_empty() {
                    Some(BigUint::zero())
                } else {
                    Some(block[r % block.len()].clone())
                }
            }
            ItinerarySpec::Prefix(e) => e.get(r).cloned(),
            _ => self.iter().nth(r),
        }
    }

    /// Number of entries available, `None` if unbounded.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            ItinerarySpec::Prefix(e) => Some(e.len()),
            _ => None,
        }
    }

    /// Whether the sequence is eventually zero, when that is decided by the
    /// specification itself.
    pub fn is_terminating(&self) -> bool {
        match self {
            ItinerarySpec::Terminating(_) => true,
            ItinerarySpec::Periodic(block) => block.iter().all(|e| e.is_zero()),
            ItinerarySpec::Polynomial { coefficient, .. } => coefficient.is_zero(),
            _ => false,
        }
    }
}

/// Iterator over the entries of an [`ItinerarySpec`].
#[derive(Clone, Debug)]
pub struct Entries<'a> {
    spec: &'a ItinerarySpec,
    index: usize,
    growth_product: BigUint,
}

impl Iterator for Entries<'_> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let r = self.index;
        let value = match self.spec {
            ItinerarySpec::Terminating(e) => e.get(r).cloned().unwrap_or_default(),
            ItinerarySpec::Periodic(block) => {
                if block.is_empty() {
                    BigUint::zero()
                } else {
                    block[r % block.len()].clone()
                }
            }
            ItinerarySpec::Prefix(e) => e.get(r).cloned()?,
            ItinerarySpec::ExceptionalGrowth { n0 } => {
                let value = if r == 0 {
                    n0.clone()
                } else {
                    (BigUint::one() << (r + 2)) * &self.growth_product
                };
                self.growth_product *= &value + 2u32;
                value
            }
            ItinerarySpec::Polynomial {
                coefficient,
                exponent,
            } => coefficient * BigUint::from(r + 1).pow(*exponent),
        };
        self.index += 1;
        Some(value)
    }
}

/// Reverse lexicographic comparison of two equal-length itinerary prefixes:
/// the larger entry is the *smaller* itinerary.
pub fn compare_itineraries(m: &[BigUint], n: &[BigUint]) -> Ordering {
    for (a, b) in m.iter().zip(n) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}
