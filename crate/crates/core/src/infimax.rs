//! Infimax sequences `W(n) = lim Λ_{n,r}(k̄)` and finite witnesses for their
//! defining properties.
//!
//! Here `Λ_{n,r}` is `Λ_{n_0} ∘ ... ∘ Λ_{n_r}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::itinerary::ItinerarySpec;
use crate::simplex::{itinerary, RationalPoint};
use crate::substitution::{tower_apply_truncated, tower_image_lengths};
use crate::word::{is_maximal_prefix_consistent, sup_orbit_start, Alphabet, Letter, Word};

/// Where an infimax sequence comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfimaxSource {
    /// The infimax of the rotation vector, via its itinerary.
    Point(RationalPoint),
    /// `W(n)` for an itinerary given directly.
    Itinerary(ItinerarySpec),
}

/// A computed prefix of `W(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfimaxPrefix {
    pub word: Word,
    /// Number of itinerary entries consumed.
    pub depth: usize,
    pub itinerary_used: Vec<BigUint>,
    /// `|Λ_{n,r}(k)|` for the entries used.
    pub exact_total_length: BigUint,
    /// The itinerary ends in `0̄`, so `word` repeats `Λ_{n,r}(k)`.
    pub periodic: bool,
}

/// The first `len` letters of `W(n)`.
pub fn infimax_prefix(source: &InfimaxSource, k: usize, len: usize) -> Result<InfimaxPrefix> {
    let alphabet = Alphabet::new(k)?;
    if len == 0 {
        return Err(Error::WindowTooSmall {
            requested: 0,
            available: 0,
        });
    }
    match source {
        InfimaxSource::Point(alpha) => {
            if alpha.k() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: alpha.k(),
                });
            }
            let it = itinerary(alpha, usize::MAX);
            Ok(periodic_prefix(it.entries, alphabet, len))
        }
        InfimaxSource::Itinerary(spec) => itinerary_prefix(spec, alphabet, len),
    }
}

fn periodic_prefix(entries: Vec<BigUint>, alphabet: Alphabet, len: usize) -> InfimaxPrefix {
    let base = tower_apply_truncated(&entries, alphabet, &[alphabet.top()], len);
    let letters: Vec<Letter> = base.iter().copied().cycle().take(len).collect();
    let exact_total_length = tower_image_lengths(&entries, alphabet)
        .pop()
        .expect("k >= 2");
    InfimaxPrefix {
        word: Word::new(alphabet, letters).expect("letters in range"),
        depth: entries.len(),
        itinerary_used: entries,
        exact_total_length,
        periodic: true,
    }
}

fn itinerary_prefix(spec: &ItinerarySpec, alphabet: Alphabet, len: usize) -> Result<InfimaxPrefix> {
    let spec = spec.clone().normalized();
    if let ItinerarySpec::Terminating(entries) = spec {
        return Ok(periodic_prefix(entries, alphabet, len));
    }
    let (entries, lengths) = entries_until_length(&spec, alphabet, &BigUint::from(len))?;
    let letters = tower_apply_truncated(&entries, alphabet, &[alphabet.top()], len);
    Ok(InfimaxPrefix {
        word: Word::new(alphabet, letters)?,
        depth: entries.len(),
        itinerary_used: entries,
        exact_total_length: lengths[alphabet.k() - 1].clone(),
        periodic: false,
    })
}

/// The shortest run of entries `n_0..=n_r` with `|Λ_{n,r}(k)| >= len`,
/// together with all `|Λ_{n,r}(i)|`.
fn entries_until_length(
    spec: &ItinerarySpec,
    alphabet: Alphabet,
    len: &BigUint,
) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
    let k = alphabet.k();
    let mut entries = Vec::new();
    let mut lengths = vec![BigUint::one(); k];
    for n in spec.iter() {
        push_branch_lengths(&mut lengths, &n);
        entries.push(n);
        if lengths[k - 1] >= *len {
            return Ok((entries, lengths));
        }
    }
    Err(Error::ItineraryExhausted {
        needed: format!("{len} letters"),
        available: entries.len(),
    })
}

/// Updates `|Λ_{n,r}(i)|` to `|Λ_{n,r+1}(i)|` given `n_{r+1}`.
fn push_branch_lengths(lengths: &mut Vec<BigUint>, n: &BigUint) {
    let k = lengths.len();
    let first = lengths[0].clone();
    let last = lengths[k - 1].clone();
    lengths.remove(0);
    let len = lengths.len();
    lengths[len - 1] = &first * (n + 1u32) + &last;
    lengths.push(&first * n + &last);
}

/// Outcome of comparing the infimax with the supremum of a word's orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundVerdict {
    /// `infimax ≤ sup` on the window.
    pub holds: bool,
    pub equal: bool,
    /// First index where the two windows differ.
    pub first_difference: Option<usize>,
    /// Where in `w` the largest window starts.
    pub sup_start: usize,
    pub infimax: Vec<Letter>,
    pub sup: Vec<Letter>,
}

/// Compares the first `len` letters of the infimax of `α` with the largest
/// length-`len` window of `w`.
pub fn check_lower_bound(
    alpha: &RationalPoint,
    w: &[Letter],
    len: usize,
) -> Result<LowerBoundVerdict> {
    if len == 0 || len > w.len() {
        return Err(Error::WindowTooSmall {
            requested: len,
            available: w.len(),
        });
    }
    let inf = infimax_prefix(&InfimaxSource::Point(alpha.clone()), alpha.k(), len)?
        .word
        .into_letters();
    let (sup_start, sup) = sup_orbit_start(w, len);
    let first_difference = inf.iter().zip(sup).position(|(a, b)| a != b);
    let ord = inf.as_slice().cmp(sup);
    Ok(LowerBoundVerdict {
        holds: ord != Ordering::Greater,
        equal: ord == Ordering::Equal,
        first_difference,
        sup_start,
        infimax: inf,
        sup: sup.to_vec(),
    })
}

/// A maximal word whose head is `Λ_{n,R}(k)`, assembled as
/// `U W_0^{p_0} W_1^{p_1} ...` from rational approximants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    /// The first letters of the witness (up to the requested length).
    pub word: Vec<Letter>,
    /// The depth `R` actually used (raised until `n_{R+1} > 0`).
    pub depth: usize,
    pub u_length: BigUint,
    /// `(p_r, |W_r|)` for each approximant block written.
    pub schedule: Vec<(BigUint, BigUint)>,
    /// `|Λ_{n,R}(k)|`, the guaranteed agreement with the infimax.
    pub target_length: BigUint,
    /// Length of the common prefix with the infimax.
    pub agreement: usize,
    pub maximal_consistent: bool,
    /// The itinerary terminates, so the periodic minimax itself is used.
    pub periodic: bool,
}

/// Builds the closure witness for `W(n)` at depth `depth`, materializing at
/// most `max_len` letters.
///
/// `W_r` is the tower of `n_0, ..., n_{R+1+r}`, that is the itinerary cut
/// after `R + 2 + r` entries; `p_r` is the least integer `>= 1` with
/// `Σ_{s<=r} p_s |W_s| > 2^r |W_{r+1}|`.
pub fn closure_witness(
    spec: &ItinerarySpec,
    k: usize,
    depth: usize,
    max_len: usize,
) -> Result<ClosureWitness> {
    let alphabet = Alphabet::new(k)?;
    let spec = spec.clone().normalized();
    if let ItinerarySpec::Terminating(entries) = &spec {
        let inf = periodic_prefix(entries.clone(), alphabet, max_len);
        let word = inf.word.into_letters();
        return Ok(ClosureWitness {
            maximal_consistent: is_maximal_prefix_consistent(&word),
            agreement: word.len(),
            word,
            depth: entries.len(),
            u_length: inf.exact_total_length.clone(),
            schedule: Vec::new(),
            target_length: inf.exact_total_length,
            periodic: true,
        });
    }
    let mut r_depth = depth;
    loop {
        match spec.get(r_depth + 1) {
            Some(n) if !n.is_zero() => break,
            Some(_) => r_depth += 1,
            None => {
                return Err(Error::ItineraryExhausted {
                    needed: format!("a non-zero entry after position {depth}"),
                    available: r_depth + 1,
                })
            }
        }
    }
    let mut head: Vec<BigUint> = spec.take(r_depth + 2);
    if head.len() < r_depth + 2 {
        return Err(Error::ItineraryExhausted {
            needed: format!("{} entries", r_depth + 2),
            available: head.len(),
        });
    }
    let target_length = tower_image_lengths(&head[..=r_depth], alphabet)
        .pop()
        .expect("k >= 2");

    let mut u_branches = head.clone();
    *u_branches.last_mut().expect("non-empty") -= 1u32;
    let mut word = tower_apply_truncated(&u_branches, alphabet, &[alphabet.top()], max_len);
    let u_length = tower_image_lengths(&u_branches, alphabet)
        .pop()
        .expect("k >= 2");

    let mut entries = spec.iter().skip(head.len());
    let block_len = |branches: &[BigUint]| {
        tower_image_lengths(branches, alphabet)
            .pop()
            .expect("k >= 2")
    };
    let mut current_len = block_len(&head);
    let mut schedule = Vec::new();
    let mut written = BigUint::zero();
    let mut r = 0usize;
    while word.len() < max_len {
        let block = tower_apply_truncated(&head, alphabet, &[alphabet.top()], max_len);
        let Some(next) = entries.next() else {
            return Err(Error::ItineraryExhausted {
                needed: format!("{} entries", head.len() + 1),
                available: head.len(),
            });
        };
        head.push(next);
        let next_len = block_len(&head);
        let bound = (BigUint::one() << r) * &next_len;
        let p = if written > bound {
            BigUint::one()
        } else {
            ((&bound - &written) / &current_len + 1u32).max(BigUint::one())
        };
        written += &p * &current_len;
        let reps = p.to_usize().unwrap_or(usize::MAX);
        for _ in 0..reps {
            if word.len() >= max_len {
                break;
            }
            let room = max_len - word.len();
            word.extend_from_slice(&block[..block.len().min(room)]);
        }
        schedule.push((p, current_len));
        current_len = next_len;
        r += 1;
    }

    let inf = itinerary_prefix(&spec, alphabet, word.len())?
        .word
        .into_letters();
    let agreement = word.iter().zip(&inf).take_while(|(a, b)| a == b).count();
    Ok(ClosureWitness {
        maximal_consistent: is_maximal_prefix_consistent(&word),
        word,
        depth: r_depth,
        u_length,
        schedule,
        target_length,
        agreement,
        periodic: false,
    })
}

/// A window length `N` such that every length-`N` factor of `W(n)` contains
/// the target word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostPeriod {
    pub window: BigUint,
    /// Depth `r` at which the target is a prefix of `Λ_{n,r}(k)`; `None` for
    /// periodic sources.
    pub depth: Option<usize>,
    /// Result of checking every window of a generated prefix, when `N` was
    /// small enough to check.
    pub verified: Option<bool>,
}

/// `N = 2 max_i |Λ_{n,r+k-1}(i)|` for the least `r` with the target a prefix
/// of `Λ_{n,r}(k)`. Periodic sources with period `P` use
/// `max(2|P|, |P| + |target| - 1)`. Windows are spot-checked on a prefix of
/// at most `check_cap` letters.
pub fn almost_period_witness(
    spec: &ItinerarySpec,
    k: usize,
    target: &[Letter],
    check_cap: usize,
) -> Result<AlmostPeriod> {
    let alphabet = Alphabet::new(k)?;
    if target.is_empty() {
        return Err(Error::EmptyWord);
    }
    let spec = spec.clone().normalized();
    let (window, depth) = if let ItinerarySpec::Terminating(entries) = &spec {
        let inf = periodic_prefix(entries.clone(), alphabet, target.len());
        if inf.word.letters() != target {
            return Err(Error::NotAPrefix);
        }
        let p = inf.exact_total_length;
        let t = BigUint::from(target.len());
        let window = (&p * 2u32).max(&p + &t - 1u32);
        (window, None)
    } else {
        let (entries, _) = entries_until_length(&spec, alphabet, &BigUint::from(target.len()))?;
        let r = entries.len() - 1;
        let head = tower_apply_truncated(&entries, alphabet, &[alphabet.top()], target.len());
        if head != target {
            return Err(Error::NotAPrefix);
        }
        let deep = spec.take(r + k);
        if deep.len() < r + k {
            return Err(Error::ItineraryExhausted {
                needed: format!("{} entries", r + k),
                available: deep.len(),
            });
        }
        let longest = tower_image_lengths(&deep, alphabet)
            .into_iter()
            .max()
            .expect("k >= 2");
        (longest * 2u32, Some(r))
    };
    let verified = match window.to_usize() {
        Some(n) if n.saturating_mul(4) <= check_cap => {
            let len = n * 4;
            let prefix = infimax_prefix(&InfimaxSource::Itinerary(spec), k, len)?;
            Some(every_window_contains(prefix.word.letters(), target, n))
        }
        _ => None,
    };
    Ok(AlmostPeriod {
        window,
        depth,
        verified,
    })
}

/// Whether every length-`n` factor of `text` contains `pattern`.
pub fn every_window_contains(text: &[Letter], pattern: &[Letter], n: usize) -> bool {
    if n > text.len() {
        return true;
    }
    if pattern.len() > n {
        return false;
    }
    let slack = n - pattern.len();
    let mut last_gap_start = 0usize;
    let mut found_any = false;
    for start in 0..=text.len() - pattern.len() {
        if &text[start..start + pattern.len()] == pattern {
            if start - last_gap_start > slack && last_gap_start <= text.len() - n {
                return false;
            }
            last_gap_start = start + 1;
            found_any = true;
        }
    }
    found_any && text.len() - n < last_gap_start
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimax::min_periodic;
    use alloc::string::ToString;

    const FIXED_POINT_64: &str = "3123113122312311311312311312231223123113122312311311312311311312";

    fn ones() -> ItinerarySpec {
        ItinerarySpec::Periodic(vec![BigUint::one()])
    }

    #[test]
    fn fixed_point_prefix() {
        let p = infimax_prefix(&InfimaxSource::Itinerary(ones()), 3, 64).unwrap();
        assert_eq!(p.word.to_string(), FIXED_POINT_64);
        assert!(p.exact_total_length >= BigUint::from(64u32));
        assert!(!p.periodic);
    }

    #[test]
    fn rational_source_repeats_minimax() {
        let a = RationalPoint::from_ratios(&[(24, 41), (3, 41), (14, 41)]).unwrap();
        let p = infimax_prefix(&InfimaxSource::Point(a.clone()), 3, 82).unwrap();
        let period = min_periodic(&a).word(100).unwrap();
        assert_eq!(p.word, period.power(2).unwrap());
        assert!(p.periodic);
        let t = RationalPoint::terminal(Alphabet::new(4).unwrap());
        let p = infimax_prefix(&InfimaxSource::Point(t), 4, 7).unwrap();
        assert_eq!(p.word.to_string(), "4444444");
    }

    #[test]
    fn prefix_sources_can_run_out() {
        let spec = ItinerarySpec::Prefix(vec![BigUint::one(), BigUint::one()]);
        assert!(infimax_prefix(&InfimaxSource::Itinerary(spec.clone()), 3, 3).is_ok());
        assert!(matches!(
            infimax_prefix(&InfimaxSource::Itinerary(spec), 3, 64),
            Err(Error::ItineraryExhausted { .. })
        ));
    }

    #[test]
    fn lower_bound_examples() {
        let half = RationalPoint::from_ratios(&[(1, 2), (1, 2)]).unwrap();
        let w: Vec<Letter> = [1, 2].repeat(10);
        let v = check_lower_bound(&half, &w, 8).unwrap();
        assert!(v.holds && v.equal);
        assert_eq!(v.sup_start, 1);

        let a = RationalPoint::from_ratios(&[(24, 41), (3, 41), (14, 41)]).unwrap();
        let period = min_periodic(&a).word(100).unwrap().into_letters();
        let mut w = period.repeat(3);
        w.rotate_left(17);
        let v = check_lower_bound(&a, &w, 41).unwrap();
        assert!(v.holds && v.equal);

        let t = RationalPoint::terminal(Alphabet::new(3).unwrap());
        let v = check_lower_bound(&t, &[3, 3, 3, 3], 3).unwrap();
        assert!(v.equal);
        assert!(check_lower_bound(&t, &[3, 3], 3).is_err());
    }

    #[test]
    fn closure_witness_for_fixed_point() {
        let c = closure_witness(&ones(), 3, 3, 4000).unwrap();
        assert!(c.maximal_consistent);
        assert!(BigUint::from(c.agreement) >= c.target_length);
        assert_eq!(c.word.len(), 4000);
        // U ends in Λ_{n,R}(Λ_0(k)) = Λ_{n,R}(k), a strict prefix of W.
        assert_eq!(c.u_length, c.target_length);
        let periodic = ItinerarySpec::Terminating(vec![
            BigUint::one(),
            BigUint::zero(),
            BigUint::from(10u32),
            BigUint::from(3u32),
        ]);
        let c = closure_witness(&periodic, 3, 2, 100).unwrap();
        assert!(c.periodic && c.maximal_consistent);
    }

    #[test]
    fn schedule_meets_growth_condition() {
        let c = closure_witness(&ones(), 3, 2, 20000).unwrap();
        let mut sum = BigUint::zero();
        for (r, w) in c.schedule.windows(2).enumerate() {
            sum += &w[0].0 * &w[0].1;
            assert!(sum > (BigUint::one() << r) * &w[1].1);
        }
    }

    #[test]
    fn almost_period_examples() {
        let ap = almost_period_witness(&ones(), 3, &[3], 1 << 16).unwrap();
        assert_eq!(ap.depth, Some(0));
        assert_eq!(ap.verified, Some(true));
        let ap = almost_period_witness(&ones(), 3, &[3, 1, 2, 3, 1], 1 << 16).unwrap();
        assert_eq!(ap.verified, Some(true));
        assert!(matches!(
            almost_period_witness(&ones(), 3, &[3, 3], 1 << 16),
            Err(Error::NotAPrefix)
        ));
        let periodic = ItinerarySpec::Terminating(vec![BigUint::one()]);
        let ap = almost_period_witness(&periodic, 3, &[3, 1, 3], 1 << 16).unwrap();
        assert_eq!(ap.window, BigUint::from(4u32));
        assert_eq!(ap.verified, Some(true));
    }

    #[test]
    fn window_scan() {
        assert!(every_window_contains(&[1, 2, 1, 2, 1], &[1], 2));
        assert!(!every_window_contains(&[1, 2, 2, 1], &[1], 2));
        assert!(!every_window_contains(&[1, 2, 1, 2, 2], &[1], 2));
        assert!(every_window_contains(&[1, 2, 1, 2, 2], &[1], 3));
    }
}
