//! Smallest maximal words with prescribed letter counts.
//!
//! The division-remainder step `K̂_n` peels one substitution `Λ_n` off the
//! answer at a time: the minimax word for `α̂` is `Λ_n` of the minimax word for
//! `K̂_n(α̂)`, bottoming out at `k^c` once only the last letter is left.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::simplex::RationalPoint;
use crate::substitution::{tower_apply_truncated, tower_image_lengths};
use crate::word::{is_maximal_word, render_letters, Alphabet, Letter, MaximalPrefixTracker, Word};

/// Default limit on the length of fully materialized minimax words.
pub const DEFAULT_WORD_CAP: usize = 1 << 24;

/// Default limit on `Σ α̂_i` for the brute-force oracle.
pub const DEFAULT_ORACLE_CAP: usize = 14;

/// Integer letter counts `α̂` with a positive last entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountVector {
    entries: Vec<BigUint>,
}

impl CountVector {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        Alphabet::new(entries.len())?;
        if entries[entries.len() - 1].is_zero() {
            return Err(Error::ZeroLastEntry);
        }
        Ok(CountVector { entries })
    }

    pub fn from_u64(entries: &[u64]) -> Result<Self> {
        CountVector::new(entries.iter().map(|&x| BigUint::from(x)).collect())
    }

    #[inline]
    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.k()).expect("validated on construction")
    }

    pub fn total(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Only the last letter is present.
    pub fn is_terminal(&self) -> bool {
        self.entries[..self.k() - 1].iter().all(Zero::is_zero)
    }

    /// `n = ⌊α̂_1 / α̂_k⌋`.
    pub fn khat_branch(&self) -> BigUint {
        &self.entries[0] / &self.entries[self.k() - 1]
    }

    /// `K̂_n(α̂) = (α̂_2, ..., α̂_{k-1}, α̂_1 - n α̂_k, (n+1) α̂_k - α̂_1)` with
    /// `n` the branch of `α̂`; the entry sum drops by `α̂_1`.
    pub fn khat_step(&self) -> CountVector {
        let n = self.khat_branch();
        let k = self.k();
        let first = &self.entries[0];
        let last = &self.entries[k - 1];
        let mut out = Vec::with_capacity(k);
        out.extend_from_slice(&self.entries[1..k - 1]);
        out.push(first - &n * last);
        out.push((&n + 1u32) * last - first);
        CountVector { entries: out }
    }

    /// `K̂_n^{-1}`, the abelianization of `Λ_n`.
    pub fn khat_inverse(&self, n: &BigUint) -> CountVector {
        let k = self.k();
        let e = &self.entries;
        let mut out = Vec::with_capacity(k);
        out.push((n + 1u32) * &e[k - 2] + n * &e[k - 1]);
        out.extend_from_slice(&e[..k - 2]);
        out.push(&e[k - 2] + &e[k - 1]);
        CountVector { entries: out }
    }

    /// The chain `α̂ → K̂(α̂) → ...` down to `(0, ..., 0, c)`. Each element
    /// pairs a vector with the branch taken from it; the last element is the
    /// terminal vector with no branch.
    pub fn chain(&self) -> Vec<(CountVector, Option<BigUint>)> {
        let mut out = Vec::new();
        let mut current = self.clone();
        while !current.is_terminal() {
            let n = current.khat_branch();
            let next = current.khat_step();
            out.push((current, Some(n)));
            current = next;
        }
        out.push((current, None));
        out
    }

    pub fn to_point(&self) -> RationalPoint {
        RationalPoint::from_counts(&self.entries).expect("last entry positive")
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The minimax word for some `α̂`, kept as its substitution stack:
/// `Λ_{n_0} ∘ ... ∘ Λ_{n_{r-1}}(k)` repeated `repetitions` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimaxSolution {
    alphabet: Alphabet,
    branches: Vec<BigUint>,
    repetitions: BigUint,
    period_length: BigUint,
}

impl MinimaxSolution {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// `n_0, ..., n_{r-1}`, outermost substitution first.
    pub fn branches(&self) -> &[BigUint] {
        &self.branches
    }

    pub fn repetitions(&self) -> &BigUint {
        &self.repetitions
    }

    /// Length of `Λ_{n_0} ∘ ... ∘ Λ_{n_{r-1}}(k)`.
    pub fn period_length(&self) -> &BigUint {
        &self.period_length
    }

    pub fn length(&self) -> BigUint {
        &self.period_length * &self.repetitions
    }

    /// The whole word, provided it has at most `cap` letters.
    pub fn word(&self, cap: usize) -> Result<Word> {
        let len = self.length();
        match len.to_usize() {
            Some(l) if l <= cap => Word::new(self.alphabet, self.prefix(l)),
            _ => Err(Error::CapExceeded {
                size: format!("{len}"),
                cap,
            }),
        }
    }

    /// The word `Λ_{n_0} ∘ ... ∘ Λ_{n_{r-1}}(k)` whose repetition is the answer.
    pub fn period(&self, cap: usize) -> Result<Word> {
        let len = &self.period_length;
        match len.to_usize() {
            Some(l) if l <= cap => Word::new(
                self.alphabet,
                tower_apply_truncated(&self.branches, self.alphabet, &[self.alphabet.top()], l),
            ),
            _ => Err(Error::CapExceeded {
                size: format!("{len}"),
                cap,
            }),
        }
    }

    /// The first `len` letters of the infinite repetition of the period.
    pub fn periodic_prefix(&self, len: usize) -> Vec<Letter> {
        let base =
            tower_apply_truncated(&self.branches, self.alphabet, &[self.alphabet.top()], len);
        base.iter().copied().cycle().take(len).collect()
    }

    /// First `len` letters of the word (at most its full length).
    pub fn prefix(&self, len: usize) -> Vec<Letter> {
        let total = self.length().to_usize().unwrap_or(usize::MAX);
        self.periodic_prefix(len.min(total))
    }

    /// Compact rendering in power notation, e.g. `31(311)^10(312)^3`.
    /// `None` if some repeated block would be too long to spell out.
    pub fn power_form(&self) -> Option<PowerWord> {
        PowerWord::from_solution(self)
    }
}

/// `ÎF(α̂)`: the minimum maximal word with counts `α̂`, as a substitution stack.
pub fn minimax(alpha: &CountVector) -> MinimaxSolution {
    let alphabet = alpha.alphabet();
    let mut branches = Vec::new();
    let mut current = alpha.clone();
    while !current.is_terminal() {
        branches.push(current.khat_branch());
        current = current.khat_step();
    }
    let repetitions = current.entries[current.k() - 1].clone();
    let period_length = tower_image_lengths(&branches, alphabet)
        .pop()
        .expect("k >= 2");
    MinimaxSolution {
        alphabet,
        branches,
        repetitions,
        period_length,
    }
}

/// [`minimax`] materialized, for words up to [`DEFAULT_WORD_CAP`] letters.
pub fn minimax_word(alpha: &CountVector) -> Result<Word> {
    minimax(alpha).word(DEFAULT_WORD_CAP)
}

/// `MP(α)`: the period of the minimum periodic maximal sequence with
/// proportions `α`.
pub fn min_periodic(alpha: &RationalPoint) -> MinimaxSolution {
    let counts = CountVector::new(alpha.primitive_counts()).expect("last entry positive");
    minimax(&counts)
}

fn small_counts(alpha: &CountVector, cap: usize) -> Result<Vec<usize>> {
    let total = alpha.total();
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            size: format!("{total}"),
            cap,
        });
    }
    Ok(alpha
        .entries()
        .iter()
        .map(|e| e.to_usize().expect("bounded by cap"))
        .collect())
}

/// Reference answer by search: arrangements with the given counts are visited
/// in increasing lexicographic order, discarding any prefix some suffix of
/// which already beats it; the first complete maximal word is the minimum.
pub fn brute_force_minimax(alpha: &CountVector, cap: usize) -> Result<Word> {
    let mut remaining = small_counts(alpha, cap)?;
    let total: usize = remaining.iter().sum();
    let mut tracker = MaximalPrefixTracker::new();
    let found = search(&mut remaining, &mut tracker, total);
    debug_assert!(found, "every count vector admits a maximal arrangement");
    let letters = tracker.letters().to_vec();
    debug_assert!(is_maximal_word(&letters));
    Word::new(alpha.alphabet(), letters)
}

fn search(remaining: &mut [usize], tracker: &mut MaximalPrefixTracker, total: usize) -> bool {
    if tracker.len() == total {
        return tracker.is_maximal_word();
    }
    for idx in 0..remaining.len() {
        if remaining[idx] == 0 {
            continue;
        }
        let letter = idx as Letter + 1;
        if !tracker.push(letter) {
            continue;
        }
        remaining[idx] -= 1;
        if search(remaining, tracker, total) {
            return true;
        }
        remaining[idx] += 1;
        tracker.pop();
    }
    false
}

/// Second reference: every arrangement is rotated to its largest rotation
/// and the smallest of those is returned. No pruning; small inputs only.
pub fn brute_force_minimax_by_rotation(alpha: &CountVector, cap: usize) -> Result<Word> {
    let counts = small_counts(alpha, cap)?;
    let mut letters: Vec<Letter> = counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| core::iter::repeat_n(i as Letter + 1, c))
        .collect();
    let mut best: Option<Vec<Letter>> = None;
    loop {
        let n = letters.len();
        let top = (0..n)
            .map(|s| {
                let mut r = letters.clone();
                r.rotate_left(s);
                r
            })
            .max()
            .expect("non-empty");
        if best.as_ref().is_none_or(|b| top < *b) {
            best = Some(top);
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    Word::new(alpha.alphabet(), best.expect("at least one arrangement"))
}

/// Advances to the next multiset permutation in lexicographic order.
pub fn next_permutation(v: &mut [Letter]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A word written as a sequence of repeated blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWord {
    k: usize,
    runs: Vec<(Vec<Letter>, BigUint)>,
}

/// Longest block spelled out inside a power.
const MAX_BLOCK: usize = 1 << 16;

impl PowerWord {
    fn from_solution(sol: &MinimaxSolution) -> Option<Self> {
        let alphabet = sol.alphabet;
        let mut runs = vec![(vec![alphabet.top()], sol.repetitions.clone())];
        for n in sol.branches.iter().rev() {
            let mut next: Vec<(Vec<Letter>, BigUint)> = Vec::new();
            for (block, count) in runs {
                if count.is_one() {
                    for &l in &block {
                        for (b, c) in lambda_letter_runs(n, alphabet, l) {
                            push_run(&mut next, b, c);
                        }
                    }
                } else {
                    let len = block.len();
                    let image = tower_apply_truncated(
                        core::slice::from_ref(n),
                        alphabet,
                        &block,
                        MAX_BLOCK + 1,
                    );
                    if image.len() > MAX_BLOCK || image.len() < len {
                        return None;
                    }
                    push_run(&mut next, image, count);
                }
            }
            runs = next;
        }
        Some(PowerWord {
            k: alphabet.k(),
            runs,
        })
    }

    /// Compresses an explicit word into the shortest rendering that uses
    /// blocks of at most `max_block` letters, each taken with its maximal
    /// repetition count.
    pub fn from_letters(k: usize, letters: &[Letter], max_block: usize) -> Self {
        let n = letters.len();
        let max_block = max_block.max(1);
        // cost[i]: rendered length of letters[i..]; choice[i]: (block, reps).
        let mut cost = vec![0usize; n + 1];
        let mut choice = vec![(1usize, 1usize); n];
        // run[b - 1]: how far letters[j] == letters[j + b] holds from i on.
        let mut run = vec![0usize; max_block];
        for i in (0..n).rev() {
            cost[i] = 1 + cost[i + 1];
            for b in 1..=max_block {
                if i + b >= n {
                    run[b - 1] = 0;
                    continue;
                }
                run[b - 1] = if letters[i] == letters[i + b] {
                    run[b - 1] + 1
                } else {
                    0
                };
                let c = 1 + run[b - 1] / b;
                if c < 2 {
                    continue;
                }
                let shape = if b == 1 { 1 } else { b + 2 };
                let digits = c.ilog10() as usize + 1;
                let total = shape + 1 + digits + cost[i + b * c];
                if total < cost[i] {
                    cost[i] = total;
                    choice[i] = (b, c);
                }
            }
        }
        let mut runs: Vec<(Vec<Letter>, BigUint)> = Vec::new();
        let mut i = 0;
        while i < n {
            let (b, c) = choice[i];
            push_run(&mut runs, letters[i..i + b].to_vec(), BigUint::from(c));
            i += b * c;
        }
        PowerWord { k, runs }
    }

    pub fn runs(&self) -> &[(Vec<Letter>, BigUint)] {
        &self.runs
    }

    /// Spells the word out, failing past `cap` letters.
    pub fn expand(&self, cap: usize) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for (block, count) in &self.runs {
            let c = count.to_usize().unwrap_or(usize::MAX);
            let len = block.len().saturating_mul(c);
            if out.len().saturating_add(len) > cap {
                return Err(Error::CapExceeded {
                    size: format!("{}", count * block.len()),
                    cap,
                });
            }
            for _ in 0..c {
                out.extend_from_slice(block);
            }
        }
        Ok(out)
    }
}

fn lambda_letter_runs(n: &BigUint, alphabet: Alphabet, l: Letter) -> Vec<(Vec<Letter>, BigUint)> {
    let k = alphabet.top();
    if l + 1 < k {
        return vec![(vec![l + 1], BigUint::one())];
    }
    let ones = if l == k { n.clone() } else { n + 1u32 };
    let mut out = vec![(vec![k], BigUint::one())];
    if !ones.is_zero() {
        out.push((vec![1], ones));
    }
    out
}

fn push_run(runs: &mut Vec<(Vec<Letter>, BigUint)>, block: Vec<Letter>, count: BigUint) {
    if let Some((last, c)) = runs.last_mut() {
        if *last == block {
            *c += count;
            return;
        }
    }
    runs.push((block, count));
}

impl fmt::Display for PowerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.k > 9 { "," } else { "" };
        let mut first = true;
        let mut after_power = false;
        for (block, count) in &self.runs {
            if !first {
                f.write_str(sep)?;
                if after_power && sep.is_empty() && count.is_one() {
                    f.write_str(" ")?;
                }
            }
            first = false;
            after_power = !count.is_one();
            let body: String = render_letters(block, self.k);
            if count.is_one() {
                f.write_str(&body)?;
            } else if block.len() == 1 {
                write!(f, "{body}^{count}")?;
            } else {
                write!(f, "({body})^{count}")?;
            }
        }
        Ok(())
    }
}
