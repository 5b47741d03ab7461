//! Finite words over `{1, ..., k}` and the two lexicographic conventions used
//! throughout the crate.
//!
//! Finite words compared as elements of `A*` use the rule that a proper
//! initial subword is *greater* than the longer word. Equal-length words and
//! prefixes of infinite sequences compare plainly, letter by letter.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// A letter of the alphabet, always in `1..=k`.
pub type Letter = u32;

/// Alphabet `{1, ..., k}` with `k >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::AlphabetTooSmall { k, min: 2 });
        }
        Ok(Alphabet(k))
    }

    #[inline]
    pub fn k(self) -> usize {
        self.0
    }

    /// The largest letter, `k`.
    #[inline]
    pub fn top(self) -> Letter {
        self.0 as Letter
    }

    pub fn check_letter(self, letter: Letter) -> Result<()> {
        if letter == 0 || letter as usize > self.0 {
            Err(Error::LetterOutOfRange { letter, k: self.0 })
        } else {
            Ok(())
        }
    }
}

/// A non-empty finite word with cached letter counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
    counts: Vec<usize>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut counts = vec![0usize; alphabet.k()];
        for &l in &letters {
            alphabet.check_letter(l)?;
            counts[l as usize - 1] += 1;
        }
        Ok(Word {
            alphabet,
            letters,
            counts,
        })
    }

    pub fn from_slice(alphabet: Alphabet, letters: &[Letter]) -> Result<Self> {
        Word::new(alphabet, letters.to_vec())
    }

    /// Parses either concatenated digits (`"422234141"`, only for `k <= 9`)
    /// or comma separated integers (`"10,1,1,3"`).
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self> {
        let s = s.trim();
        let mut letters = Vec::new();
        if s.contains(',') || alphabet.k() > 9 {
            for part in s.split(',') {
                let part = part.trim();
                let letter: Letter = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter {part:?}")))?;
                letters.push(letter);
            }
        } else {
            for c in s.chars() {
                let letter = c
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))?;
                letters.push(letter);
            }
        }
        Word::new(alphabet, letters)
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// `|W|_i` for each letter `i`, indexed from zero.
    #[inline]
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_alphabet(self, other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Word {
            alphabet: self.alphabet,
            letters,
            counts,
        })
    }

    /// `W^n` for `n >= 1`.
    pub fn power(&self, n: usize) -> Result<Word> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(Word {
            alphabet: self.alphabet,
            letters: self.letters.repeat(n),
            counts: self.counts.iter().map(|c| c * n).collect(),
        })
    }

    /// The cyclic rotation `VU` of `W = UV` with `|U| = shift`.
    pub fn rotate(&self, shift: usize) -> Word {
        let mut letters = self.letters.clone();
        let n = letters.len();
        letters.rotate_left(shift % n);
        Word {
            alphabet: self.alphabet,
            letters,
            counts: self.counts.clone(),
        }
    }

    /// Letter proportions `|W|_i / |W|`, an exact point of the closed simplex.
    pub fn rho(&self) -> Vec<BigRational> {
        let len = BigInt::from(self.len());
        self.counts
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), len.clone()))
            .collect()
    }

    pub fn is_maximal(&self) -> bool {
        is_maximal_word(&self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters, self.alphabet.k()))
    }
}

/// Renders letters as digits when `k <= 9`, otherwise comma separated.
pub fn render_letters(letters: &[Letter], k: usize) -> String {
    use core::fmt::Write;
    let mut out = String::with_capacity(letters.len());
    for (i, l) in letters.iter().enumerate() {
        if k > 9 && i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{l}");
    }
    out
}

fn same_alphabet(v: &Word, w: &Word) -> Result<()> {
    if v.alphabet != w.alphabet {
        return Err(Error::AlphabetMismatch {
            left: v.alphabet.k(),
            right: w.alphabet.k(),
        });
    }
    Ok(())
}

/// Order on `A*`: lexicographic, except that a proper initial subword is
/// greater than the word it starts.
pub fn compare_finite(v: &[Letter], w: &[Letter]) -> Ordering {
    for (a, b) in v.iter().zip(w) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    // One is a prefix of the other: the shorter one wins.
    w.len().cmp(&v.len())
}

pub fn word_compare(v: &Word, w: &Word) -> Result<Ordering> {
    same_alphabet(v, w)?;
    Ok(compare_finite(&v.letters, &w.letters))
}

/// Index of a lexicographically largest rotation, found with the two-pointer
/// minimum-expression scan run on the reversed order.
pub fn maximal_rotation_index(letters: &[Letter]) -> usize {
    let n = letters.len();
    if n <= 1 {
        return 0;
    }
    let (mut i, mut j, mut l) = (0usize, 1usize, 0usize);
    while i < n && j < n && l < n {
        let a = letters[(i + l) % n];
        let b = letters[(j + l) % n];
        match a.cmp(&b) {
            Ordering::Equal => l += 1,
            Ordering::Greater => {
                j += l + 1;
                if i == j {
                    j += 1;
                }
                l = 0;
            }
            Ordering::Less => {
                i += l + 1;
                if i == j {
                    i += 1;
                }
                l = 0;
            }
        }
    }
    i.min(j)
}

/// Whether `W >= VU` for every split `W = UV` (equal-length comparison).
pub fn is_maximal_word(letters: &[Letter]) -> bool {
    if letters.is_empty() {
        return false;
    }
    let m = maximal_rotation_index(letters);
    let n = letters.len();
    (0..n).all(|t| letters[(m + t) % n] == letters[t])
}

/// Quadratic reference for [`is_maximal_word`]: compares against every
/// rotation directly.
pub fn is_maximal_word_reference(letters: &[Letter]) -> bool {
    let n = letters.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|s| {
        let rotated = letters[s..].iter().chain(&letters[..s]);
        letters.iter().cmp(rotated) != Ordering::Less
    })
}

/// Incremental test that a prefix can still start a maximal sequence.
///
/// Keeps the period of the longest prefix seen so far; appending a letter
/// larger than the letter one period back certifies that some shift beats the
/// prefix.
#[derive(Clone, Debug, Default)]
pub struct MaximalPrefixTracker {
    letters: Vec<Letter>,
    periods: Vec<usize>,
}

impl MaximalPrefixTracker {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Current period `p`: the prefix is `(P)^m P'` with `|P| = p`.
    pub fn period(&self) -> usize {
        self.periods.last().copied().unwrap_or(0)
    }

    /// The period the prefix would have after appending `letter`, or `None`
    /// if the extension is not consistent with maximality.
    pub fn period_after(&self, letter: Letter) -> Option<usize> {
        let n = self.letters.len();
        if n == 0 {
            return Some(1);
        }
        let p = self.period();
        match letter.cmp(&self.letters[n - p]) {
            Ordering::Equal => Some(p),
            Ordering::Less => Some(n + 1),
            Ordering::Greater => None,
        }
    }

    pub fn push(&mut self, letter: Letter) -> bool {
        match self.period_after(letter) {
            Some(p) => {
                self.letters.push(letter);
                self.periods.push(p);
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.periods.pop();
        self.letters.pop()
    }

    /// A complete word is maximal exactly when its prefix test passes and
    /// its length is a multiple of the period.
    pub fn is_maximal_word(&self) -> bool {
        !self.letters.is_empty() && self.letters.len().is_multiple_of(self.period())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

/// True iff no suffix of `prefix` beats the prefix on their overlap, so the
/// prefix might still begin a maximal sequence. `false` certifies that every
/// infinite extension fails to be maximal.
pub fn is_maximal_prefix_consistent(prefix: &[Letter]) -> bool {
    let mut p = 1usize;
    for i in 1..prefix.len() {
        match prefix[i].cmp(&prefix[i - p]) {
            Ordering::Equal => {}
            Ordering::Less => p = i + 1,
            Ordering::Greater => return false,
        }
    }
    true
}

/// Quadratic reference for [`is_maximal_prefix_consistent`].
pub fn is_maximal_prefix_consistent_reference(prefix: &[Letter]) -> bool {
    let n = prefix.len();
    (1..n).all(|r| prefix[r..].cmp(&prefix[..n - r]) != Ordering::Greater)
}

/// Length-`r` prefix of the largest suffix of `w` that still has `r` letters:
/// the length-`r` window of `sup w` as far as `w` shows it.
pub fn sup_orbit_prefix(w: &[Letter], r: usize) -> Result<Vec<Letter>> {
    if r == 0 || r > w.len() {
        return Err(Error::WindowTooSmall {
            requested: r,
            available: w.len(),
        });
    }
    let (start, _) = sup_orbit_start(w, r);
    Ok(w[start..start + r].to_vec())
}

/// Starting index (first occurrence) of the window returned by
/// [`sup_orbit_prefix`], with the window itself.
pub(crate) fn sup_orbit_start(w: &[Letter], r: usize) -> (usize, &[Letter]) {
    let mut best = 0usize;
    for start in 1..=w.len() - r {
        if w[start..start + r] > w[best..best + r] {
            best = start;
        }
    }
    (best, &w[best..best + r])
}

/// Letter reversal `i -> k + 1 - i`, which exchanges maximal words and
/// Lyndon words.
pub fn reverse_alphabet(letters: &[Letter], k: usize) -> Vec<Letter> {
    letters.iter().map(|&l| k as Letter + 1 - l).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(k: usize, s: &str) -> Word {
        Word::parse(s, Alphabet::new(k).unwrap()).unwrap()
    }

    #[test]
    fn shorter_prefix_is_greater() {
        assert_eq!(
            word_compare(&w(3, "31"), &w(3, "311")),
            Ok(Ordering::Greater)
        );
        assert_eq!(word_compare(&w(3, "31"), &w(3, "31")), Ok(Ordering::Equal));
        assert_eq!(
            word_compare(&w(3, "13123"), &w(3, "31312")),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn compare_rejects_alphabet_mismatch() {
        assert_eq!(
            word_compare(&w(3, "31"), &w(4, "31")),
            Err(Error::AlphabetMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn maximal_words() {
        assert!(w(4, "422234141").is_maximal());
        assert!(w(3, "33333").is_maximal());
        assert!(!w(2, "12").is_maximal());
        assert!(w(3, "3131").is_maximal());
        assert!(!w(3, "3113").is_maximal());
    }

    #[test]
    fn prefix_consistency() {
        assert!(is_maximal_prefix_consistent(&[3, 1, 2, 3, 1, 1, 3, 1]));
        assert!(!is_maximal_prefix_consistent(&[1, 2, 3]));
        assert!(is_maximal_prefix_consistent(&[4; 17]));
    }

    #[test]
    fn proportions() {
        let word = w(3, "31312");
        let half = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(word.rho(), vec![half(2, 5), half(1, 5), half(2, 5)]);
        assert_eq!(
            w(3, "33333").rho(),
            vec![half(0, 1), half(0, 1), half(1, 1)]
        );
    }

    #[test]
    fn sup_windows() {
        assert_eq!(
            sup_orbit_prefix(&[1, 2, 3, 1, 2, 3, 1], 3).unwrap(),
            vec![3, 1, 2]
        );
        assert_eq!(sup_orbit_prefix(&[3, 3, 3, 3], 2).unwrap(), vec![3, 3]);
        assert_eq!(
            sup_orbit_prefix(&[4, 2, 2, 2, 3, 4, 1, 4, 1], 1).unwrap(),
            vec![4]
        );
        assert_eq!(
            sup_orbit_prefix(&[1, 2], 3),
            Err(Error::WindowTooSmall {
                requested: 3,
                available: 2
            })
        );
    }

    #[test]
    fn parse_and_render() {
        let a = Alphabet::new(10).unwrap();
        let word = Word::parse("10,1,1,3", a).unwrap();
        assert_eq!(word.letters(), &[10, 1, 1, 3]);
        assert_eq!(alloc::format!("{word}"), "10,1,1,3");
        assert_eq!(alloc::format!("{}", w(4, "422234141")), "422234141");
        assert_eq!(w(4, "4,2,2").letters(), &[4, 2, 2]);
        assert!(Word::parse("", Alphabet::new(3).unwrap()).is_err());
        assert!(Word::parse("34", Alphabet::new(3).unwrap()).is_err());
        assert!(Alphabet::new(1).is_err());
    }

    #[test]
    fn tracker_matches_direct_check() {
        let mut t = MaximalPrefixTracker::new();
        for &l in &[3, 1, 3, 1] {
            assert!(t.push(l));
        }
        assert!(t.is_maximal_word());
        assert!(t.push(2));
        assert!(t.is_maximal_word());
        assert!(t.push(3));
        assert!(!t.is_maximal_word());
        assert!(!t.push(2));
    }
}
