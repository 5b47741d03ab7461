//! The substitutions `Λ_n`, their compositions and abelianizations.
//!
//! `Λ_n` sends `i -> i+1` for `i <= k-2`, `k-1 -> k 1^{n+1}` and `k -> k 1^n`.
//! Towers `Λ_{n_0} ∘ ... ∘ Λ_{n_r}` are evaluated right to left on truncated
//! words, so only the requested prefix is ever materialized.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// A substitution on `{1, ..., k}` with non-empty letter images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != alphabet.k() {
            return Err(Error::DimensionMismatch {
                expected: alphabet.k(),
                found: images.len(),
            });
        }
        for image in &images {
            if image.is_empty() {
                return Err(Error::EmptyWord);
            }
            for &l in image {
                alphabet.check_letter(l)?;
            }
        }
        Ok(Substitution { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        Substitution {
            alphabet,
            images: (1..=alphabet.top()).map(|l| vec![l]).collect(),
        }
    }

    /// `Λ_n` on `k` letters.
    pub fn lambda(n: usize, alphabet: Alphabet) -> Self {
        let k = alphabet.top();
        let images = (1..=k)
            .map(|i| {
                if i + 1 < k {
                    vec![i + 1]
                } else {
                    let ones = if i == k { n } else { n + 1 };
                    let mut image = Vec::with_capacity(ones + 1);
                    image.push(k);
                    image.resize(ones + 1, 1);
                    image
                }
            })
            .collect();
        Substitution { alphabet, images }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize - 1]
    }

    pub fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for &l in letters {
            out.extend_from_slice(self.image(l));
        }
        out
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        if word.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.k(),
                right: word.alphabet().k(),
            });
        }
        Word::new(self.alphabet, self.apply_letters(word.letters()))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if other.alphabet != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.k(),
                right: other.alphabet.k(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|image| self.apply_letters(image))
            .collect();
        Ok(Substitution {
            alphabet: self.alphabet,
            images,
        })
    }

    /// Entry `(i, j)` counts the letter `i` in the image of `j`.
    pub fn abelian_matrix(&self) -> AbelianMatrix {
        let k = self.alphabet.k();
        let mut m = AbelianMatrix::zero(k);
        for (j, image) in self.images.iter().enumerate() {
            for &l in image {
                m.entries[(l as usize - 1) * k + j] += 1u32;
            }
        }
        m
    }
}

/// `k x k` matrix of unbounded non-negative integers, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMatrix {
    k: usize,
    entries: Vec<BigUint>,
}

impl AbelianMatrix {
    pub fn zero(k: usize) -> Self {
        AbelianMatrix {
            k,
            entries: vec![BigUint::zero(); k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| BigUint::from(x)));
        }
        Ok(AbelianMatrix { k, entries })
    }

    /// `A(n)`: the abelianization of `Λ_n`.
    pub fn for_branch(n: &BigUint, alphabet: Alphabet) -> Self {
        let k = alphabet.k();
        let mut m = Self::zero(k);
        m.entries[k - 2] = n + 1u32;
        m.entries[k - 1] = n.clone();
        for i in 1..k {
            m.entries[i * k + i - 1] = BigUint::one();
        }
        m.entries[k * k - 1] = BigUint::one();
        m
    }

    /// `A(n_0) A(n_1) ... A(n_r)`; the identity for an empty list.
    pub fn product(branches: &[BigUint], alphabet: Alphabet) -> Self {
        let mut acc = Self::identity(alphabet.k());
        for n in branches {
            acc = acc.mul_branch(n);
        }
        acc
    }

    /// `self · A(n)` without forming `A(n)`: columns shift left and the last
    /// two columns pick up `n+1` (resp. `n`) copies of column one.
    pub fn mul_branch(&self, n: &BigUint) -> Self {
        let k = self.k;
        let mut out = Self::zero(k);
        for i in 0..k {
            let row = &self.entries[i * k..(i + 1) * k];
            let first = &row[0];
            for j in 0..k.saturating_sub(2) {
                out.entries[i * k + j] = row[j + 1].clone();
            }
            out.entries[i * k + k - 2] = first * (n + 1u32) + &row[k - 1];
            out.entries[i * k + k - 1] = first * n + &row[k - 1];
        }
        out
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.k + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigUint> {
        (0..self.k).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn column_sum(&self, j: usize) -> BigUint {
        (0..self.k).map(|i| self.entry(i, j)).sum()
    }

    pub fn mul(&self, other: &AbelianMatrix) -> Result<AbelianMatrix> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        let k = self.k;
        let mut out = Self::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = other.entry(l, j);
                    if !b.is_zero() {
                        out.entries[i * k + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &[BigUint]) -> Vec<BigUint> {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| !e.is_zero())
    }
}

impl fmt::Display for AbelianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            for j in 0..self.k {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            if i + 1 < self.k {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Applies `Λ_n` to `input`, keeping at most `cap` output letters.
pub fn apply_lambda_truncated(
    n: &BigUint,
    alphabet: Alphabet,
    input: &[Letter],
    cap: usize,
) -> Vec<Letter> {
    let k = alphabet.top();
    let ones = n.to_usize().unwrap_or(usize::MAX);
    let mut out = Vec::with_capacity(cap.min(input.len().saturating_mul(2)));
    for &l in input {
        if out.len() >= cap {
            break;
        }
        if l + 1 < k {
            out.push(l + 1);
        } else {
            out.push(k);
            let run = if l == k { ones } else { ones.saturating_add(1) };
            let room = cap - out.len();
            out.resize(out.len() + run.min(room), 1);
        }
    }
    out.truncate(cap);
    out
}

/// First `cap` letters of `Λ_{n_0} ∘ ... ∘ Λ_{n_r}(word)`, where the
/// branches are `n_0, ..., n_r`.
pub fn tower_apply_truncated(
    branches: &[BigUint],
    alphabet: Alphabet,
    word: &[Letter],
    cap: usize,
) -> Vec<Letter> {
    let mut current: Vec<Letter> = word.iter().copied().take(cap).collect();
    for n in branches.iter().rev() {
        current = apply_lambda_truncated(n, alphabet, &current, cap);
    }
    current
}

/// Exact lengths `|Λ_{n_0} ∘ ... ∘ Λ_{n_r}(i)|` for every letter `i`.
pub fn tower_image_lengths(branches: &[BigUint], alphabet: Alphabet) -> Vec<BigUint> {
    let k = alphabet.k();
    // Row vector of ones pushed through A(n_0) ... A(n_r) from the left.
    let mut v = vec![BigUint::one(); k];
    for n in branches {
        let first = v[0].clone();
        let last = v[k - 1].clone();
        let mut next = Vec::with_capacity(k);
        next.extend_from_slice(&v[1..k - 1]);
        next.push(&first * (n + 1u32) + &last);
        next.push(&first * n + &last);
        v = next;
    }
    v
}

/// `Λ_{n_0} ∘ ... ∘ Λ_{n_r}(k)` in full, for the branches `n_0..=n_r`.
///
/// Fails with [`Error::CapExceeded`] when the word is longer than `cap`.
pub fn tower_prefix(branches: &[BigUint], alphabet: Alphabet, cap: usize) -> Result<Word> {
    let len = tower_image_lengths(branches, alphabet)
        .pop()
        .unwrap_or_else(BigUint::one);
    match len.to_usize() {
        Some(l) if l <= cap => {
            let letters = tower_apply_truncated(branches, alphabet, &[alphabet.top()], l);
            Word::new(alphabet, letters)
        }
        _ => Err(Error::CapExceeded {
            size: alloc::format!("{len}"),
            cap,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: usize) -> Alphabet {
        Alphabet::new(k).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn lambda_images() {
        assert_eq!(Substitution::lambda(3, a(3)).image(3), &[3, 1, 1, 1]);
        assert_eq!(Substitution::lambda(2, a(4)).image(4), &[4, 1, 1]);
        let l0 = Substitution::lambda(0, a(5));
        let images: Vec<&[Letter]> = (1..=5).map(|i| l0.image(i)).collect();
        assert_eq!(images, [&[2][..], &[3], &[4], &[5, 1], &[5]]);
    }

    #[test]
    fn apply_examples() {
        let w = Word::parse("4111233", a(4)).unwrap();
        let out = Substitution::lambda(0, a(4)).apply(&w).unwrap();
        assert_eq!(alloc::format!("{out}"), "422234141");
        let w = Word::parse("331", a(3)).unwrap();
        let out = Substitution::lambda(1, a(3)).apply(&w).unwrap();
        assert_eq!(alloc::format!("{out}"), "31312");
    }

    #[test]
    fn matrix_matches_counts() {
        let k = a(3);
        assert_eq!(
            AbelianMatrix::for_branch(&BigUint::from(1u32), k),
            AbelianMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 0], vec![0, 1, 1]]).unwrap()
        );
        for n in 0..6usize {
            for kk in 2..7 {
                let s = Substitution::lambda(n, a(kk));
                assert_eq!(
                    s.abelian_matrix(),
                    AbelianMatrix::for_branch(&BigUint::from(n), a(kk))
                );
            }
        }
    }

    #[test]
    fn five_letter_matrix_layout() {
        let m = AbelianMatrix::for_branch(&BigUint::from(7u32), a(5));
        let expected = AbelianMatrix::from_rows(&[
            vec![0, 0, 0, 8, 7],
            vec![1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn composed_towers() {
        let k = a(3);
        let word = tower_prefix(&big(&[1, 0, 10, 3]), k, 1000).unwrap();
        let mut expected = alloc::vec![3, 1];
        for _ in 0..10 {
            expected.extend_from_slice(&[3, 1, 1]);
        }
        for _ in 0..3 {
            expected.extend_from_slice(&[3, 1, 2]);
        }
        assert_eq!(word.letters(), &expected[..]);

        let word = tower_prefix(&big(&[0, 3, 1, 2]), a(4), 1000).unwrap();
        assert_eq!(alloc::format!("{word}"), "422234141");

        let word = tower_prefix(&big(&[5]), k, 1000).unwrap();
        assert_eq!(word.letters(), &[3, 1, 1, 1, 1, 1]);
        assert_eq!(tower_prefix(&[], k, 10).unwrap().letters(), &[3]);
    }

    #[test]
    fn compose_agrees_with_tower() {
        let k = a(3);
        let s = [1usize, 0, 10, 3]
            .iter()
            .map(|&n| Substitution::lambda(n, k))
            .reduce(|acc, s| acc.compose(&s).unwrap())
            .unwrap();
        let tower = tower_prefix(&big(&[1, 0, 10, 3]), k, 1000).unwrap();
        assert_eq!(s.image(3), tower.letters());
        let id = Substitution::identity(k);
        assert_eq!(s.compose(&id).unwrap(), s);
        assert_eq!(id.compose(&s).unwrap(), s);
    }

    #[test]
    fn truncation_and_lengths() {
        let k = a(3);
        let huge = BigUint::from(10u32).pow(30);
        let w = tower_apply_truncated(core::slice::from_ref(&huge), k, &[3], 5);
        assert_eq!(w, alloc::vec![3, 1, 1, 1, 1]);
        let lens = tower_image_lengths(core::slice::from_ref(&huge), k);
        assert_eq!(lens[2], &huge + 1u32);
        assert!(matches!(
            tower_prefix(&[huge], k, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn mul_branch_is_matrix_product() {
        let k = a(4);
        let p = AbelianMatrix::product(&big(&[2, 0, 5, 1, 3]), k);
        let mut q = AbelianMatrix::identity(4);
        for n in [2u32, 0, 5, 1, 3] {
            q = q
                .mul(&AbelianMatrix::for_branch(&BigUint::from(n), k))
                .unwrap();
        }
        assert_eq!(p, q);
        let lens = tower_image_lengths(&big(&[2, 0, 5, 1, 3]), k);
        for (j, len) in lens.iter().enumerate() {
            assert_eq!(&p.column_sum(j), len);
        }
    }
}
