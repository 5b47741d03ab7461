//! The simplex `Δ`, the continued-fraction map `K` and its branches, and the
//! itinerary map, all in exact rational arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::itinerary::Itinerary;
use crate::word::Alphabet;

/// An exact point of `Δ`: non-negative, summing to one, last entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        Alphabet::new(coords.len())?;
        let mut sum = BigRational::zero();
        for (i, c) in coords.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeEntry { index: i });
            }
            sum += c;
        }
        if !sum.is_one() {
            return Err(Error::NotNormalized);
        }
        if coords[coords.len() - 1].is_zero() {
            return Err(Error::ZeroLastEntry);
        }
        Ok(RationalPoint { coords })
    }

    /// Normalizes a non-negative vector with positive sum (`α̂ / Σ α̂_i`).
    pub fn from_weights(weights: Vec<BigRational>) -> Result<Self> {
        let sum: BigRational = weights.iter().sum();
        if !sum.is_positive() {
            return Err(Error::NotNormalized);
        }
        RationalPoint::new(weights.into_iter().map(|w| w / &sum).collect())
    }

    pub fn from_counts(counts: &[BigUint]) -> Result<Self> {
        RationalPoint::from_weights(
            counts
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
                .collect(),
        )
    }

    /// `(p_1/q, ..., p_k/q)` from integers.
    pub fn from_ratios(parts: &[(i64, i64)]) -> Result<Self> {
        RationalPoint::new(
            parts
                .iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    /// The vertex `(0, ..., 0, 1)`, fixed by `K`.
    pub fn terminal(alphabet: Alphabet) -> Self {
        let mut coords = vec![BigRational::zero(); alphabet.k()];
        coords[alphabet.k() - 1] = BigRational::one();
        RationalPoint { coords }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.k()).expect("validated on construction")
    }

    #[inline]
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_terminal(&self) -> bool {
        self.coords[..self.k() - 1].iter().all(Zero::is_zero)
    }

    /// The smallest integer vector that is a positive multiple of the point.
    pub fn primitive_counts(&self) -> Vec<BigUint> {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        scaled
            .into_iter()
            .map(|x| (x / &g).to_biguint().expect("non-negative"))
            .collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational_vector(f, &self.coords)
    }
}

/// Writes `a/b,c/d,...`; integers print without a denominator.
pub fn write_rational_vector(f: &mut dyn fmt::Write, v: &[BigRational]) -> fmt::Result {
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

fn rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `J(α) = ⌊α_1 / α_k⌋`.
pub fn branch_index(alpha: &RationalPoint) -> BigUint {
    let c = alpha.coords();
    let q = &c[0] / &c[c.len() - 1];
    q.floor().to_integer().to_biguint().expect("non-negative")
}

/// `K(α) = K_{J(α)}(α)`.
pub fn step(alpha: &RationalPoint) -> RationalPoint {
    let n = branch_index(alpha);
    step_with_branch(&n, alpha)
}

pub(crate) fn step_with_branch(n: &BigUint, alpha: &RationalPoint) -> RationalPoint {
    // Over a common denominator `K_n` is the integer step
    // `(a_2, ..., a_{k-1}, a_1 - n a_k, (n+1) a_k - a_1)`, rescaled by its sum.
    let c = alpha.coords();
    let k = c.len();
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let n = BigInt::from(n.clone());
    let mut out = Vec::with_capacity(k);
    out.extend_from_slice(&a[1..k - 1]);
    out.push(&a[0] - &n * &a[k - 1]);
    out.push((&n + 1) * &a[k - 1] - &a[0]);
    let total = &lcm - &a[0];
    RationalPoint {
        coords: out
            .into_iter()
            .map(|x| BigRational::new(x, total.clone()))
            .collect(),
    }
}

/// `K_n^{-1}` applied to any point of the closed simplex.
pub fn inverse_branch(n: &BigUint, v: &[BigRational]) -> Vec<BigRational> {
    let k = v.len();
    let n = rational(n);
    let n1 = &n + BigRational::one();
    let head = &n1 * &v[k - 2] + &n * &v[k - 1];
    let tail = &v[k - 2] + &v[k - 1];
    let d = &n1 * &v[k - 2] + &n * &v[k - 1] + BigRational::one();
    let mut out = Vec::with_capacity(k);
    out.push(head / &d);
    for vi in &v[..k - 2] {
        out.push(vi / &d);
    }
    out.push(tail / &d);
    out
}

/// `K_n^{-1}(α)`, which lies in `Δ_n`.
pub fn step_inverse(n: &BigUint, alpha: &RationalPoint) -> RationalPoint {
    RationalPoint {
        coords: inverse_branch(n, alpha.coords()),
    }
}

/// Iterates `K` from `α`, recording branches, until the terminal vertex is
/// reached or `max_steps` branches have been recorded.
pub fn itinerary(alpha: &RationalPoint, max_steps: usize) -> Itinerary {
    let (entries, terminated) = orbit(alpha, max_steps);
    let entries: Vec<BigUint> = entries.into_iter().map(|(n, _)| n).collect();
    if terminated {
        Itinerary::terminated(entries)
    } else {
        Itinerary::open(entries)
    }
}

/// The orbit `α, K(α), ...` with the branch used at each step. The final
/// point (terminal vertex, if reached) is not included.
pub fn orbit(alpha: &RationalPoint, max_steps: usize) -> (Vec<(BigUint, RationalPoint)>, bool) {
    let mut out = Vec::new();
    let mut current = alpha.clone();
    while !current.is_terminal() {
        if out.len() == max_steps {
            return (out, false);
        }
        let n = branch_index(&current);
        let next = step_with_branch(&n, &current);
        out.push((n, current));
        current = next;
    }
    (out, true)
}

/// The unique point whose itinerary is `prefix` followed by zeros:
/// `K_{n_0}^{-1} ∘ ... ∘ K_{n_{r-1}}^{-1}(0, ..., 0, 1)`.
pub fn point_from_finite_itinerary(prefix: &[BigUint], alphabet: Alphabet) -> RationalPoint {
    let mut point = RationalPoint::terminal(alphabet);
    for n in prefix.iter().rev() {
        point = step_inverse(n, &point);
    }
    point
}

/// Agreement between the zero coordinates of a point and the vanishing of
/// its itinerary along residue classes modulo `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroComponentProfile {
    /// One entry per coordinate `i = 1..k-1`.
    pub components: Vec<ZeroComponent>,
    /// Whether the itinerary was terminated, making the check conclusive.
    pub conclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroComponent {
    pub index: usize,
    pub coordinate_zero: bool,
    /// All observed `n_r` with `r ≡ index - 1 (mod k - 1)` vanish.
    pub branches_zero: bool,
}

impl ZeroComponentProfile {
    pub fn is_consistent(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.coordinate_zero == c.branches_zero)
    }
}

pub fn zero_component_profile(alpha: &RationalPoint, itin: &Itinerary) -> ZeroComponentProfile {
    let k = alpha.k();
    let components = (1..k)
        .map(|i| {
            let branches_zero = itin
                .entries
                .iter()
                .enumerate()
                .filter(|(r, _)| r % (k - 1) == i - 1)
                .all(|(_, n)| n.is_zero());
            ZeroComponent {
                index: i,
                coordinate_zero: alpha.coords()[i - 1].is_zero(),
                branches_zero,
            }
        })
        .collect();
    ZeroComponentProfile {
        components,
        conclusive: itin.terminated,
    }
}

/// `π_i`: forgets the zero coordinate `i` (1-based, `i < k`), giving a point
/// over `k - 1` letters.
pub fn reduce_dimension(alpha: &RationalPoint, i: usize) -> Result<RationalPoint> {
    let k = alpha.k();
    if i == 0 || i >= k {
        return Err(Error::ComponentIndex { index: i, k });
    }
    if k < 3 {
        return Err(Error::AlphabetTooSmall { k: k - 1, min: 2 });
    }
    if !alpha.coords()[i - 1].is_zero() {
        return Err(Error::NonZeroComponent { index: i });
    }
    let mut coords = alpha.coords().to_vec();
    coords.remove(i - 1);
    RationalPoint::new(coords)
}

/// Deletes the positions `r ≡ i - 1 (mod k - 1)` from an itinerary of a point
/// with `α_i = 0`; those entries must all be zero.
pub fn reduce_itinerary(itin: &Itinerary, i: usize, k: usize) -> Result<Itinerary> {
    if i == 0 || i >= k {
        return Err(Error::ComponentIndex { index: i, k });
    }
    let mut entries = Vec::with_capacity(itin.entries.len());
    for (r, n) in itin.entries.iter().enumerate() {
        if r % (k - 1) == i - 1 {
            if !n.is_zero() {
                return Err(Error::NonZeroComponent { index: i });
            }
        } else {
            entries.push(n.clone());
        }
    }
    Ok(if itin.terminated {
        Itinerary::terminated(entries)
    } else {
        Itinerary::open(entries)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_ratios(parts).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn branch_examples() {
        assert_eq!(
            branch_index(&p(&[(24, 41), (3, 41), (14, 41)])),
            BigUint::from(1u32)
        );
        assert_eq!(branch_index(&p(&[(0, 1), (0, 1), (1, 1)])), BigUint::zero());
        assert_eq!(
            branch_index(&p(&[(10, 14), (3, 14), (1, 14)])),
            BigUint::from(10u32)
        );
    }

    #[test]
    fn step_examples() {
        assert_eq!(
            step(&p(&[(24, 41), (3, 41), (14, 41)])),
            p(&[(3, 17), (10, 17), (4, 17)])
        );
        let t = RationalPoint::terminal(Alphabet::new(4).unwrap());
        assert_eq!(step(&t), t);
        assert_eq!(
            step(&p(&[(2, 9), (3, 9), (1, 9), (3, 9)])),
            p(&[(3, 7), (1, 7), (2, 7), (1, 7)])
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            step_inverse(&BigUint::from(1u32), &p(&[(3, 17), (10, 17), (4, 17)])),
            p(&[(24, 41), (3, 41), (14, 41)])
        );
        let t = RationalPoint::terminal(Alphabet::new(3).unwrap());
        assert_eq!(
            step_inverse(&BigUint::from(3u32), &t),
            p(&[(3, 4), (0, 1), (1, 4)])
        );
        let back = step_inverse(&BigUint::zero(), &t);
        assert_eq!(step(&back), t);
    }

    #[test]
    fn itinerary_examples() {
        let it = itinerary(&p(&[(24, 41), (3, 41), (14, 41)]), 100);
        assert_eq!(it, Itinerary::terminated(big(&[1, 0, 10, 3])));
        let it = itinerary(&p(&[(2, 9), (3, 9), (1, 9), (3, 9)]), 100);
        assert_eq!(it, Itinerary::terminated(big(&[0, 3, 1, 2])));
        let t = RationalPoint::terminal(Alphabet::new(5).unwrap());
        assert_eq!(itinerary(&t, 100), Itinerary::terminated(vec![]));
        let it = itinerary(&p(&[(24, 41), (3, 41), (14, 41)]), 2);
        assert_eq!(it, Itinerary::open(big(&[1, 0])));
    }

    #[test]
    fn points_from_itineraries() {
        let k3 = Alphabet::new(3).unwrap();
        assert_eq!(
            point_from_finite_itinerary(&big(&[1, 0, 10, 3]), k3),
            p(&[(24, 41), (3, 41), (14, 41)])
        );
        assert_eq!(
            point_from_finite_itinerary(&[], k3),
            RationalPoint::terminal(k3)
        );
        assert_eq!(
            point_from_finite_itinerary(&big(&[0, 3, 1, 2]), Alphabet::new(4).unwrap()),
            p(&[(2, 9), (3, 9), (1, 9), (3, 9)])
        );
    }

    #[test]
    fn zero_components() {
        let a = p(&[(0, 1), (1, 2), (1, 2)]);
        let it = itinerary(&a, 100);
        assert_eq!(it, Itinerary::terminated(big(&[0, 1])));
        let prof = zero_component_profile(&a, &it);
        assert!(prof.conclusive && prof.is_consistent());
        assert!(prof.components[0].coordinate_zero && prof.components[0].branches_zero);
        assert!(!prof.components[1].coordinate_zero);

        let a = p(&[(24, 41), (3, 41), (14, 41)]);
        let prof = zero_component_profile(&a, &itinerary(&a, 100));
        assert!(prof.is_consistent());
        assert!(prof.components.iter().all(|c| !c.coordinate_zero));

        let t = RationalPoint::terminal(Alphabet::new(4).unwrap());
        let prof = zero_component_profile(&t, &itinerary(&t, 10));
        assert!(prof
            .components
            .iter()
            .all(|c| c.coordinate_zero && c.branches_zero));
    }

    #[test]
    fn dimension_reduction() {
        let a = p(&[(0, 1), (1, 2), (1, 2)]);
        let reduced = reduce_dimension(&a, 1).unwrap();
        assert_eq!(reduced, p(&[(1, 2), (1, 2)]));
        let it = reduce_itinerary(&itinerary(&a, 100), 1, 3).unwrap();
        assert_eq!(it, itinerary(&reduced, 100));
        assert_eq!(
            reduce_dimension(&p(&[(1, 3), (0, 1), (2, 3)]), 2).unwrap(),
            p(&[(1, 3), (2, 3)])
        );
        assert_eq!(
            reduce_dimension(&a, 2),
            Err(Error::NonZeroComponent { index: 2 })
        );
        assert!(reduce_dimension(&a, 3).is_err());
    }

    #[test]
    fn rejects_face_points() {
        assert_eq!(
            RationalPoint::from_ratios(&[(1, 2), (1, 2), (0, 1)]),
            Err(Error::ZeroLastEntry)
        );
        assert_eq!(
            RationalPoint::from_ratios(&[(1, 2), (1, 3)]),
            Err(Error::NotNormalized)
        );
    }

    #[test]
    fn primitive_multiple() {
        assert_eq!(
            p(&[(24, 41), (3, 41), (14, 41)]).primitive_counts(),
            big(&[24, 3, 14])
        );
        assert_eq!(p(&[(1, 2), (1, 2)]).primitive_counts(), big(&[1, 1]));
        assert_eq!(
            p(&[(2, 9), (1, 3), (1, 9), (1, 3)]).primitive_counts(),
            big(&[2, 3, 1, 3])
        );
    }
}
