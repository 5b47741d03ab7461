//! Vertex images of `Υ_{n,r} = K_{n_0}^{-1} ∘ ... ∘ K_{n_r}^{-1}`, Hilbert's
//! projective metric and the regular/exceptional classification.
//!
//! Vertex `i` at depth `r` is column `i` of `A(n_0) ... A(n_r)` scaled to sum
//! one, i.e. the letter proportions of `Λ_{n,r}(i)`. Hilbert distances are
//! kept as the exact ratio `D = exp(δ)`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::itinerary::ItinerarySpec;
use crate::linalg::affine_rank;
use crate::simplex::inverse_branch;
use crate::substitution::AbelianMatrix;
use crate::word::Alphabet;

/// The images of the `k` vertices of the closed simplex at one depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexImages {
    pub depth: usize,
    pub product: AbelianMatrix,
    pub vertices: Vec<Vec<BigRational>>,
}

impl VertexImages {
    fn from_product(depth: usize, product: AbelianMatrix) -> Self {
        let k = product.k();
        let vertices = (0..k)
            .map(|j| {
                let total = BigInt::from(product.column_sum(j));
                product
                    .column(j)
                    .into_iter()
                    .map(|e| BigRational::new(BigInt::from(e), total.clone()))
                    .collect()
            })
            .collect();
        VertexImages {
            depth,
            product,
            vertices,
        }
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// `|Λ_{n,r}(i)|` for each letter.
    pub fn lengths(&self) -> Vec<BigUint> {
        (0..self.k()).map(|j| self.product.column_sum(j)).collect()
    }
}

/// Vertex images at depth `entries.len() - 1`.
pub fn vertex_images(entries: &[BigUint], alphabet: Alphabet) -> Result<VertexImages> {
    if entries.is_empty() {
        return Err(Error::EmptyItinerary);
    }
    let product = AbelianMatrix::product(entries, alphabet);
    Ok(VertexImages::from_product(entries.len() - 1, product))
}

/// Vertex images at every depth `0..entries.len()`.
pub fn vertex_trace(entries: &[BigUint], alphabet: Alphabet) -> Vec<VertexImages> {
    let mut product = AbelianMatrix::identity(alphabet.k());
    entries
        .iter()
        .enumerate()
        .map(|(r, n)| {
            product = product.mul_branch(n);
            VertexImages::from_product(r, product.clone())
        })
        .collect()
}

/// `D = exp(δ)` for Hilbert's projective metric; infinite when a point lies
/// on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertRatio {
    Finite(BigRational),
    Infinite,
}

impl HilbertRatio {
    pub fn is_finite(&self) -> bool {
        matches!(self, HilbertRatio::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            HilbertRatio::Finite(d) => Some(d),
            HilbertRatio::Infinite => None,
        }
    }

    /// `δ = log D`.
    pub fn distance(&self) -> f64 {
        match self {
            HilbertRatio::Finite(d) => ln_rational(d),
            HilbertRatio::Infinite => f64::INFINITY,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            HilbertRatio::Finite(d) => d.to_f64().unwrap_or(f64::INFINITY),
            HilbertRatio::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for HilbertRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HilbertRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (HilbertRatio::Finite(a), HilbertRatio::Finite(b)) => a.cmp(b),
            (HilbertRatio::Finite(_), HilbertRatio::Infinite) => Ordering::Less,
            (HilbertRatio::Infinite, HilbertRatio::Finite(_)) => Ordering::Greater,
            (HilbertRatio::Infinite, HilbertRatio::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for HilbertRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertRatio::Finite(d) => write!(f, "{d}"),
            HilbertRatio::Infinite => f.write_str("inf"),
        }
    }
}

fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return libm::log(n.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    libm::log(top.to_f64().expect("64 bits")) + shift as f64 * core::f64::consts::LN_2
}

/// Natural logarithm of a positive rational, without overflow.
pub fn ln_rational(q: &BigRational) -> f64 {
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    if let (Some(x), Some(y)) = (n.to_f64(), d.to_f64()) {
        if x.is_finite() && y.is_finite() && x > 0.0 && y > 0.0 {
            let v = x / y;
            if v.is_normal() {
                return libm::log(v);
            }
        }
    }
    ln_big(n) - ln_big(d)
}

/// `max_{i,j} α_i β_j / (α_j β_i)`.
pub fn hilbert_ratio(alpha: &[BigRational], beta: &[BigRational]) -> HilbertRatio {
    if alpha.iter().chain(beta).any(Zero::is_zero) {
        return HilbertRatio::Infinite;
    }
    let ratios: Vec<BigRational> = alpha.iter().zip(beta).map(|(a, b)| a / b).collect();
    let max = ratios.iter().max().expect("non-empty");
    let min = ratios.iter().min().expect("non-empty");
    HilbertRatio::Finite(max / min)
}

/// Largest Hilbert ratio between two of the points.
pub fn hilbert_diameter(points: &[Vec<BigRational>]) -> HilbertRatio {
    let mut best = HilbertRatio::Finite(BigRational::one());
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = hilbert_ratio(a, b);
            if d == HilbertRatio::Infinite {
                return d;
            }
            best = best.max(d);
        }
    }
    best
}

/// `d(A) = max a_il a_jm / (a_im a_jl)` for a strictly positive matrix.
pub fn cross_ratio_d(m: &AbelianMatrix) -> Result<BigRational> {
    let k = m.k();
    for i in 0..k {
        for j in 0..k {
            if m.entry(i, j).is_zero() {
                return Err(Error::ZeroMatrixEntry { row: i, column: j });
            }
        }
    }
    let q = |i: usize, j: usize| BigRational::from_integer(BigInt::from(m.entry(i, j).clone()));
    let mut best = BigRational::one();
    for i in 0..k {
        for j in i + 1..k {
            let ratios: Vec<BigRational> = (0..k).map(|l| q(i, l) / q(j, l)).collect();
            let max = ratios.iter().max().expect("k >= 1");
            let min = ratios.iter().min().expect("k >= 1");
            let d = max / min;
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// `τ(d) = (√d - 1)/(√d + 1)`, the Birkhoff contraction coefficient, in
/// double precision.
pub fn birkhoff_tau(d: &BigRational) -> f64 {
    let root = libm::exp(ln_rational(d) / 2.0);
    tau_from_root(root)
}

pub fn birkhoff_tau_f64(d: f64) -> f64 {
    tau_from_root(libm::sqrt(d))
}

fn tau_from_root(root: f64) -> f64 {
    if root.is_infinite() {
        1.0
    } else {
        ((root - 1.0) / (root + 1.0)).max(0.0)
    }
}

/// Sup-norm distance.
pub fn d_infinity(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `δ_r`: the least sup-norm distance between two of the first `k - 1`
/// vertices.
pub fn separation_delta(v: &VertexImages) -> Result<BigRational> {
    let k = v.k();
    if k < 3 {
        return Err(Error::AlphabetTooSmall { k, min: 3 });
    }
    let mut best: Option<BigRational> = None;
    for i in 0..k - 1 {
        for j in i + 1..k - 1 {
            let d = d_infinity(&v.vertices[i], &v.vertices[j]);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    Ok(best.expect("k >= 3"))
}

/// `n_0, ..., n_{r_max}` with `n_r = 2^{r+2} ∏_{i<r} (n_i + 2)`.
pub fn exceptional_itinerary(k: usize, n0: &BigUint, r_max: usize) -> Result<Vec<BigUint>> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall { k, min: 3 });
    }
    Ok(ItinerarySpec::ExceptionalGrowth { n0: n0.clone() }.take(r_max + 1))
}

/// Hilbert ratios before and after applying `K_n^{-1}` to two interior points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExpansion {
    pub before: BigRational,
    pub after: BigRational,
    pub holds: bool,
}

pub fn check_non_expansion(
    n: &BigUint,
    alpha: &[BigRational],
    beta: &[BigRational],
) -> Result<NonExpansion> {
    if alpha.len() != beta.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            found: beta.len(),
        });
    }
    let HilbertRatio::Finite(before) = hilbert_ratio(alpha, beta) else {
        return Err(Error::BoundaryPoint);
    };
    let a = inverse_branch(n, alpha);
    let b = inverse_branch(n, beta);
    let HilbertRatio::Finite(after) = hilbert_ratio(&a, &b) else {
        return Err(Error::BoundaryPoint);
    };
    Ok(NonExpansion {
        holds: after <= before,
        before,
        after,
    })
}

/// Points after merging those within a sup-norm tolerance, and the dimension
/// of their affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEstimate {
    pub depth: usize,
    /// Cluster index of each input point.
    pub clusters: Vec<usize>,
    pub points: usize,
    pub dimension: usize,
}

pub fn dimension_estimate(
    depth: usize,
    points: &[Vec<BigRational>],
    tolerance: &BigRational,
) -> DimensionEstimate {
    let mut reps: Vec<Vec<BigRational>> = Vec::new();
    let mut clusters = Vec::with_capacity(points.len());
    for p in points {
        match reps.iter().position(|r| d_infinity(r, p) <= *tolerance) {
            Some(c) => clusters.push(c),
            None => {
                clusters.push(reps.len());
                reps.push(p.clone());
            }
        }
    }
    DimensionEstimate {
        depth,
        clusters,
        points: reps.len(),
        dimension: affine_rank(&reps),
    }
}

/// Result of an exhaustive scan of `d(A(n_0, ..., n_{2k-4}))` over
/// `1 <= n_r <= max_entry`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatioFit {
    pub cases: usize,
    /// Largest `d / (n_{k-1} + ... + n_{2k-4})` seen: the fitted constant.
    pub constant: BigRational,
    pub worst: Vec<BigUint>,
    /// Largest `a_il / a_im` with `l < m`.
    pub max_small_quotient: BigRational,
}

pub fn fit_cross_ratio_constant(k: usize, max_entry: u64) -> Result<CrossRatioFit> {
    let alphabet = Alphabet::new(k)?;
    if k < 3 {
        return Err(Error::AlphabetTooSmall { k, min: 3 });
    }
    let len = 2 * k - 3;
    let mut tuple = vec![1u64; len];
    let mut fit = CrossRatioFit {
        cases: 0,
        constant: BigRational::zero(),
        worst: Vec::new(),
        max_small_quotient: BigRational::zero(),
    };
    loop {
        let branches: Vec<BigUint> = tuple.iter().map(|&n| BigUint::from(n)).collect();
        let a = AbelianMatrix::product(&branches, alphabet);
        let d = cross_ratio_d(&a)?;
        let s: u64 = tuple[k - 1..].iter().sum();
        let ratio = d / BigRational::from_integer(BigInt::from(s));
        if ratio > fit.constant {
            fit.constant = ratio;
            fit.worst = branches;
        }
        for i in 0..k {
            for l in 0..k {
                for m in l + 1..k {
                    let q = BigRational::new(
                        BigInt::from(a.entry(i, l).clone()),
                        BigInt::from(a.entry(i, m).clone()),
                    );
                    if q > fit.max_small_quotient {
                        fit.max_small_quotient = q;
                    }
                }
            }
        }
        fit.cases += 1;
        let Some(pos) = tuple.iter().position(|&n| n < max_entry) else {
            break;
        };
        for t in &mut tuple[..pos] {
            *t = 1;
        }
        tuple[pos] += 1;
    }
    Ok(fit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Exceptional,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "regular",
            Verdict::Exceptional => "exceptional",
            Verdict::Unknown => "unknown",
        })
    }
}

/// The reason behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criterion {
    TwoLetters,
    /// The itinerary ends in `0̄`.
    Rational,
    /// `n_r >= 2^{r+2} ∏_{i<r} (n_i + 2)` for all `r >= 1`.
    GrowthBound,
    /// `0 < n_r <= C r^2` for `r >= 1`.
    QuadraticBound,
    /// Infinitely many disjoint blocks `1^{2k-3}` and the vertex diameter
    /// fell below the threshold at `depth`.
    ContractionBlocks {
        depth: usize,
    },
    /// Some power of the period's matrix product is strictly positive.
    PrimitivePeriod {
        power: usize,
    },
    /// A residue class modulo `k - 1` is identically zero; the verdict is that
    /// of the itinerary with those entries deleted, over `k - 1` letters.
    ReducedDimension {
        component: usize,
    },
    Evidence,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::TwoLetters => f.write_str("two-letter alphabet"),
            Criterion::Rational => f.write_str("rational: itinerary ends in zeros"),
            Criterion::GrowthBound => f.write_str("growth bound n_r >= 2^(r+2) prod(n_i+2)"),
            Criterion::QuadraticBound => f.write_str("quadratic bound 0 < n_r <= C r^2"),
            Criterion::ContractionBlocks { depth } => write!(
                f,
                "infinitely many disjoint 1^(2k-3) blocks, diameter below threshold at depth {depth}"
            ),
            Criterion::PrimitivePeriod { power } => {
                write!(f, "period product primitive (power {power} positive)")
            }
            Criterion::ReducedDimension { component } => {
                write!(f, "component {component} vanishes, reduced to k-1 letters")
            }
            Criterion::Evidence => f.write_str("no criterion applies, evidence only"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub max_depth: usize,
    /// Hilbert ratio below which the vertex set counts as collapsed.
    pub threshold: BigRational,
    /// Sup-norm tolerance used to merge vertices in the dimension estimate.
    pub tolerance: BigRational,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_depth: 64,
            threshold: BigRational::new(BigInt::from(1001), BigInt::from(1000)),
            tolerance: BigRational::new(BigInt::from(1), BigInt::from(64)),
        }
    }
}

/// Depth limit for the super-exponential growth generator.
pub const GROWTH_EVIDENCE_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub k: usize,
    pub verdict: Verdict,
    pub criterion: Criterion,
    /// Deepest `r` in the traces.
    pub depth: usize,
    pub delta_trace: Vec<BigRational>,
    pub diameter_trace: Vec<HilbertRatio>,
    pub dimension: Option<DimensionEstimate>,
    pub reduced: Option<Box<Classification>>,
}

pub fn classify(
    spec: &ItinerarySpec,
    k: usize,
    options: &ClassifyOptions,
) -> Result<Classification> {
    let alphabet = Alphabet::new(k)?;
    let spec = spec.clone().normalized();

    let depth_limit = match spec {
        ItinerarySpec::ExceptionalGrowth { .. } => options.max_depth.min(GROWTH_EVIDENCE_DEPTH),
        _ => options.max_depth,
    };
    let entries = spec.take(depth_limit);
    let trace = vertex_trace(&entries, alphabet);
    let delta_trace = if k >= 3 {
        trace
            .iter()
            .map(separation_delta)
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let diameter_trace: Vec<HilbertRatio> = trace
        .iter()
        .map(|v| hilbert_diameter(&v.vertices))
        .collect();
    let dimension = trace
        .last()
        .map(|v| dimension_estimate(v.depth, &v.vertices, &options.tolerance));
    let mut out = Classification {
        k,
        verdict: Verdict::Unknown,
        criterion: Criterion::Evidence,
        depth: trace.len().saturating_sub(1),
        delta_trace,
        diameter_trace,
        dimension,
        reduced: None,
    };
    let regular = |mut c: Classification, criterion| {
        c.verdict = Verdict::Regular;
        c.criterion = criterion;
        Ok(c)
    };

    if k == 2 {
        return regular(out, Criterion::TwoLetters);
    }
    match &spec {
        ItinerarySpec::Terminating(_) => regular(out, Criterion::Rational),
        ItinerarySpec::ExceptionalGrowth { .. } => {
            out.verdict = Verdict::Exceptional;
            out.criterion = Criterion::GrowthBound;
            Ok(out)
        }
        ItinerarySpec::Polynomial { exponent, .. } if *exponent <= 2 => {
            regular(out, Criterion::QuadraticBound)
        }
        ItinerarySpec::Periodic(block) => {
            if block.iter().all(|n| !n.is_zero()) {
                return regular(out, Criterion::QuadraticBound);
            }
            if contains_cyclic_ones(block, 2 * k - 3) {
                if let Some(r) = out
                    .diameter_trace
                    .iter()
                    .position(|d| d.finite().is_some_and(|d| *d < options.threshold))
                {
                    return regular(out, Criterion::ContractionBlocks { depth: r });
                }
            }
            if let Some(power) = primitive_power(block, alphabet) {
                return regular(out, Criterion::PrimitivePeriod { power });
            }
            if let Some((component, reduced)) = reduce_periodic(block, k) {
                let inner = classify(&ItinerarySpec::Periodic(reduced), k - 1, options)?;
                out.verdict = inner.verdict;
                out.criterion = Criterion::ReducedDimension { component };
                out.reduced = Some(Box::new(inner));
                return Ok(out);
            }
            Ok(out)
        }
        _ => Ok(out),
    }
}

fn contains_cyclic_ones(block: &[BigUint], run: usize) -> bool {
    let p = block.len();
    if p == 0 {
        return false;
    }
    let mut count = 0usize;
    for i in 0..p + run {
        if block[i % p].is_one() {
            count += 1;
            if count >= run {
                return true;
            }
        } else {
            count = 0;
        }
    }
    false
}

/// Smallest `m <= (k-1)^2 + 1` with the `m`-th power of the period product
/// strictly positive.
fn primitive_power(block: &[BigUint], alphabet: Alphabet) -> Option<usize> {
    let k = alphabet.k();
    let p = AbelianMatrix::product(block, alphabet);
    let pattern: Vec<bool> = (0..k * k)
        .map(|e| !p.entry(e / k, e % k).is_zero())
        .collect();
    let mut acc = pattern.clone();
    for m in 1..=(k - 1) * (k - 1) + 1 {
        if acc.iter().all(|&b| b) {
            return Some(m);
        }
        let mut next = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                next[i * k + j] = (0..k).any(|l| acc[i * k + l] && pattern[l * k + j]);
            }
        }
        acc = next;
    }
    None
}

/// If the entries at `r ≡ i - 1 (mod k - 1)` all vanish, the periodic block
/// over `k - 1` letters obtained by deleting them.
fn reduce_periodic(block: &[BigUint], k: usize) -> Option<(usize, Vec<BigUint>)> {
    let p = block.len();
    let span = p.lcm(&(k - 1));
    (1..k).find_map(|i| {
        let zero = (0..span)
            .filter(|r| r % (k - 1) == i - 1)
            .all(|r| block[r % p].is_zero());
        zero.then(|| {
            let reduced = (0..span)
                .filter(|r| r % (k - 1) != i - 1)
                .map(|r| block[r % p].clone())
                .collect();
            (i, reduced)
        })
    })
}
