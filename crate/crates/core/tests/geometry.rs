use std::sync::OnceLock;

use infimax_core::infimax::{
    almost_period_witness, closure_witness, infimax_prefix, InfimaxSource,
};
use infimax_core::itinerary::compare_itineraries;
use infimax_core::linalg::barycentric;
use infimax_core::minimax::{min_periodic, CountVector};
use infimax_core::regularity::{
    birkhoff_tau, check_non_expansion, cross_ratio_d, exceptional_itinerary,
    fit_cross_ratio_constant, hilbert_diameter, ln_rational, separation_delta, vertex_trace,
    CrossRatioFit,
};
use infimax_core::simplex::{
    inverse_branch, itinerary, point_from_finite_itinerary, reduce_dimension, reduce_itinerary,
    step, zero_component_profile, RationalPoint,
};
use infimax_core::substitution::{tower_apply_truncated, AbelianMatrix};
use infimax_core::word::{compare_finite, is_maximal_prefix_consistent};
use infimax_core::{Alphabet, ItinerarySpec, Letter, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(k).unwrap()
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn q(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Integer weights with a positive last entry.
fn weights(max: u64) -> impl Strategy<Value = Vec<u64>> {
    (2usize..=5).prop_flat_map(move |k| {
        prop::collection::vec(0..=max, k).prop_map(|mut w| {
            let k = w.len();
            w[k - 1] = w[k - 1].max(1);
            w
        })
    })
}

fn interior(k: usize, max: u64) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(1..=max, k).prop_map(|w| {
        let total: u64 = w.iter().sum();
        w.iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total)))
            .collect()
    })
}

fn point(w: &[u64]) -> RationalPoint {
    RationalPoint::from_counts(&big(w)).unwrap()
}

fn column_point(m: &AbelianMatrix, v: &[BigRational]) -> Vec<BigRational> {
    let k = m.k();
    let raw: Vec<BigRational> = (0..k)
        .map(|i| (0..k).map(|j| q(m.entry(i, j)) * &v[j]).sum())
        .collect();
    let total: BigRational = raw.iter().sum();
    raw.into_iter().map(|x| x / &total).collect()
}

fn cross_ratio_fit(k: usize) -> &'static CrossRatioFit {
    static FITS: OnceLock<[CrossRatioFit; 2]> = OnceLock::new();
    let fits = FITS.get_or_init(|| {
        [
            fit_cross_ratio_constant(3, 6).unwrap(),
            fit_cross_ratio_constant(4, 5).unwrap(),
        ]
    });
    &fits[k - 3]
}

proptest! {
    #[test]
    fn itinerary_round_trips(w in weights(30)) {
        let alpha = point(&w);
        let it = itinerary(&alpha, usize::MAX);
        prop_assert!(it.terminated);
        prop_assert_eq!(point_from_finite_itinerary(&it.entries, alpha.alphabet()), alpha);
    }

    #[test]
    fn counts_and_points_commute(w in weights(30)) {
        let alpha = CountVector::from_u64(&w).unwrap();
        if !alpha.is_terminal() {
            prop_assert_eq!(alpha.khat_step().to_point(), step(&alpha.to_point()));
        }
    }

    #[test]
    fn inverse_branch_is_projective(
        (k, v) in (2usize..=5).prop_flat_map(|k| (Just(k), interior(k, 20))),
        n in 0u64..30,
    ) {
        let n = BigUint::from(n);
        let m = AbelianMatrix::for_branch(&n, alphabet(k));
        prop_assert_eq!(inverse_branch(&n, &v), column_point(&m, &v));
    }

    #[test]
    fn zero_coordinates_match_vanishing_branches(w in weights(25)) {
        let alpha = point(&w);
        let k = alpha.k();
        let it = itinerary(&alpha, usize::MAX);
        prop_assert!(zero_component_profile(&alpha, &it).is_consistent());
        for i in 1..k {
            if w[i - 1] == 0 && k >= 3 {
                let reduced = reduce_dimension(&alpha, i).unwrap();
                prop_assert_eq!(
                    itinerary(&reduced, usize::MAX),
                    reduce_itinerary(&it, i, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn rational_infimax_is_the_periodic_minimax(w in weights(12), len in 1usize..200) {
        let alpha = point(&w);
        let k = alpha.k();
        let inf = infimax_prefix(&InfimaxSource::Point(alpha.clone()), k, len).unwrap();
        prop_assert_eq!(inf.word.letters(), &min_periodic(&alpha).periodic_prefix(len)[..]);
        prop_assert!(is_maximal_prefix_consistent(inf.word.letters()));
    }

    #[test]
    fn infimax_prefixes_nest(
        (k, block) in (2usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(0u64..4, 1..4))),
        a in 1usize..300,
        b in 1usize..300,
    ) {
        prop_assume!(block.iter().any(|&n| n > 0));
        let spec = ItinerarySpec::Periodic(big(&block));
        let source = InfimaxSource::Itinerary(spec);
        let (short, long) = (a.min(b), a.max(b));
        let x = infimax_prefix(&source, k, short).unwrap();
        let y = infimax_prefix(&source, k, long).unwrap();
        prop_assert_eq!(x.word.letters(), &y.word.letters()[..short]);
        prop_assert!(is_maximal_prefix_consistent(y.word.letters()));
    }

    #[test]
    fn infimax_is_monotone_in_the_itinerary(
        (k, m, n) in (2usize..=4).prop_flat_map(|k| (
            Just(k),
            prop::collection::vec(0u64..4, 1..5),
            prop::collection::vec(0u64..4, 1..5),
        )),
    ) {
        let (m, n) = (big(&m), big(&n));
        let len = 400;
        let wm = infimax_prefix(&InfimaxSource::Itinerary(ItinerarySpec::Terminating(m.clone())), k, len).unwrap();
        let wn = infimax_prefix(&InfimaxSource::Itinerary(ItinerarySpec::Terminating(n.clone())), k, len).unwrap();
        let order = compare_itineraries(&ItinerarySpec::Terminating(m).normalized().take(8), &ItinerarySpec::Terminating(n).normalized().take(8));
        let words = compare_finite(wm.word.letters(), wn.word.letters());
        prop_assert!(words == order || words.is_eq(), "{:?} {:?}", order, words);
    }

    #[test]
    fn vertex_images_follow_the_recurrence(
        (k, ns) in (2usize..=5).prop_flat_map(|k| (Just(k), prop::collection::vec(0u64..5, 2..7))),
    ) {
        let a = alphabet(k);
        let ns = big(&ns);
        let trace = vertex_trace(&ns, a);
        for r in 1..ns.len() {
            let (prev, cur) = (&trace[r - 1], &trace[r]);
            for i in 0..k - 2 {
                prop_assert_eq!(&cur.vertices[i], &prev.vertices[i + 1]);
            }
            let lens = prev.lengths();
            for (slot, ones) in [(k - 2, &ns[r] + 1u32), (k - 1, ns[r].clone())] {
                let lk = q(&lens[k - 1]);
                let l1 = q(&lens[0]) * q(&ones);
                let mixed: Vec<BigRational> = prev.vertices[k - 1]
                    .iter()
                    .zip(&prev.vertices[0])
                    .map(|(x, y)| (x * &lk + y * &l1) / (&lk + &l1))
                    .collect();
                prop_assert_eq!(&cur.vertices[slot], &mixed);
            }
            let word = tower_apply_truncated(&ns[..=r], a, &[k as Letter], usize::MAX);
            let rho = Word::new(a, word).unwrap().rho();
            prop_assert_eq!(&cur.vertices[k - 1], &rho);
        }
    }

    #[test]
    fn deeper_simplices_nest(
        (k, ns) in (2usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(0u64..6, 2..8))),
    ) {
        let trace = vertex_trace(&big(&ns), alphabet(k));
        for pair in trace.windows(2) {
            for v in &pair[1].vertices {
                let lambda = barycentric(v, &pair[0].vertices).unwrap();
                prop_assert!(lambda.iter().all(|x| *x >= BigRational::zero()));
            }
        }
    }

    #[test]
    fn inverse_branches_do_not_expand(
        (_k, a, b) in (2usize..=5).prop_flat_map(|k| (Just(k), interior(k, 30), interior(k, 30))),
        n in 0u64..=20,
    ) {
        let check = check_non_expansion(&BigUint::from(n), &a, &b).unwrap();
        prop_assert!(check.holds, "{} -> {}", check.before, check.after);
    }

    #[test]
    fn cross_ratio_grows_at_most_linearly(
        (k, ns) in (3usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(1u64..60, 2 * k - 3))),
    ) {
        let a = AbelianMatrix::product(&big(&ns), alphabet(k));
        prop_assert!(a.is_positive());
        let d = cross_ratio_d(&a).unwrap();
        let s: u64 = ns[k - 1..].iter().sum();
        let fit = cross_ratio_fit(k);
        prop_assert!(d <= &fit.constant * BigRational::from_integer(s.into()), "{:?}", ns);
    }

    #[test]
    fn diameters_collapse_along_contracting_blocks(
        (k, gaps) in (3usize..=4).prop_flat_map(|k| (
            Just(k),
            prop::collection::vec(prop::collection::vec(0u64..8, 0..3), 1..5),
        )),
    ) {
        let a = alphabet(k);
        let block = vec![BigUint::from(1u32); 2 * k - 3];
        let base = AbelianMatrix::product(&block, a);
        let tau = birkhoff_tau(&cross_ratio_d(&base).unwrap());
        let d0 = hilbert_diameter(&vertex_trace(&block, a).pop().unwrap().vertices).distance();
        let mut entries = Vec::new();
        let mut ends = Vec::new();
        for gap in &gaps {
            entries.extend(big(gap));
            entries.extend(block.iter().cloned());
            ends.push(entries.len() - 1);
        }
        let trace = vertex_trace(&entries, a);
        for (i, &end) in ends.iter().enumerate() {
            let delta = hilbert_diameter(&trace[end].vertices).distance();
            let bound = tau.powi(i as i32) * d0;
            prop_assert!(delta <= bound * (1.0 + 1e-9), "block {}: {} > {}", i, delta, bound);
        }
    }

    #[test]
    fn closure_witness_agrees_with_the_infimax(
        (k, block) in (2usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(1u64..4, 1..4))),
        depth in 0usize..3,
    ) {
        let spec = ItinerarySpec::Periodic(big(&block));
        let w = closure_witness(&spec, k, depth, 3000).unwrap();
        let target = w.target_length.to_usize().unwrap();
        prop_assert!(w.agreement >= target.min(w.word.len()));
        prop_assert!(w.maximal_consistent);
    }

    #[test]
    fn prefixes_recur_within_the_window(
        (k, block) in (2usize..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(0u64..3, 1..4))),
        len in 1usize..12,
    ) {
        prop_assume!(block.iter().any(|&n| n > 0));
        let spec = ItinerarySpec::Periodic(big(&block));
        let target = infimax_prefix(&InfimaxSource::Itinerary(spec.clone()), k, len).unwrap();
        let ap = almost_period_witness(&spec, k, target.word.letters(), 1 << 16).unwrap();
        prop_assert_ne!(ap.verified, Some(false));
    }
}

#[test]
fn cross_ratio_fits_are_small() {
    for k in 3..=4 {
        let fit = cross_ratio_fit(k);
        assert!(
            fit.max_small_quotient <= BigRational::from_integer(2.into()),
            "k={k}"
        );
        assert!(fit.constant > BigRational::zero());
    }
}

#[test]
fn separation_shrinks_slowly_along_growth() {
    for k in 3..=5usize {
        for n0 in 1..=4u64 {
            let ns = exceptional_itinerary(k, &BigUint::from(n0), 6).unwrap();
            let trace = vertex_trace(&ns, alphabet(k));
            let deltas: Vec<BigRational> =
                trace.iter().map(|v| separation_delta(v).unwrap()).collect();
            for r in 1..deltas.len() {
                let slack = BigRational::new(1.into(), BigInt::from(1u64 << (r + 2)));
                assert!(deltas[r] >= &deltas[r - 1] - slack, "k={k} n0={n0} r={r}");
            }
        }
    }
}

#[test]
fn letter_frequencies_settle_along_the_all_ones_itinerary() {
    let k = 3;
    let a = alphabet(k);
    let ones = vec![BigUint::from(1u32); 40];
    let limit = vertex_trace(&ones, a).pop().unwrap().vertices[k - 1].clone();
    let spec = ItinerarySpec::Periodic(big(&[1]));
    let len = 10_000;
    let inf = infimax_prefix(&InfimaxSource::Itinerary(spec), k, len).unwrap();
    let rho = inf.word.rho();
    let drift = rho
        .iter()
        .zip(&limit)
        .map(|(x, y)| (x - y).to_f64().unwrap().abs())
        .fold(0.0, f64::max);
    assert!(drift < 0.05, "{drift}");
    let span = hilbert_diameter(&vertex_trace(&ones, a).pop().unwrap().vertices);
    assert!(ln_rational(span.finite().unwrap()) < 1e-2);
}
