//! Library answers checked against brute-force oracles written from the
//! definitions alone.

use std::collections::BTreeSet;

use crosstile::codes::{binary_hamming, ternary_hamming};
use crosstile::constructions::{
    from_binary_perfect, from_ternary_perfect, locate_tile_ternary, phi_word,
    punctured_construction, reduce_to_representative,
};
use crosstile::geometry::{covers, cross_distance, torus_cross_distance, upsilon_offsets, Point};
use crosstile::lattice::lambda_n;
use crosstile::tiling::{verify, PeriodicTiling};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The half-cross from its definition: entries in `-1..=2`, at most one of
/// them outside `{0, 1}`.
fn in_shape(d: &[i64]) -> bool {
    d.iter().all(|v| (-1..=2).contains(v)) && d.iter().filter(|&&v| v == -1 || v == 2).count() <= 1
}

fn tile_cells(x: &[i64]) -> BTreeSet<Vec<i64>> {
    let n = x.len();
    let mut out = BTreeSet::new();
    let mut d = vec![-1i64; n];
    loop {
        if in_shape(&d) {
            out.insert(x.iter().zip(&d).map(|(a, b)| a - b).collect());
        }
        let mut i = 0;
        while i < n && d[i] == 2 {
            d[i] = -1;
            i += 1;
        }
        if i == n {
            return out;
        }
        d[i] += 1;
    }
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Per-cell coverage counts by direct scan over cells and codewords.
fn naive_counts(t: &PeriodicTiling) -> Vec<Vec<Point>> {
    let n = t.dim();
    let p = t.period() as i64;
    let cells = box_points(n, 0, p - 1);
    let mut out = Vec::new();
    // cells in little-endian index order
    let mut ordered: Vec<Vec<i64>> = cells;
    ordered.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    for c in ordered {
        let mut covering = Vec::new();
        for x in t.codewords() {
            // the unique lift of (x - c) mod p into -1..=2, if any
            let d: Option<Vec<i64>> = x
                .iter()
                .zip(&c)
                .map(|(a, b)| {
                    let r = (a - b).rem_euclid(p);
                    match r {
                        0..=2 => Some(r),
                        _ if r == p - 1 => Some(-1),
                        _ => None,
                    }
                })
                .collect();
            if d.is_some_and(|d| in_shape(&d)) {
                covering.push(x.clone());
            }
        }
        out.push(covering);
    }
    out
}

fn check_against_naive(t: &PeriodicTiling) {
    let r = verify(t).unwrap();
    let counts = naive_counts(t);
    let bad: Vec<usize> = (0..counts.len()).filter(|&i| counts[i].len() != 1).collect();
    assert_eq!(r.is_tiling, bad.is_empty());
    assert_eq!(
        r.multiply_covered,
        counts.iter().filter(|c| c.len() > 1).count() as u64
    );
    assert_eq!(r.uncovered, counts.iter().filter(|c| c.is_empty()).count() as u64);
    match (r.first_witness, bad.first()) {
        (None, None) => {}
        (Some(w), Some(&i)) => {
            assert_eq!(w.cell_index, i as u64);
            let mut want = counts[i].clone();
            want.sort();
            assert_eq!(w.covering, want);
        }
        (w, b) => panic!("witness {w:?} vs naive {b:?}"),
    }
}

#[test]
fn covers_matches_shape_definition_exhaustively() {
    for n in 1..=4 {
        let shape = upsilon_offsets(n).unwrap();
        let offsets: BTreeSet<Vec<i64>> = shape.offsets().iter().map(|d| d.to_vec()).collect();
        assert_eq!(offsets.len() as u64, (1u64 << n) * (n as u64 + 1));
        let zero = vec![0i64; n];
        for d in box_points(n, -3, 3) {
            let want = in_shape(&d);
            assert_eq!(covers(&d, &zero).unwrap(), want, "{d:?}");
            assert_eq!(offsets.contains(&d), want, "{d:?}");
        }
    }
}

#[test]
fn tiles_are_disjoint_iff_cross_distance_at_least_3() {
    for n in 1..=3 {
        let zero = vec![0i64; n];
        let base = tile_cells(&zero);
        for x in box_points(n, -4, 4) {
            let disjoint = base.is_disjoint(&tile_cells(&x));
            assert_eq!(disjoint, cross_distance(&x, &zero).unwrap() >= 3, "{x:?}");
        }
    }
}

#[test]
fn verifier_matches_naive_scan_on_constructed_tilings() {
    let l2 = PeriodicTiling::new(2, 12, lambda_n(1).unwrap().window(12).unwrap()).unwrap();
    let l2_24 = PeriodicTiling::new(2, 24, lambda_n(1).unwrap().window(24).unwrap()).unwrap();
    let rep = from_binary_perfect(&binary_hamming(2).unwrap()).unwrap();
    let h7 = from_binary_perfect(&binary_hamming(3).unwrap()).unwrap();
    let p7 = punctured_construction(&binary_hamming(3).unwrap()).unwrap();
    for t in [&l2, &l2_24, &rep, &h7, &p7] {
        assert!(verify(t).unwrap().is_tiling);
        check_against_naive(t);
    }
    // one codeword moved: both a gap and an overlap appear
    let mut moved = h7.codewords().to_vec();
    moved[5] = moved[5].add(&Point::unit(7, 2)).rem_euclid(4);
    let moved = PeriodicTiling::new(7, 4, moved).unwrap();
    check_against_naive(&moved);
    let r = verify(&moved).unwrap();
    assert!(r.multiply_covered > 0 && r.uncovered > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verifier_matches_naive_scan_on_random_sets(
        (n, p) in prop_oneof![
            (Just(1usize), 4u64..40),
            (Just(2usize), 4u64..30),
            (Just(3usize), 4u64..14),
            (Just(4usize), 4u64..8),
        ],
        seed in any::<u64>(),
        k in 0usize..24,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Point> = (0..k)
            .map(|_| Point((0..n).map(|_| rng.gen_range(0..p as i64)).collect()))
            .collect();
        let t = PeriodicTiling::new(n, p, pts).unwrap();
        check_against_naive(&t);
    }

    #[test]
    fn covers_matches_shape_definition(
        x in prop::collection::vec(-6i64..6, 1..7),
        a_seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(a_seed);
        let a: Vec<i64> = x.iter().map(|v| v + rng.gen_range(-3..=3)).collect();
        let d: Vec<i64> = x.iter().zip(&a).map(|(p, q)| p - q).collect();
        prop_assert_eq!(covers(&x, &a).unwrap(), in_shape(&d));
    }

    #[test]
    fn torus_distance_is_minimum_over_shifts(
        p in 4u64..20,
        seed in any::<u64>(),
        n in 1usize..5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
        let y: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
        let best = box_points(n, -1, 1)
            .into_iter()
            .map(|v| {
                let shifted: Vec<i64> = y.iter().zip(&v).map(|(a, s)| a + s * p as i64).collect();
                cross_distance(&x, &shifted).unwrap()
            })
            .min()
            .unwrap();
        prop_assert_eq!(torus_cross_distance(&x, &y, p).unwrap(), best);
    }

    #[test]
    fn phi_is_a_homomorphism_modulo_lambda(
        x in prop::collection::vec(0u8..3, 1..5),
        y_seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(y_seed);
        let y: Vec<u8> = x.iter().map(|_| rng.gen_range(0..3)).collect();
        let sum: Vec<u8> = x.iter().zip(&y).map(|(a, b)| (a + b) % 3).collect();
        let lattice = lambda_n(x.len()).unwrap();
        let diff = phi_word(&x).unwrap().add(&phi_word(&y).unwrap()).sub(&phi_word(&sum).unwrap());
        prop_assert!(lattice.contains(&diff).unwrap());
    }

    #[test]
    fn symmetries_preserve_validity(
        seed in any::<u64>(),
        broken in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = from_binary_perfect(&binary_hamming(2).unwrap()).unwrap();
        let mut pts = base.codewords().to_vec();
        if broken {
            pts[1] = Point::from([1, 2, 3]);
        }
        let t = PeriodicTiling::new(3, 4, pts).unwrap();
        let valid = verify(&t).unwrap().is_tiling;
        let mut sigma = vec![0, 1, 2];
        for i in (1..3).rev() {
            sigma.swap(i, rng.gen_range(0..=i));
        }
        let signs: Vec<i64> = (0..3).map(|_| if rng.gen() { 1 } else { -1 }).collect();
        let x0 = t.codewords()[rng.gen_range(0..t.len())].clone();
        for u in [
            t.permute(&sigma).unwrap(),
            t.reflect(&signs).unwrap(),
            t.normalize(&x0).unwrap(),
        ] {
            prop_assert_eq!(verify(&u).unwrap().is_tiling, valid);
            prop_assert_eq!(u.canonical_form().unwrap(), t.canonical_form().unwrap());
        }
    }
}

#[test]
fn reduction_covers_the_box() {
    let lattice = lambda_n(1).unwrap();
    for a1 in -12..=12 {
        for a2 in -12..=12 {
            let (b, y) = reduce_to_representative(&[a1, a2]).unwrap();
            assert!((0..3).contains(&b[0]) && (0..4).contains(&b[1]), "{b}");
            assert!(lattice.contains(&y).unwrap());
            assert_eq!(b, Point::from([a1, a2]).add(&y));
        }
    }
}

#[test]
fn ternary_locator_matches_window_scan() {
    for t in 1..=2 {
        let code = ternary_hamming(t).unwrap();
        let tiling = from_ternary_perfect(&code).unwrap();
        let n = tiling.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(7 + t as u64);
        for _ in 0..2000 {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-30..30)).collect();
            let x = locate_tile_ternary(&a, &code).unwrap();
            assert!(covers(&x, &a).unwrap(), "{x} does not cover {a:?}");
            assert!(tiling.contains(&x));
            // exactly one codeword of the tiling covers a
            let shape = upsilon_offsets(n).unwrap();
            let count: usize = shape
                .offsets()
                .iter()
                .map(|d| tiling.multiplicity(&Point(a.clone()).add(d)))
                .sum();
            assert_eq!(count, 1);
        }
    }
}
