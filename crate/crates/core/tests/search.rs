use crosstile::codes::binary_hamming;
use crosstile::constructions::from_binary_perfect;
use crosstile::geometry::shape_size;
use crosstile::lattice::lambda_n;
use crosstile::search::{divisibility_precheck, search_tilings, SearchConfig, SearchStatus};
use crosstile::tiling::{verify, PeriodicTiling};

fn run(n: usize, p: u64, symmetry_breaking: bool) -> Vec<PeriodicTiling> {
    let out = search_tilings(&SearchConfig {
        symmetry_breaking,
        ..SearchConfig::new(n, p)
    })
    .unwrap();
    assert_eq!(out.status, SearchStatus::Complete);
    for s in &out.solutions {
        assert!(verify(s).unwrap().is_tiling);
    }
    let mut sorted = out.solutions.clone();
    sorted.sort_by(|a, b| a.codewords().cmp(b.codewords()));
    assert_eq!(sorted, out.solutions, "solutions come out sorted");
    out.solutions
}

/// A tiling with `k = p^n / |Υ_n|` codewords has `k / |stab|` translates
/// through 0 out of `p^n / |stab|`, so the counts differ by `|Υ_n|`.
#[test]
fn translation_orbits_relate_the_counts() {
    for (n, p) in [(1, 4), (3, 4), (1, 8), (1, 12), (2, 12)] {
        let on = run(n, p, true).len() as u64;
        let off = run(n, p, false).len() as u64;
        assert!(on >= 1, "({n},{p})");
        assert_eq!(off, on * shape_size(n).unwrap(), "({n},{p})");
    }
}

#[test]
fn z4_cubed_contains_the_doubled_repetition_code() {
    let sols = run(3, 4, true);
    let rep = from_binary_perfect(&binary_hamming(2).unwrap()).unwrap();
    assert!(sols.contains(&rep));
    assert!(sols.iter().all(|s| s.len() == 2));
}

#[test]
fn z12_squared_contains_the_lambda_2_window_up_to_symmetry() {
    let sols = run(2, 12, true);
    assert!(sols.iter().all(|s| s.len() == 12));
    let window = PeriodicTiling::new(2, 12, lambda_n(1).unwrap().window(12).unwrap()).unwrap();
    let want = window.canonical_form().unwrap();
    assert!(sols.iter().any(|s| s.canonical_form().unwrap() == want));
}

#[test]
fn failing_precheck_means_no_search() {
    for n in 1..=6 {
        for p in 4..=12 {
            if !divisibility_precheck(n, p) {
                let out = search_tilings(&SearchConfig::new(n, p)).unwrap();
                assert_eq!(out.status, SearchStatus::Infeasible);
                assert!(out.solutions.is_empty());
                assert!(out.certificate.is_some());
                assert_eq!(out.stats.nodes, 0);
            }
        }
    }
}

#[test]
fn oversized_windows_are_refused() {
    assert!(search_tilings(&SearchConfig::new(7, 8)).is_err());
    assert!(search_tilings(&SearchConfig::new(8, 12)).is_err());
}
