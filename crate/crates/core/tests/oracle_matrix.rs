mod common;

use std::thread;

use common::builtin_kernels;
use topoindex::constructors::{biregular, circulant_regular};
use topoindex::oracle::{canonical_graph6, scan_regimes, MAX_ORDER};
use topoindex::{
    certify_equality, classify, classify_structure, enumerate, index_value, thresholds, verify_bound, vertex_bound,
    DegreeRange, Direction, Error, Kernel, Regime, Structure,
};

fn range(a: u32, b: u32) -> DegreeRange {
    DegreeRange::new(a, b).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Labelled graphs on `n` vertices without isolated vertices, by inclusion-exclusion.
fn no_isolated_count(n: u64) -> i128 {
    (0..=n)
        .map(|k| {
            let free = (n - k) * (n - k).saturating_sub(1) / 2;
            let term = i128::from(binomial(n, k)) << free;
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

#[test]
fn enumeration_counts_match_inclusion_exclusion() {
    for n in 2..=7usize {
        let count = enumerate(n, range(1, n as u32 - 1)).unwrap().count() as i128;
        assert_eq!(count, no_isolated_count(n as u64), "n = {n}");
    }
}

#[test]
fn enumeration_edge_cases() {
    assert_eq!(enumerate(1, range(1, 1)).unwrap().count(), 0);
    assert_eq!(enumerate(3, range(3, 4)).unwrap().count(), 0);
    assert_eq!(enumerate(4, range(3, 3)).unwrap().count(), 1);
    assert!(matches!(enumerate(MAX_ORDER + 1, range(1, 2)), Err(Error::TooLarge { .. })));
    for g in enumerate(6, range(2, 3)).unwrap() {
        assert!(g.degrees().iter().all(|d| (2..=3).contains(d)));
    }
}

/// No violation for any n <= 7, window in [1, 4], kernel or direction.
#[test]
fn full_matrix_has_no_violations() {
    let windows: Vec<_> = (1..=4).flat_map(|lo| (lo..=4).map(move |hi| range(lo, hi))).collect();
    thread::scope(|s| {
        let handles: Vec<_> = builtin_kernels()
            .into_iter()
            .flat_map(|k| [(k.clone(), Direction::Min), (k, Direction::Max)])
            .map(|(k, dir)| {
                let windows = &windows;
                s.spawn(move || {
                    for &r in windows {
                        for n in 1..=7 {
                            let report = verify_bound(n, r, &k, dir).unwrap();
                            assert!(report.passed(), "{} {r:?} n = {n} {dir:?}: {:?}", k.name(), report.violations);
                        }
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    });
}

#[test]
fn verify_report_example() {
    let report = verify_bound(5, range(1, 3), &Kernel::Randic, Direction::Min).unwrap();
    assert!(report.passed());
    assert!(report.graphs_checked > 0);
    // No (1,3)-biregular graph has 5 vertices, so the bound is not attained.
    assert!(!report.attained);
    let report = verify_bound(4, range(1, 3), &Kernel::Randic, Direction::Min).unwrap();
    assert!(report.attained);
    assert_eq!(report.witnesses, vec![canonical_graph6(&topoindex::constructors::complete_bipartite(1, 3))]);
}

#[test]
fn regime_scan_examples() {
    let r = range(1, 2);
    let scans = scan_regimes(4, r, &[-1.0, 1.0]).unwrap();
    let c4 = canonical_graph6(&circulant_regular(4, 2).unwrap());
    let matching = canonical_graph6(&circulant_regular(4, 1).unwrap());
    assert_eq!(scans[0].minimisers, vec![c4]);
    assert_eq!(scans[0].regimes, vec![Regime::MaxDegreeRegular]);
    assert_eq!(scans[0].matches, Some(true));
    assert_eq!(scans[1].minimisers, vec![matching]);
    assert_eq!(scans[1].matches, Some(true));

    let scans = scan_regimes(3, r, &[-0.5]).unwrap();
    assert!(scans[0].attained);
    assert_eq!(scans[0].minimiser_structures, vec![Structure::Biregular(1, 2)]);
}

/// Enumerated minimisers of R_alpha agree with the predicted family whenever
/// that family has a member of the given order.
#[test]
fn regime_scan_agrees_with_classification() {
    for (lo, hi) in [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4)] {
        let r = range(lo, hi);
        let (t1, t2) = thresholds(r).unwrap();
        let alphas = [-1.5, -1.0, (t1 - 1.0) / 2.0, t1, (t1 + t2) / 2.0, t2, t2 / 2.0, 0.5, 1.0];
        for n in 2..=7 {
            for scan in scan_regimes(n, r, &alphas).unwrap() {
                assert_ne!(scan.matches, Some(false), "{r:?} n = {n}: {scan:?}");
                assert_eq!(scan.attained, !scan.family_members.is_empty(), "{r:?} n = {n}: {scan:?}");
            }
        }
    }
}

#[test]
fn circulants_attain_the_regular_bound_for_every_kernel() {
    for n in 2..=12usize {
        for deg in 1..n {
            let Ok(g) = circulant_regular(n, deg) else {
                assert!(deg % 2 == 1 && n % 2 == 1);
                continue;
            };
            assert_eq!(classify_structure(&g), Structure::Regular(deg as u32));
            let d = deg as u32;
            for k in builtin_kernels() {
                let value = index_value(&g, &k).unwrap();
                let want = f64::from(d) * k.eval(d, d) / 2.0 * n as f64;
                assert!((value.to_f64() - want).abs() <= 1e-9 * want.abs().max(1.0), "{} C({n},{deg})", k.name());
                let bound = vertex_bound(&k, range(d, d), Direction::Min).unwrap().scale(n);
                if value.is_exact() {
                    assert_eq!(value, bound);
                }
                assert!(certify_equality(&g, &k, range(d, d), Direction::Max).unwrap().holds);
            }
        }
    }
}

#[test]
fn biregular_constructions_are_certified() {
    for a in 1..=5u32 {
        for b in a + 1..=5 {
            let r = range(a, b);
            let (t1, t2) = thresholds(r).unwrap();
            for t in 1..=4 {
                let g = biregular(a as usize, b as usize, t).unwrap();
                assert_eq!(classify_structure(&g), Structure::Biregular(a, b));
                for i in 1..10 {
                    let alpha = t1 + (t2 - t1) * f64::from(i) / 10.0;
                    assert_eq!(classify(r, alpha).unwrap().regime, Regime::Biregular);
                    let k = Kernel::general_randic(alpha).unwrap();
                    assert!(certify_equality(&g, &k, r, Direction::Min).unwrap().holds, "({a},{b},{t}) at {alpha}");
                }
                // Outside the band the biregular graph is not extremal.
                let k = Kernel::general_randic(t1 - 0.1).unwrap();
                assert!(!certify_equality(&g, &k, r, Direction::Min).unwrap().holds);
            }
        }
    }
}
