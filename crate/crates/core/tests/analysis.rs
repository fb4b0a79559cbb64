use evonet::analysis::ranking::{best_design_share, found_best_share, median, rank_profile};
use evonet::analysis::stats::{mann_whitney_u, midranks, normal_cdf};
use evonet::analysis::{fit_power_law, linear_fit, record_statistics, Distribution};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer samples with `P(k) ∝ k^-gamma`: continuous Pareto above 1/2 by
/// inverse CDF, rounded to the nearest integer.
fn pareto_integers(gamma: f64, n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.random::<f64>();
            let x = 0.5 * u.powf(-1.0 / (gamma - 1.0));
            x.round().min(1e12) as u64
        })
        .collect()
}

#[test]
fn recovers_planted_exponent() {
    let samples = pareto_integers(2.2, 1_000_000, 1);
    let fit = fit_power_law(&samples, 1, 200).unwrap();
    assert!((fit.exponent - 2.2).abs() < 0.1, "{}", fit.exponent);
    assert!(fit.r_squared > 0.99);
    assert!(fit.bins_used >= 7);
    // The fitted line passes near the empirical density at x = 1.
    let d = Distribution::log_binned(&samples, 1, 200, 2.0).unwrap();
    assert!((fit.density(1.0).ln() - d.density[0].ln()).abs() < 0.3);
}

#[test]
fn exponential_tail_fits_worse() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let geometric: Vec<u64> = (0..200_000).map(|_| 1 + (-(1.0 - rng.random::<f64>()).ln() * 15.0) as u64).collect();
    let exp_fit = fit_power_law(&geometric, 1, 200).unwrap();
    let pl_fit = fit_power_law(&pareto_integers(2.2, 200_000, 3), 1, 200).unwrap();
    assert!(exp_fit.r_squared < pl_fit.r_squared);
    assert!(exp_fit.r_squared < 0.95, "{}", exp_fit.r_squared);
}

#[test]
fn fit_errors() {
    assert!(fit_power_law(&[3; 20], 1, 100).is_err());
    assert!(fit_power_law(&[7; 1000], 1, 100).is_err());
    assert!(Distribution::log_binned(&[1, 2], 0, 10, 2.0).is_err());
    assert!(Distribution::log_binned(&[1, 2], 1, 10, 1.0).is_err());
}

#[test]
fn linear_fit_exact_line() {
    let x = [0.0, 1.0, 2.0, 3.0];
    let y: Vec<f64> = x.iter().map(|v| 2.0 - 0.5 * v).collect();
    let (a, b, r2) = linear_fit(&x, &y).unwrap();
    assert!((a + 0.5).abs() < 1e-15 && (b - 2.0).abs() < 1e-15 && (r2 - 1.0).abs() < 1e-15);
    assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_none());
}

#[test]
fn record_statistics_examples() {
    assert_eq!(record_statistics(&[3, 1, 4, 1, 5, 9, 2, 6], 3).unwrap(), vec![4, 9]);
    assert_eq!(record_statistics(&[2, 7], 1).unwrap(), vec![2, 7]);
    assert!(record_statistics(&[1], 2).is_err());
    assert!(record_statistics(&[1], 0).is_err());
}

#[test]
fn mann_whitney_normal_branch_matches_reference() {
    let a = [1.1, 2.3, 0.5, 4.2, 3.3, 2.2, 1.9, 0.7, 5.1, 2.8];
    let b = [3.4, 4.4, 2.9, 5.6, 6.1, 3.9, 4.8, 2.2, 7.0, 5.5];
    let r = mann_whitney_u(&a, &b).unwrap();
    assert_eq!(r.u, 14.5);
    assert!(!r.exact);
    assert!((r.p_less - 0.004_063_512_326_455_11).abs() < 1e-12, "{}", r.p_less);
    assert!((r.p_two_sided - 0.008_127_024_652_910_22).abs() < 1e-12);
}

#[test]
fn mann_whitney_exact_branch() {
    let r = mann_whitney_u(&[1.0, 2.0, 3.5], &[4.0, 5.0, 6.0, 7.0]).unwrap();
    assert!(r.exact);
    assert_eq!(r.u, 0.0);
    assert!((r.p_less - 1.0 / 35.0).abs() < 1e-15);
    assert!((r.p_two_sided - 2.0 / 35.0).abs() < 1e-15);

    let r = mann_whitney_u(&[1.0, 2.0, 3.0, 4.0], &[3.0, 5.0, 6.0, 7.0, 8.0]).unwrap();
    assert_eq!(r.u, 1.5);
    assert!((r.p_less - 1.0 / 42.0).abs() < 1e-12);
    assert!((r.p_two_sided - 2.0 / 42.0).abs() < 1e-7);
    assert!(mann_whitney_u(&[], &[1.0]).is_err());
}

#[test]
fn midranks_and_normal_cdf() {
    assert_eq!(midranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    assert!((normal_cdf(0.0) - 0.5).abs() < 1e-16);
    assert!((normal_cdf(1.644_853_626_951_472_2) - 0.95).abs() < 1e-12);
}

#[test]
fn rank_profile_hand_example() {
    // One function, two designs of two runs, one grid point.
    let data = vec![vec![vec![vec![1.0], vec![2.0]], vec![vec![3.0], vec![4.0]]]];
    let p = rank_profile(&data).unwrap();
    assert_eq!(p, vec![vec![3.5], vec![1.5]]);
    assert!(rank_profile(&[]).is_err());
    let ragged = vec![vec![vec![vec![1.0], vec![2.0, 3.0]]]];
    assert!(rank_profile(&ragged).is_err());
}

#[test]
fn share_examples() {
    let finals = vec![
        vec![vec![1.0, 5.0, 6.0], vec![2.0, 2.0, 2.0]],
        vec![vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
    ];
    assert_eq!(best_design_share(&finals), vec![50.0, 100.0]);
    assert_eq!(found_best_share(&finals), vec![100.0, 50.0]);
    assert_eq!(median(&[4.0, 1.0, 3.0]), Some(3.0));
    assert_eq!(median(&[]), None);
}

proptest! {
    #[test]
    fn binning_conserves_mass(samples in proptest::collection::vec(1u64..5000, 1..400), hi in 2u64..6000, base in 1.1f64..4.0) {
        let d = Distribution::log_binned(&samples, 1, hi, base).unwrap();
        let in_range = samples.iter().filter(|&&s| s <= hi).count() as u64;
        prop_assert_eq!(d.samples, in_range);
        prop_assert_eq!(d.counts.iter().sum::<u64>(), in_range);
        if in_range > 0 {
            prop_assert!((d.mass() - 1.0).abs() < 1e-9);
        }
        prop_assert_eq!(d.edges.first().unwrap().0, 1);
        prop_assert_eq!(d.edges.last().unwrap().1, hi + 1);
        prop_assert!(d.edges.windows(2).all(|w| w[0].1 == w[1].0));
    }

    #[test]
    fn fit_invariant_under_duplication(seed in 0u64..50, copies in 2usize..4) {
        let s = pareto_integers(2.0, 5000, seed);
        let dup: Vec<u64> = s.iter().flat_map(|&v| std::iter::repeat(v).take(copies)).collect();
        let a = fit_power_law(&s, 1, 100).unwrap();
        let b = fit_power_law(&dup, 1, 100).unwrap();
        prop_assert!((a.exponent - b.exponent).abs() < 1e-9);
        prop_assert!((a.intercept - b.intercept).abs() < 1e-9);
    }

    #[test]
    fn rank_profile_invariant_under_monotone_transform(costs in proptest::collection::vec(0.0f64..100.0, 12)) {
        let shape = |c: &[f64], f: &dyn Fn(f64) -> f64| -> Vec<Vec<Vec<Vec<f64>>>> {
            vec![c.chunks(4).map(|d| d.chunks(2).map(|r| r.iter().map(|&v| f(v)).collect()).collect()).collect()]
        };
        // 3 designs x 2 runs x 2 grid points.
        let a = rank_profile(&shape(&costs, &|v| v)).unwrap();
        let b = rank_profile(&shape(&costs, &|v| (v + 1.0).ln() * 3.0 + 7.0)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mann_whitney_symmetry(a in proptest::collection::vec(0.0f64..10.0, 1..12), b in proptest::collection::vec(0.0f64..10.0, 1..12)) {
        let ab = mann_whitney_u(&a, &b).unwrap();
        let ba = mann_whitney_u(&b, &a).unwrap();
        prop_assert!((ab.u + ba.u - (a.len() * b.len()) as f64).abs() < 1e-9);
        prop_assert!((ab.p_two_sided - ba.p_two_sided).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&ab.p_less));
        prop_assert!((0.0..=1.0).contains(&ab.p_two_sided));
    }
}
