//! Distributional checks of the samplers and estimators against exact laws.

use sortnet::exact::export::rational_to_f64;
use sortnet::exact::{
    enumerate_networks, expected_subnet_swaps_all, first_swap_pmf_vec, ratio, theorem1_expectation,
};
use sortnet::geometry::{has_point_inside_triangle, sample_geometric_network};
use sortnet::montecarlo::{
    compare_laws, geometric_law_m4, geometric_swap_location_pmfs, mc_corollary2,
    mc_subnet_swap_expectation, mc_subnet_swap_profile, run_tally, subnet_law_m4, McConfig,
};
use sortnet::network::pair_count;
use sortnet::{sample_uniform_network, SortingNetwork};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SE_BAND: f64 = 3.0;
const WORKERS: usize = 8;

fn chi_square_critical(df: usize, level: f64) -> f64 {
    ChiSquared::new(df as f64).unwrap().inverse_cdf(1.0 - level)
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

#[test]
fn four_particle_sampler_is_uniform() {
    let all: Vec<SortingNetwork> = enumerate_networks(4).unwrap().collect();
    let samples = 100_000u64;
    let counts = run_tally(
        &McConfig::new(samples, 1, WORKERS),
        || vec![0u64; 16],
        |h, rng| h[all.binary_search(&sample_uniform_network(4, rng)).unwrap()] += 1,
        merge_counts,
    )
    .unwrap();
    let e = samples as f64 / 16.0;
    let stat: f64 = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    assert!(stat <= chi_square_critical(15, 0.01), "chi-square {stat}");
}

/// Every swap time of a uniform 10-particle network has the first-swap law.
/// Representative times are held to the per-location band; all 45 times
/// get a chi-square test at a Bonferroni-corrected 1% level.
#[test]
fn every_swap_time_has_first_swap_law() {
    let n = 10;
    let big_n = pair_count(n);
    let samples = 100_000u64;
    let counts = run_tally(
        &McConfig::new(samples, 2, WORKERS),
        || vec![0u64; big_n * (n - 1)],
        |h, rng| {
            for (t, &s) in sample_uniform_network(n, rng).swaps().iter().enumerate() {
                h[t * (n - 1) + s as usize - 1] += 1;
            }
        },
        merge_counts,
    )
    .unwrap();
    let p: Vec<f64> = first_swap_pmf_vec(n).iter().map(rational_to_f64).collect();
    let crit = chi_square_critical(n - 2, 0.01 / big_n as f64);
    for (t, row) in counts.chunks(n - 1).enumerate() {
        let stat: f64 = row
            .iter()
            .zip(&p)
            .map(|(&o, &q)| (o as f64 - q * samples as f64).powi(2) / (q * samples as f64))
            .sum();
        assert!(stat <= crit, "t={}: chi-square {stat}", t + 1);
        if [0, 1, big_n / 2, big_n - 2, big_n - 1].contains(&t) {
            for (&o, &q) in row.iter().zip(&p) {
                let f = o as f64 / samples as f64;
                let se = (f * (1.0 - f) / samples as f64).sqrt();
                assert!((f - q).abs() <= SE_BAND * se, "t={} f={f} p={q}", t + 1);
            }
        }
    }
}

#[test]
fn subnetwork_expectation_examples() {
    let cfg = McConfig::new(100_000, 3, WORKERS);
    let est = mc_subnet_swap_expectation(20, 4, 2, &cfg).unwrap();
    assert!(est.within(2.25, SE_BAND), "{est:?}");

    assert_eq!(theorem1_expectation(5, 1).unwrap(), ratio(35, 16));
    let est = mc_subnet_swap_expectation(50, 5, 1, &McConfig::new(20_000, 4, WORKERS)).unwrap();
    assert!(est.within(35.0 / 16.0, SE_BAND), "{est:?}");
}

#[test]
fn full_subset_estimates_converge_to_enumeration() {
    let cfg = McConfig::new(100_000, 5, WORKERS);
    for n in [4, 5, 6] {
        let exact = expected_subnet_swaps_all(n, n).unwrap();
        let est = mc_subnet_swap_profile(n, n, &cfg).unwrap();
        for (e, x) in est.iter().zip(&exact) {
            assert!(e.within(rational_to_f64(x), SE_BAND), "n={n}: {e:?} vs {x}");
        }
    }
}

#[test]
fn corollary_quarter_at_large_n() {
    let est = mc_corollary2(100, &McConfig::new(10_000, 6, WORKERS)).unwrap();
    assert!(est.within(0.25, SE_BAND), "{est:?}");
    let est = mc_corollary2(4, &McConfig::new(20_000, 7, WORKERS)).unwrap();
    assert!(est.within(0.25, SE_BAND), "{est:?}");
}

#[test]
fn four_subnetwork_law_report() {
    let cfg = McConfig::new(100_000, 8, WORKERS);
    let law10 = subnet_law_m4(10, &cfg).unwrap();
    assert!(law10.counts().iter().all(|&c| c > 0));
    let se = (0.25 * 0.75 / 100_000f64).sqrt();
    assert!((law10.corollary2_mass() - 0.25).abs() <= SE_BAND * se);

    let law50 = subnet_law_m4(50, &McConfig::new(20_000, 9, WORKERS)).unwrap();
    let geo = geometric_law_m4(&cfg).unwrap();
    let cmp = compare_laws(&law50, &geo, 200, 10);
    // Descriptive only: the limit law is conjectural.
    println!(
        "TV(4-of-50, geometric) = {:.4} ± {:.4}",
        cmp.tv_distance, cmp.bootstrap_se
    );
    assert!((0.0..=1.0).contains(&cmp.tv_distance));
}

/// The four triangle-containment networks arise exactly when one point is
/// inside the triangle of the other three.
#[test]
fn geometric_containment_matches_network_class() {
    let special: Vec<SortingNetwork> = sortnet::exact::COROLLARY2_NETWORKS
        .iter()
        .map(|w| SortingNetwork::new(4, w.to_vec()).unwrap())
        .collect();
    let mismatches = run_tally(
        &McConfig::new(100_000, 11, WORKERS),
        || 0u64,
        |bad, rng| {
            let (pts, net) = sample_geometric_network(4, rng);
            if has_point_inside_triangle(&pts).unwrap() != special.contains(&net) {
                *bad += 1;
            }
        },
        |a, b| a + b,
    )
    .unwrap();
    assert_eq!(mismatches, 0);
}

#[test]
fn geometric_five_point_expectations() {
    let cfg = McConfig::new(1_000_000, 12, WORKERS);
    for j in 1..5 {
        let est = sortnet::geometry::mc_geometric_swap_expectation(5, j, &cfg).unwrap();
        let exact = rational_to_f64(&theorem1_expectation(5, j).unwrap());
        assert!(est.within(exact, SE_BAND), "j={j}: {est:?} vs {exact}");
    }
}

#[test]
fn geometric_swap_time_report() {
    let pmfs = geometric_swap_location_pmfs(5, &McConfig::new(50_000, 13, WORKERS)).unwrap();
    for (t, row) in pmfs.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|p| format!("{p:.4}")).collect();
        println!("t={:2}: {}", t + 1, cells.join(" "));
        assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
