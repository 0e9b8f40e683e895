//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) and exits non-zero if any
//! criterion fails. Statistical checks use fixed seeds, so every run is
//! reproducible.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_3, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sortnet::exact::export::rational_to_f64;
use sortnet::exact::{
    corollary2_probability, count_networks, enumerate_networks, enumerated_swap_pmfs,
    expected_subnet_swaps_all, first_swap_pmf_vec, lemma6_check, subnet_first_vs_second_swap,
    swap_count_law, theorem1_expectation, Rational, COROLLARY2_NETWORKS,
};
use sortnet::geometry::{
    archimedes_expected_swaps, archimedes_point, beta_integral, mc_geometric_swap_expectation,
    pair_projection_distance, sample_archimedes,
};
use sortnet::montecarlo::{mc_corollary2, run_tally, Estimate, McConfig};
use sortnet::network::validate;
use sortnet::tableau::{network_to_syt, sample_syt, syt_to_network};
use sortnet::urn::{coupled_first_swaps, white_count_pmf};
use sortnet::{sample_uniform_network, StaircaseSyt};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Width of Monte Carlo acceptance bands, in standard errors.
const SE_BAND: f64 = 3.0;
/// Significance level of the chi-square and Kolmogorov–Smirnov tests.
const TEST_LEVEL: f64 = 0.01;
/// Asymptotic Kolmogorov critical value at `TEST_LEVEL`: sqrt(ln(2/0.01)/2).
const KS_CRITICAL: f64 = 1.627_623_7;
/// Absolute tolerance between the geometric integral and the closed form.
const INTEGRAL_ABS_TOL: f64 = 1e-8;
/// Relative tolerance between the two Beta-integral evaluations.
const BETA_REL_TOL: f64 = 1e-10;
/// Wall-clock budget for one 500-particle sample.
const SAMPLE_500_BUDGET: Duration = Duration::from_secs(10);

const WORKERS: usize = 8;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chi_square_critical(df: usize) -> f64 {
    ChiSquared::new(df as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - TEST_LEVEL)
}

/// Pearson statistic of observed counts against exact cell probabilities.
fn chi_square(counts: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    counts
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum()
}

/// Per-cell indicator estimates from a histogram.
fn cell_estimates(counts: &[u64]) -> Vec<Estimate> {
    let total: u64 = counts.iter().sum();
    counts
        .iter()
        .map(|&c| {
            let p = c as f64 / total as f64;
            let var = p * (1.0 - p) * total as f64 / (total - 1) as f64;
            Estimate {
                mean: p,
                stderr: (var / total as f64).sqrt(),
                count: total,
            }
        })
        .collect()
}

/// Checks a histogram over locations `1..` against an exact pmf, cell by
/// cell within `SE_BAND` and by a chi-square test. Returns the worst z.
fn compare_histogram(counts: &[u64], exact: &[Rational], with_chi: bool) -> Result<String, String> {
    let probs: Vec<f64> = exact.iter().map(rational_to_f64).collect();
    let mut worst = 0.0f64;
    for (k, (est, &p)) in cell_estimates(counts).iter().zip(&probs).enumerate() {
        let z = est.z_score(p).abs();
        worst = worst.max(z);
        ensure(est.within(p, SE_BAND), || {
            format!(
                "location {}: {:.5} vs {:.5} (z = {z:.2})",
                k + 1,
                est.mean,
                p
            )
        })?;
    }
    let mut detail = format!("max |z| = {worst:.2}");
    if with_chi {
        let stat = chi_square(counts, &probs);
        let crit = chi_square_critical(counts.len() - 1);
        ensure(stat <= crit, || format!("chi-square {stat:.2} > {crit:.2}"))?;
        detail += &format!(", chi-square {stat:.2} <= {crit:.2}");
    }
    Ok(detail)
}

fn histogram(
    cfg: &McConfig,
    cells: usize,
    draw: impl Fn(&mut rand_chacha::ChaCha8Rng) -> usize + Sync,
) -> Vec<u64> {
    run_tally(
        cfg,
        || vec![0u64; cells],
        |h, rng| h[draw(rng)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
    .expect("valid config")
}

fn subnetwork_expectation_is_n_independent() -> Outcome {
    let mut checked = 0;
    for n in 2..=6 {
        let enumerated = enumerate_networks(n).map_err(|e| e.to_string())?.count();
        let hook = count_networks(n);
        ensure(hook == enumerated.into(), || {
            format!("n={n}: enumerated {enumerated} networks, hook formula {hook}")
        })?;
        for m in 2..=n {
            let brute = expected_subnet_swaps_all(n, m).map_err(|e| e.to_string())?;
            for (j, value) in (1..m).zip(brute) {
                let closed = theorem1_expectation(m, j).map_err(|e| e.to_string())?;
                ensure(value == closed, || {
                    format!("n={n} m={m} j={j}: {value} != {closed}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} (n, m, j) triples equal; 292864 six-particle networks enumerated"
    ))
}

fn containment_probability_is_quarter() -> Outcome {
    let quarter = Rational::new(1.into(), 4.into());
    for n in 4..=6 {
        let p = corollary2_probability(n).map_err(|e| e.to_string())?;
        ensure(p == quarter, || format!("n={n}: probability {p}"))?;
    }
    for net in enumerate_networks(4).map_err(|e| e.to_string())? {
        let special = COROLLARY2_NETWORKS.iter().any(|w| net.swaps() == w);
        let expect = if special { 3 } else { 2 };
        ensure(net.count_at(2) == expect, || {
            format!(
                "{net}: {} swaps at location 2, expected {expect}",
                net.count_at(2)
            )
        })?;
    }
    let mut detail = String::from("exact 1/4 for n=4,5,6; location-2 counts 3/2 at n=4");
    for n in [10, 50] {
        let est = mc_corollary2(n, &McConfig::new(100_000, SEED + n as u64, WORKERS))
            .map_err(|e| e.to_string())?;
        ensure(est.within(0.25, SE_BAND), || format!("n={n}: {est:?}"))?;
        detail += &format!("; n={n}: {:.4} ± {:.4}", est.mean, est.stderr);
    }
    Ok(detail)
}

fn hypergeometric_mixture_identity() -> Outcome {
    let mut checked = 0;
    for n in 2..=40 {
        for m in 2..=n {
            for j in 1..m {
                let l = lemma6_check(n, m, j).map_err(|e| e.to_string())?;
                ensure(l.holds(), || {
                    format!("n={n} m={m} j={j}: {} != {}", l.lhs, l.rhs)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, m, j) triples hold exactly"))
}

fn first_swap_law_consistency() -> Outcome {
    for n in 2..=50 {
        let urn = white_count_pmf(n).map_err(|e| e.to_string())?;
        ensure(urn == first_swap_pmf_vec(n), || {
            format!("urn law differs at n={n}")
        })?;
    }
    for n in 2..=6 {
        let exact = first_swap_pmf_vec(n);
        for (t, pmf) in enumerated_swap_pmfs(n)
            .map_err(|e| e.to_string())?
            .iter()
            .enumerate()
        {
            ensure(*pmf == exact, || {
                format!("n={n}: law of swap {} differs", t + 1)
            })?;
        }
    }
    Ok("urn = first-swap law for n<=50; every swap time matches for n<=6".into())
}

/// All staircase tableaux of size `n`, by placing the largest remaining
/// entry into each removable corner of the still-empty shape.
fn all_tableaux(n: usize) -> Vec<StaircaseSyt> {
    fn rec(
        empty: &mut Vec<usize>,
        next: u32,
        grid: &mut Vec<Vec<u32>>,
        out: &mut Vec<StaircaseSyt>,
    ) {
        if next == 0 {
            out.push(
                StaircaseSyt::new(grid.len() + 1, grid.clone())
                    .expect("corner filling yields a tableau"),
            );
            return;
        }
        for r in 0..empty.len() {
            let len = empty[r];
            if len > 0 && (r + 1 == empty.len() || empty[r + 1] < len) {
                grid[r][len - 1] = next;
                empty[r] -= 1;
                rec(empty, next - 1, grid, out);
                empty[r] += 1;
            }
        }
    }
    let mut empty: Vec<usize> = (1..n).rev().collect();
    let mut grid: Vec<Vec<u32>> = empty.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    rec(&mut empty, (n * (n - 1) / 2) as u32, &mut grid, &mut out);
    out
}

fn insertion_bijection() -> Outcome {
    for n in 2..=5 {
        let expected = count_networks(n);
        let networks: Vec<_> = enumerate_networks(n).map_err(|e| e.to_string())?.collect();
        let mut images = BTreeSet::new();
        for net in &networks {
            let syt = network_to_syt(net);
            let back = syt_to_network(&syt).map_err(|e| e.to_string())?;
            ensure(&back == net, || format!("{net} does not round-trip"))?;
            ensure(syt.largest_entry_corner() as u32 == net.swap_at(1), || {
                format!("{net}: largest entry not at first swap location")
            })?;
            images.insert(syt.to_string());
        }
        ensure(images.len() == networks.len(), || {
            format!("n={n}: insertion not injective")
        })?;
        let tableaux = all_tableaux(n);
        ensure(
            expected == tableaux.len().into() && expected == networks.len().into(),
            || {
                format!(
                    "n={n}: {} tableaux, {} networks, hook count {expected}",
                    tableaux.len(),
                    networks.len()
                )
            },
        )?;
        for syt in &tableaux {
            let net = syt_to_network(syt).map_err(|e| e.to_string())?;
            ensure(network_to_syt(&net) == *syt, || {
                format!("n={n}: tableau does not round-trip")
            })?;
            ensure(images.contains(&syt.to_string()), || {
                format!("n={n}: tableau missed")
            })?;
        }
    }
    let n = 10;
    let cfg = McConfig::new(100_000, SEED + 5, WORKERS);
    let counts = histogram(&cfg, n - 1, |rng| {
        syt_to_network(&sample_syt(n, rng))
            .expect("valid tableau")
            .swap_at(1) as usize
            - 1
    });
    let detail = compare_histogram(&counts, &first_swap_pmf_vec(n), true)?;
    Ok(format!("exhaustive for n<=5; n=10 first swap: {detail}"))
}

/// CDF of the semicircle law on [-1, 1].
fn semicircle_cdf(r: f64) -> f64 {
    let r = r.clamp(-1.0, 1.0);
    0.5 + (r * (1.0 - r * r).sqrt() + r.asin()) / PI
}

fn ks_uniform(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = (x + 1.0) / 2.0;
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn geometric_expectation() -> Outcome {
    let mut worst_gap = 0.0f64;
    for m in 2..=10 {
        for j in 1..m {
            let integral = archimedes_expected_swaps(m, j).map_err(|e| e.to_string())?;
            let exact = rational_to_f64(&theorem1_expectation(m, j).map_err(|e| e.to_string())?);
            let gap = (integral - exact).abs();
            worst_gap = worst_gap.max(gap);
            ensure(gap <= INTEGRAL_ABS_TOL, || {
                format!("m={m} j={j}: {integral} vs {exact}")
            })?;
        }
    }
    let mut worst_rel = 0.0f64;
    for m in 2..=20 {
        for j in 1..m {
            let b = beta_integral(j, m).map_err(|e| e.to_string())?;
            worst_rel = worst_rel.max(b.relative_difference());
            ensure(b.relative_difference() <= BETA_REL_TOL, || {
                format!("j={j} m={m}: {b:?}")
            })?;
        }
    }

    let est = mc_geometric_swap_expectation(4, 2, &McConfig::new(1_000_000, SEED + 6, WORKERS))
        .map_err(|e| e.to_string())?;
    ensure(est.within(2.25, SE_BAND), || format!("m=4 j=2: {est:?}"))?;

    const BINS: usize = 50;
    let samples = 1_000_000u64;
    let counts = histogram(&McConfig::new(samples, SEED + 7, WORKERS), BINS, |rng| {
        let (pts, _) = sample_archimedes(2, rng);
        let r = pair_projection_distance(&pts, 1, 2).expect("distinct labels");
        (((r + 1.0) / 2.0 * BINS as f64) as usize).min(BINS - 1)
    });
    let probs: Vec<f64> = (0..BINS)
        .map(|b| {
            let lo = -1.0 + 2.0 * b as f64 / BINS as f64;
            let hi = -1.0 + 2.0 * (b + 1) as f64 / BINS as f64;
            semicircle_cdf(hi) - semicircle_cdf(lo)
        })
        .collect();
    let stat = chi_square(&counts, &probs);
    let crit = chi_square_critical(BINS - 1);
    ensure(stat <= crit, || {
        format!("semicircle chi-square {stat:.2} > {crit:.2}")
    })?;

    let mut ks = Vec::new();
    for angle in [0.0, FRAC_PI_3] {
        let (c, s) = (angle.cos(), angle.sin());
        let xs = run_tally(
            &McConfig::new(samples, SEED + 8, WORKERS),
            Vec::new,
            |v, rng| {
                let p = archimedes_point(rng);
                v.push(p.x * c + p.y * s);
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .expect("valid config");
        let d = ks_uniform(xs) * (samples as f64).sqrt();
        ensure(d <= KS_CRITICAL, || {
            format!("projection at {angle:.4}: KS {d:.3} > {KS_CRITICAL}")
        })?;
        ks.push(d);
    }
    Ok(format!(
        "max |integral - exact| = {worst_gap:.1e}; max Beta rel diff = {worst_rel:.1e}; \
         m=4 j=2: {:.4} ± {:.4}; semicircle chi-square {stat:.1} <= {crit:.1}; \
         sqrt(n)·KS = {:.3}, {:.3} <= {KS_CRITICAL}",
        est.mean, est.stderr, ks[0], ks[1]
    ))
}

fn urn_coupling() -> Outcome {
    const N_MAX: usize = 50;
    const AT: usize = 20;
    let cfg = McConfig::new(100_000, SEED + 9, WORKERS);
    let (violations, counts) = run_tally(
        &cfg,
        || (0u64, vec![0u64; AT - 1]),
        |(bad, h), rng| {
            let path = coupled_first_swaps(N_MAX, rng).expect("n_max >= 2");
            *bad += path.increments().filter(|d| !(0..=1).contains(d)).count() as u64;
            h[path.at(AT) as usize - 1] += 1;
        },
        |(a, mut ha), (b, hb)| {
            ha.iter_mut().zip(hb).for_each(|(x, y)| *x += y);
            (a + b, ha)
        },
    )
    .expect("valid config");
    ensure(violations == 0, || {
        format!("{violations} increments outside {{0, 1}}")
    })?;
    let detail = compare_histogram(&counts, &first_swap_pmf_vec(AT), false)?;
    Ok(format!(
        "0 bad increments over 100000 paths; s({AT}): {detail}"
    ))
}

fn non_stationarity() -> Outcome {
    let (first, second) = subnet_first_vs_second_swap(5, 4).map_err(|e| e.to_string())?;
    ensure(first != second, || {
        "s1 and s2 of the 4-of-5 subnetwork agree".into()
    })?;
    let (first4, second4) = subnet_first_vs_second_swap(4, 4).map_err(|e| e.to_string())?;
    ensure(first4 == second4, || {
        "s1 and s2 differ for the uniform 4-network".into()
    })?;

    let differs_m4 = (1..4).any(|j| swap_count_law(4, 4, j).ok() != swap_count_law(5, 4, j).ok());
    ensure(differs_m4, || {
        "m=4 swap-count laws coincide at n=4 and n=5".into()
    })?;
    for j in 1..3 {
        let base = swap_count_law(3, 3, j).map_err(|e| e.to_string())?;
        for n in 4..=6 {
            let law = swap_count_law(n, 3, j).map_err(|e| e.to_string())?;
            ensure(law == base, || {
                format!("m=3 j={j}: law at n={n} differs from n=3")
            })?;
        }
    }
    let show = |v: &[Rational]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    Ok(format!(
        "4-of-5: s1 = [{}], s2 = [{}]; m=4 counts differ n=4 vs 5; m=3 counts equal n=3..6",
        show(&first),
        show(&second)
    ))
}

fn large_sample_performance() -> Outcome {
    let mut rng = sortnet::montecarlo::worker_rng(SEED + 10, 0);
    let start = Instant::now();
    let net = sample_uniform_network(500, &mut rng);
    let elapsed = start.elapsed();
    validate(500, net.swaps()).map_err(|e| e.to_string())?;
    ensure(elapsed <= SAMPLE_500_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "n=500 sampled in {:.3} s, {} swaps, valid",
        elapsed.as_secs_f64(),
        net.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "subnetwork expectation matches closed form (n <= 6)",
            subnetwork_expectation_is_n_independent,
        ),
        (
            "triangle-containment probability is 1/4",
            containment_probability_is_quarter,
        ),
        (
            "hypergeometric mixture identity (n <= 40)",
            hypergeometric_mixture_identity,
        ),
        (
            "first-swap law: urn, formula, enumeration",
            first_swap_law_consistency,
        ),
        (
            "insertion bijection and sampled first swap",
            insertion_bijection,
        ),
        (
            "geometric expectation, Beta integral, projections",
            geometric_expectation,
        ),
        ("urn coupling of first swaps", urn_coupling),
        ("non-stationarity of subnetworks", non_stationarity),
        (
            "500-particle sample within budget",
            large_sample_performance,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{secs:.1}s]: {reason}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
