use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use super::{run_accumulate, run_tally, worker_rng, Accumulator, Estimate, McConfig, McError};
use crate::exact::{enumerate_networks, COROLLARY2_NETWORKS};
use crate::geometry::sample_geometric_network;
use crate::network::{pair_count, SortingNetwork};
use crate::tableau::sample_uniform_network;

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<(), McError> {
    if ok {
        Ok(())
    } else {
        Err(McError::Precondition(msg()))
    }
}

fn check_sizes(n: usize, m: usize) -> Result<(), McError> {
    precondition(2 <= m && m <= n, || {
        format!("need 2 <= m <= n, got n={n}, m={m}")
    })
}

/// A uniform `m`-subset of `1..=n` in increasing order (partial Fisher–Yates).
pub fn draw_subset<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<u32> {
    assert!(m <= n, "subset larger than ground set");
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    for i in 0..m {
        let k = rng.random_range(i..n);
        pool.swap(i, k);
    }
    pool.truncate(m);
    pool.sort_unstable();
    pool
}

/// Swap counts of the subnetwork on `members`, indexed by location - 1.
pub fn subnet_swap_profile(net: &SortingNetwork, members: &[u32]) -> Vec<u32> {
    let mut counts = vec![0u32; members.len() - 1];
    net.for_each_subnetwork_swap(members, |loc| counts[loc as usize - 1] += 1);
    counts
}

fn random_subnetwork_profile(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let net = sample_uniform_network(n, rng);
    let members = draw_subset(n, m, rng);
    let counts = subnet_swap_profile(&net, &members);
    let total: u32 = counts.iter().sum();
    assert_eq!(
        total as usize,
        pair_count(m),
        "each pair of a subset swaps exactly once"
    );
    counts
}

/// Mean number of location-`j` swaps in a random `m`-out-of-`n` subnetwork.
pub fn mc_subnet_swap_expectation(
    n: usize,
    m: usize,
    j: usize,
    cfg: &McConfig,
) -> Result<Estimate, McError> {
    check_sizes(n, m)?;
    precondition(1 <= j && j < m, || {
        format!("need 1 <= j <= m-1, got j={j}, m={m}")
    })?;
    let acc = run_accumulate(cfg, |rng| {
        random_subnetwork_profile(n, m, rng)[j - 1] as f64
    })?;
    Ok(acc.estimate())
}

/// Per-location estimates for `j = 1..m-1` from the same samples.
pub fn mc_subnet_swap_profile(
    n: usize,
    m: usize,
    cfg: &McConfig,
) -> Result<Vec<Estimate>, McError> {
    check_sizes(n, m)?;
    let accs = run_tally(
        cfg,
        || vec![Accumulator::new(); m - 1],
        |accs, rng| {
            for (acc, c) in accs.iter_mut().zip(random_subnetwork_profile(n, m, rng)) {
                acc.push(c as f64);
            }
        },
        |a, b| {
            a.iter()
                .zip(&b)
                .map(|(x, y)| super::welford_merge(x, y))
                .collect()
        },
    )?;
    Ok(accs.iter().map(Accumulator::estimate).collect())
}

fn is_corollary2_network(net: &SortingNetwork) -> bool {
    COROLLARY2_NETWORKS.iter().any(|w| net.swaps() == w)
}

/// Frequency with which the random 4-out-of-`n` subnetwork is one of the
/// four networks with a point inside the others' triangle.
pub fn mc_corollary2(n: usize, cfg: &McConfig) -> Result<Estimate, McError> {
    precondition(n >= 4, || format!("need n >= 4, got {n}"))?;
    let acc = run_accumulate(cfg, |rng| {
        let net = sample_uniform_network(n, rng);
        let members = draw_subset(n, 4, rng);
        f64::from(u8::from(is_corollary2_network(
            &net.subnetwork_sorted(&members),
        )))
    })?;
    Ok(acc.estimate())
}

/// Observed counts over the sixteen 4-particle networks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalLaw {
    networks: Vec<SortingNetwork>,
    counts: Vec<u64>,
}

impl EmpiricalLaw {
    fn empty() -> Self {
        let networks: Vec<SortingNetwork> =
            enumerate_networks(4).expect("n=4 is in range").collect();
        let counts = vec![0; networks.len()];
        EmpiricalLaw { networks, counts }
    }

    fn record(&mut self, net: &SortingNetwork) {
        let i = self
            .networks
            .binary_search(net)
            .expect("every 4-particle network is enumerated");
        self.counts[i] += 1;
    }

    fn merge(mut self, other: EmpiricalLaw) -> EmpiricalLaw {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    /// The sixteen networks in lexicographic order.
    pub fn networks(&self) -> &[SortingNetwork] {
        &self.networks
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total().max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    pub fn frequency(&self, net: &SortingNetwork) -> f64 {
        match self.networks.binary_search(net) {
            Ok(i) => self.frequencies()[i],
            Err(_) => 0.0,
        }
    }

    /// Combined frequency of the four triangle-containment networks.
    pub fn corollary2_mass(&self) -> f64 {
        let freq = self.frequencies();
        self.networks
            .iter()
            .zip(freq)
            .filter(|(net, _)| is_corollary2_network(net))
            .map(|(_, f)| f)
            .sum()
    }
}

/// Empirical law of the random 4-out-of-`n` subnetwork.
pub fn subnet_law_m4(n: usize, cfg: &McConfig) -> Result<EmpiricalLaw, McError> {
    precondition(n >= 4, || format!("need n >= 4, got {n}"))?;
    run_tally(
        cfg,
        EmpiricalLaw::empty,
        |law, rng| {
            let net = sample_uniform_network(n, rng);
            let members = draw_subset(n, 4, rng);
            law.record(&net.subnetwork_sorted(&members));
        },
        EmpiricalLaw::merge,
    )
}

/// Empirical law of the geometric network of four Archimedes points.
pub fn geometric_law_m4(cfg: &McConfig) -> Result<EmpiricalLaw, McError> {
    run_tally(
        cfg,
        EmpiricalLaw::empty,
        |law, rng| law.record(&sample_geometric_network(4, rng).1),
        EmpiricalLaw::merge,
    )
}

/// Total-variation distance between two empirical laws, with the standard
/// deviation of the distance over parametric bootstrap replicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LawComparison {
    pub tv_distance: f64,
    pub bootstrap_se: f64,
    pub resamples: usize,
}

fn tv(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// A multinomial draw of `total` items with cell probabilities `p`.
fn multinomial<R: Rng + ?Sized>(total: u64, p: &[f64], rng: &mut R) -> Vec<f64> {
    let mut left = total;
    let mut mass = 1.0;
    let mut out = Vec::with_capacity(p.len());
    for &pi in p {
        let draw = if left == 0 || mass <= 0.0 {
            0
        } else {
            let prob = (pi / mass).clamp(0.0, 1.0);
            Binomial::new(left, prob)
                .expect("probability clamped to [0, 1]")
                .sample(rng)
        };
        out.push(draw as f64 / total.max(1) as f64);
        left -= draw;
        mass -= pi;
    }
    out
}

pub fn compare_laws(
    a: &EmpiricalLaw,
    b: &EmpiricalLaw,
    resamples: usize,
    seed: u64,
) -> LawComparison {
    let (pa, pb) = (a.frequencies(), b.frequencies());
    let tv_distance = tv(&pa, &pb);
    let mut rng = worker_rng(seed, 0);
    let mut acc = Accumulator::new();
    for _ in 0..resamples {
        let ra = multinomial(a.total(), &pa, &mut rng);
        let rb = multinomial(b.total(), &pb, &mut rng);
        acc.push(tv(&ra, &rb));
    }
    LawComparison {
        tv_distance,
        bootstrap_se: acc.variance().sqrt(),
        resamples,
    }
}

/// Empirical pmf of the swap location at each time `t` of the geometric
/// network of `m` Archimedes points: row `t - 1`, column `location - 1`.
pub fn geometric_swap_location_pmfs(m: usize, cfg: &McConfig) -> Result<Vec<Vec<f64>>, McError> {
    precondition(m >= 2, || format!("need m >= 2, got {m}"))?;
    let big_n = pair_count(m);
    let counts = run_tally(
        cfg,
        || vec![0u64; big_n * (m - 1)],
        |counts, rng| {
            let (_, net) = sample_geometric_network(m, rng);
            for (t, &s) in net.swaps().iter().enumerate() {
                counts[t * (m - 1) + s as usize - 1] += 1;
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )?;
    let total = cfg.samples as f64;
    Ok(counts
        .chunks(m - 1)
        .map(|row| row.iter().map(|&c| c as f64 / total).collect())
        .collect())
}
