//! Brute-force laws of the random `m`-out-of-`n` subnetwork.
//!
//! Every quantity here is an exact average over all (network, subset)
//! pairs, each pair weighted equally: the enumeration of all `n`-particle
//! networks crossed with all `m`-subsets of particles in lexicographic
//! order. The enumeration is split by first swap location across rayon
//! workers; partial tallies are integer counts merged in location order.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::enumerate::{NetworkEnumerator, MAX_ROUTINE_N};
use super::{precondition, ExactError, Rational};
use crate::network::{pair_count, SortingNetwork};

/// The four 4-particle networks in which one point lies inside the
/// triangle of the other three, when realized geometrically.
pub const COROLLARY2_NETWORKS: [[u32; 6]; 4] = [
    [1, 2, 3, 2, 1, 2],
    [3, 2, 1, 2, 3, 2],
    [2, 1, 2, 3, 2, 1],
    [2, 3, 2, 1, 2, 3],
];

fn check_sizes(n: usize, m: usize) -> Result<(), ExactError> {
    precondition(2 <= m && m <= n && n <= MAX_ROUTINE_N, || {
        format!("need 2 <= m <= n <= {MAX_ROUTINE_N}, got n={n}, m={m}")
    })
}

fn ratio_of(count: u64, total: u64) -> Rational {
    Rational::new(BigInt::from(count), BigInt::from(total))
}

/// Folds `visit` over the swap sequence of every subnetwork `ω|_A`. Returns
/// the merged tally and the number of (network, subset) pairs visited.
fn fold_subnetworks<T: Send>(
    n: usize,
    m: usize,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &[u32]) + Sync,
    merge: impl Fn(&mut T, T),
) -> Result<(T, u64), ExactError> {
    check_sizes(n, m)?;
    let subsets: Vec<Vec<u32>> = (1..=n as u32).combinations(m).collect();
    let parts: Vec<(T, u64)> = (1..n as u32)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut buf = Vec::with_capacity(pair_count(m));
            let mut networks = 0u64;
            for net in NetworkEnumerator::with_prefix(n, &[first], false).expect("n checked") {
                networks += 1;
                for subset in &subsets {
                    buf.clear();
                    net.for_each_subnetwork_swap(subset, |loc| buf.push(loc));
                    visit(&mut acc, &buf);
                }
            }
            (acc, networks)
        })
        .collect();
    let mut acc = init();
    let mut networks = 0;
    for (part, count) in parts {
        merge(&mut acc, part);
        networks += count;
    }
    Ok((acc, networks * subsets.len() as u64))
}

fn add_vec(acc: &mut [u64], part: Vec<u64>) {
    for (a, b) in acc.iter_mut().zip(part) {
        *a += b;
    }
}

/// Exact expected number of swaps at each location `1..=m-1` of the random
/// `m`-out-of-`n` subnetwork, by exhaustive averaging.
pub fn expected_subnet_swaps_all(n: usize, m: usize) -> Result<Vec<Rational>, ExactError> {
    let (counts, pairs) = fold_subnetworks(
        n,
        m,
        || vec![0u64; m - 1],
        |acc, swaps| {
            for &s in swaps {
                acc[s as usize - 1] += 1;
            }
        },
        |acc, part| add_vec(acc, part),
    )?;
    Ok(counts.into_iter().map(|c| ratio_of(c, pairs)).collect())
}

pub fn expected_subnet_swaps_bruteforce(
    n: usize,
    m: usize,
    j: usize,
) -> Result<Rational, ExactError> {
    precondition((1..m).contains(&j), || {
        format!("need 1 <= j <= m-1, got m={m}, j={j}")
    })?;
    Ok(expected_subnet_swaps_all(n, m)?.swap_remove(j - 1))
}

/// Exact probability that the random 4-out-of-`n` subnetwork is one of
/// [`COROLLARY2_NETWORKS`].
pub fn corollary2_probability(n: usize) -> Result<Rational, ExactError> {
    precondition(n >= 4, || format!("need n >= 4, got {n}"))?;
    let (hits, pairs) = fold_subnetworks(
        n,
        4,
        || 0u64,
        |acc, swaps| {
            if COROLLARY2_NETWORKS.iter().any(|w| w == swaps) {
                *acc += 1;
            }
        },
        |acc, part| *acc += part,
    )?;
    Ok(ratio_of(hits, pairs))
}

/// The law of the number of swaps at one location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapCountLaw {
    probabilities: BTreeMap<u32, Rational>,
}

impl SwapCountLaw {
    pub fn probabilities(&self) -> &BTreeMap<u32, Rational> {
        &self.probabilities
    }

    pub fn probability(&self, count: u32) -> Rational {
        self.probabilities
            .get(&count)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn mean(&self) -> Rational {
        self.probabilities
            .iter()
            .map(|(&c, p)| p * Rational::from_integer(c.into()))
            .sum()
    }

    pub fn total(&self) -> Rational {
        self.probabilities.values().sum()
    }
}

/// Exact laws of `#{t : s_t(ω^n_m) = j}` for every `j = 1..=m-1`.
pub fn swap_count_laws(n: usize, m: usize) -> Result<Vec<SwapCountLaw>, ExactError> {
    let (hist, pairs) = fold_subnetworks(
        n,
        m,
        || vec![BTreeMap::<u32, u64>::new(); m - 1],
        |acc, swaps| {
            let mut counts = [0u32; MAX_ROUTINE_N];
            for &s in swaps {
                counts[s as usize - 1] += 1;
            }
            for (j, h) in acc.iter_mut().enumerate() {
                *h.entry(counts[j]).or_default() += 1;
            }
        },
        |acc, part| {
            for (a, b) in acc.iter_mut().zip(part) {
                for (c, k) in b {
                    *a.entry(c).or_default() += k;
                }
            }
        },
    )?;
    Ok(hist
        .into_iter()
        .map(|h| SwapCountLaw {
            probabilities: h
                .into_iter()
                .map(|(c, k)| (c, ratio_of(k, pairs)))
                .collect(),
        })
        .collect())
}

pub fn swap_count_law(n: usize, m: usize, j: usize) -> Result<SwapCountLaw, ExactError> {
    precondition((1..m).contains(&j), || {
        format!("need 1 <= j <= m-1, got m={m}, j={j}")
    })?;
    Ok(swap_count_laws(n, m)?.swap_remove(j - 1))
}

/// Exact laws of the first and second swap locations of `ω^n_m`, each as a
/// vector over locations `1..=m-1`.
pub fn subnet_first_vs_second_swap(
    n: usize,
    m: usize,
) -> Result<(Vec<Rational>, Vec<Rational>), ExactError> {
    precondition(m >= 3, || format!("a second swap needs m >= 3, got {m}"))?;
    let ((first, second), pairs) = fold_subnetworks(
        n,
        m,
        || (vec![0u64; m - 1], vec![0u64; m - 1]),
        |(a, b), swaps| {
            a[swaps[0] as usize - 1] += 1;
            b[swaps[1] as usize - 1] += 1;
        },
        |(a, b), (pa, pb)| {
            add_vec(a, pa);
            add_vec(b, pb);
        },
    )?;
    let to_pmf = |v: Vec<u64>| v.into_iter().map(|c| ratio_of(c, pairs)).collect();
    Ok((to_pmf(first), to_pmf(second)))
}

/// The full exact law of `ω^n_m` over `m`-particle networks.
pub fn subnet_law(n: usize, m: usize) -> Result<BTreeMap<SortingNetwork, Rational>, ExactError> {
    let (hist, pairs) = fold_subnetworks(
        n,
        m,
        BTreeMap::<Vec<u32>, u64>::new,
        |acc, swaps| {
            if let Some(c) = acc.get_mut(swaps) {
                *c += 1;
            } else {
                acc.insert(swaps.to_vec(), 1);
            }
        },
        |acc, part| {
            for (w, c) in part {
                *acc.entry(w).or_default() += c;
            }
        },
    )?;
    Ok(hist
        .into_iter()
        .map(|(w, c)| (SortingNetwork::new_unchecked(m, w), ratio_of(c, pairs)))
        .collect())
}

/// Exact law of the `t`-th swap location `s_t` of a uniform `n`-network,
/// for every `t = 1..=N`, by enumeration. Entry `[t-1][k-1]` is `P(s_t = k)`.
pub fn enumerated_swap_pmfs(n: usize) -> Result<Vec<Vec<Rational>>, ExactError> {
    check_sizes(n, n)?;
    let total = pair_count(n);
    let mut counts = vec![vec![0u64; n - 1]; total];
    let mut networks = 0u64;
    for net in NetworkEnumerator::new(n, false)? {
        networks += 1;
        for (t, &s) in net.swaps().iter().enumerate() {
            counts[t][s as usize - 1] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| ratio_of(c, networks)).collect())
        .collect())
}

pub fn enumerated_swap_pmf(n: usize, t: usize) -> Result<Vec<Rational>, ExactError> {
    precondition((1..=pair_count(n)).contains(&t), || {
        format!("need 1 <= t <= {}, got {t}", pair_count(n))
    })?;
    Ok(enumerated_swap_pmfs(n)?.swap_remove(t - 1))
}
