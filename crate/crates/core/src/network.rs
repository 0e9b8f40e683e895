//! Permutations and sorting networks.
//!
//! A sorting network on `n` particles is a reduced word for the reverse
//! permutation: a sequence of `N = n(n-1)/2` adjacent swaps that takes
//! `1 2 ... n` to `n ... 2 1`. Swap locations are 1-based, so a swap at
//! location `s` exchanges the particles at positions `s` and `s + 1`.
//!
//! Configurations are streamed rather than stored; a network is just its
//! compact swap sequence.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// `n choose 2` as a `usize`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An arrangement of the particles `1..=n`.
///
/// `entries[p - 1]` is the particle sitting at position `p`, so for a
/// configuration `σ_t` this is the sequence `(σ(1), ..., σ(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn reverse(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    /// Builds a permutation from its one-line notation, checking that every
    /// value in `1..=n` occurs exactly once.
    pub fn from_entries(entries: Vec<u32>) -> Result<Self, NetworkError> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            let idx = e as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(NetworkError::NotAPermutation(entries));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The particle at (1-based) position `p`.
    pub fn at(&self, p: usize) -> u32 {
        self.entries[p - 1]
    }

    /// Right-multiplies by the adjacent transposition at `location`, i.e.
    /// exchanges the particles at positions `location` and `location + 1`.
    pub fn apply_swap(&mut self, location: usize) {
        self.entries.swap(location - 1, location);
    }

    /// The inverse permutation; `inverse().at(i)` is the position of particle `i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.entries.len()];
        for (p, &e) in self.entries.iter().enumerate() {
            inv[e as usize - 1] = p as u32 + 1;
        }
        Permutation { entries: inv }
    }

    /// Position of `particle` in this arrangement (`σ^{-1}(i)`).
    pub fn location_of(&self, particle: u32) -> usize {
        self.entries
            .iter()
            .position(|&e| e == particle)
            .map(|p| p + 1)
            .expect("particle out of range")
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            entries: other
                .entries
                .iter()
                .map(|&i| self.entries[i as usize - 1])
                .collect(),
        }
    }

    pub fn inversions(&self) -> usize {
        let e = &self.entries;
        let mut count = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Why a candidate swap sequence is not a sorting network.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a sorting network needs at least 2 particles, got {0}")]
    TooFewParticles(usize),
    #[error("swap {index} has location {location}, outside 1..={max}")]
    OutOfRange {
        index: usize,
        location: u32,
        max: usize,
    },
    #[error("swap {index} at location {location} undoes an earlier swap (word is not reduced)")]
    NonReduced { index: usize, location: u32 },
    #[error("expected {expected} swaps, got {actual}")]
    WrongLength { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("invalid sorting network: {0}")]
    Invalid(#[from] ValidationError),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("particle subset needs at least 2 elements, got {0}")]
    SubsetTooSmall(usize),
    #[error("particle {particle} is not in 1..={n}")]
    SubsetOutOfRange { particle: u32, n: usize },
    #[error("particle {0} listed twice in subset")]
    SubsetDuplicate(u32),
    #[error("cannot parse network line {line:?}: {reason}")]
    Parse { line: String, reason: String },
}

/// Checks whether `swaps` is a sorting network on `n` particles.
///
/// Locations are checked first, then the reduced-word property step by step
/// (each swap must put a smaller particle to the right of a larger one), and
/// finally the length. A reduced word of length `n(n-1)/2` always ends at
/// the reverse permutation, so no separate endpoint check is needed.
pub fn validate(n: usize, swaps: &[u32]) -> Result<(), ValidationError> {
    if n < 2 {
        return Err(ValidationError::TooFewParticles(n));
    }
    if let Some((index, &location)) = swaps
        .iter()
        .enumerate()
        .find(|(_, &s)| s == 0 || s as usize >= n)
    {
        return Err(ValidationError::OutOfRange {
            index: index + 1,
            location,
            max: n - 1,
        });
    }
    let mut config: Vec<u32> = (1..=n as u32).collect();
    for (index, &s) in swaps.iter().enumerate() {
        let p = s as usize - 1;
        if config[p] > config[p + 1] {
            return Err(ValidationError::NonReduced {
                index: index + 1,
                location: s,
            });
        }
        config.swap(p, p + 1);
    }
    let expected = pair_count(n);
    if swaps.len() != expected {
        return Err(ValidationError::WrongLength {
            expected,
            actual: swaps.len(),
        });
    }
    Ok(())
}

pub fn is_valid(n: usize, swaps: &[u32]) -> bool {
    validate(n, swaps).is_ok()
}

/// A validated sorting network.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortingNetwork {
    n: usize,
    swaps: Vec<u32>,
}

impl SortingNetwork {
    pub fn new(n: usize, swaps: Vec<u32>) -> Result<Self, ValidationError> {
        validate(n, &swaps)?;
        Ok(SortingNetwork { n, swaps })
    }

    /// Skips validation. Callers must already know the word is a reduced
    /// word of the reverse permutation.
    pub(crate) fn new_unchecked(n: usize, swaps: Vec<u32>) -> Self {
        debug_assert!(is_valid(n, &swaps), "{n}: {swaps:?}");
        SortingNetwork { n, swaps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn swaps(&self) -> &[u32] {
        &self.swaps
    }

    pub fn into_swaps(self) -> Vec<u32> {
        self.swaps
    }

    /// Number of swaps, `n(n-1)/2`.
    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// The `t`-th swap location, `1 <= t <= N`.
    pub fn swap_at(&self, t: usize) -> u32 {
        self.swaps[t - 1]
    }

    /// Number of swaps at `location`.
    pub fn count_at(&self, location: u32) -> usize {
        self.swaps.iter().filter(|&&s| s == location).count()
    }

    /// Swap counts per location, indexed `0..n-1` for locations `1..n`.
    pub fn location_profile(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n - 1];
        for &s in &self.swaps {
            counts[s as usize - 1] += 1;
        }
        counts
    }

    /// Streams `σ_0 = id, σ_1, ..., σ_N`.
    pub fn configurations(&self) -> Configurations<'_> {
        Configurations {
            current: Some(Permutation::identity(self.n)),
            swaps: self.swaps.iter(),
        }
    }

    /// The stationarity map `(s_1, ..., s_N) -> (s_2, ..., s_N, n - s_1)`.
    pub fn shift(&self) -> SortingNetwork {
        let mut swaps = Vec::with_capacity(self.swaps.len());
        swaps.extend_from_slice(&self.swaps[1..]);
        swaps.push(self.n as u32 - self.swaps[0]);
        SortingNetwork::new_unchecked(self.n, swaps)
    }

    /// Every location `s` replaced by `n - s` (the network seen upside down).
    pub fn reflected(&self) -> SortingNetwork {
        let n = self.n as u32;
        SortingNetwork::new_unchecked(self.n, self.swaps.iter().map(|&s| n - s).collect())
    }

    /// The word read backwards, which is again a sorting network since the
    /// reverse permutation is an involution.
    pub fn reversed(&self) -> SortingNetwork {
        SortingNetwork::new_unchecked(self.n, self.swaps.iter().rev().copied().collect())
    }

    /// The subnetwork induced by the particles in `subset`.
    ///
    /// Each particle of the subset carries its rank among subset particles
    /// ordered by position. A swap contributes to the subnetwork iff both
    /// exchanged particles are in the subset, and its location is then the
    /// rank of the left particle; the two ranks are exchanged. This runs in
    /// `O(n + N)`.
    pub fn subnetwork(&self, subset: &[u32]) -> Result<SortingNetwork, NetworkError> {
        let members = normalize_subset(self.n, subset)?;
        Ok(self.subnetwork_sorted(&members))
    }

    /// As [`SortingNetwork::subnetwork`], for a subset already known to be
    /// sorted, distinct, in range and of size at least 2.
    pub(crate) fn subnetwork_sorted(&self, members: &[u32]) -> SortingNetwork {
        let m = members.len();
        let mut out = Vec::with_capacity(pair_count(m));
        self.for_each_subnetwork_swap(members, |loc| out.push(loc));
        SortingNetwork::new_unchecked(m, out)
    }

    /// Calls `f` with each swap location of the subnetwork on `members`, in
    /// time order, without allocating the subnetwork.
    pub(crate) fn for_each_subnetwork_swap(&self, members: &[u32], mut f: impl FnMut(u32)) {
        // rank[particle] = 1-based rank among members by current position, 0 if absent.
        let mut rank = vec![0u32; self.n + 1];
        for (i, &a) in members.iter().enumerate() {
            rank[a as usize] = i as u32 + 1;
        }
        let mut config: Vec<u32> = (1..=self.n as u32).collect();
        for &s in &self.swaps {
            let p = s as usize - 1;
            let (a, b) = (config[p] as usize, config[p + 1] as usize);
            if rank[a] != 0 && rank[b] != 0 {
                f(rank[a]);
                rank.swap(a, b);
            }
            config.swap(p, p + 1);
        }
    }

    /// Restricts by the definition: take every configuration, keep only the
    /// subset's particles, relabel them `1..=m` in increasing order, drop
    /// consecutive duplicates, and read off the adjacent swap between
    /// successive configurations.
    ///
    /// Quadratic in `n`; kept as the reference construction for
    /// [`SortingNetwork::subnetwork`].
    pub fn subnetwork_by_restriction(
        &self,
        subset: &[u32],
    ) -> Result<SortingNetwork, NetworkError> {
        let members = normalize_subset(self.n, subset)?;
        let relabel = |p: &Permutation| -> Vec<u32> {
            p.entries()
                .iter()
                .filter_map(|e| members.binary_search(e).ok().map(|i| i as u32 + 1))
                .collect()
        };
        let mut restricted: Vec<Vec<u32>> = Vec::new();
        for config in self.configurations() {
            let r = relabel(&config);
            if restricted.last() != Some(&r) {
                restricted.push(r);
            }
        }
        let mut swaps = Vec::with_capacity(restricted.len().saturating_sub(1));
        for pair in restricted.windows(2) {
            let diff: Vec<usize> = (0..pair[0].len())
                .filter(|&i| pair[0][i] != pair[1][i])
                .collect();
            assert!(
                diff.len() == 2 && diff[1] == diff[0] + 1,
                "restricted configurations differ by more than one adjacent swap"
            );
            swaps.push(diff[0] as u32 + 1);
        }
        Ok(SortingNetwork::new(members.len(), swaps)?)
    }
}

/// Sorts and checks a particle subset for a network on `n` particles.
pub(crate) fn normalize_subset(n: usize, subset: &[u32]) -> Result<Vec<u32>, NetworkError> {
    let mut members = subset.to_vec();
    members.sort_unstable();
    for w in members.windows(2) {
        if w[0] == w[1] {
            return Err(NetworkError::SubsetDuplicate(w[0]));
        }
    }
    if let Some(&bad) = members.iter().find(|&&a| a == 0 || a as usize > n) {
        return Err(NetworkError::SubsetOutOfRange { particle: bad, n });
    }
    if members.len() < 2 {
        return Err(NetworkError::SubsetTooSmall(members.len()));
    }
    Ok(members)
}

pub struct Configurations<'a> {
    current: Option<Permutation>,
    swaps: std::slice::Iter<'a, u32>,
}

impl Iterator for Configurations<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.current.as_mut()?;
        let out = current.clone();
        match self.swaps.next() {
            Some(&s) => current.apply_swap(s as usize),
            None => self.current = None,
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = if self.current.is_some() {
            self.swaps.len() + 1
        } else {
            0
        };
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Configurations<'_> {}

/// Line format: `n: s_1 s_2 ... s_N`.
impl fmt::Display for SortingNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for s in &self.swaps {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// Serializes as the line format `"n: s1 s2 ..."`.
impl serde::Serialize for SortingNetwork {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for SortingNetwork {
    type Err = NetworkError;

    fn from_str(line: &str) -> Result<Self, NetworkError> {
        let parse_err = |reason: &str| NetworkError::Parse {
            line: line.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| parse_err("missing ':' after particle count"))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err("particle count is not an integer"))?;
        let swaps = tail
            .split_whitespace()
            .map(|tok| tok.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err("swap location is not a non-negative integer"))?;
        Ok(SortingNetwork::new(n, swaps)?)
    }
}

/// Parses every non-empty, non-`#` line of `text` as a network.
pub fn parse_networks(text: &str) -> Result<Vec<SortingNetwork>, NetworkError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}
