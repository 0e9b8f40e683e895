use super::ExactError;
use crate::network::{pair_count, SortingNetwork};

/// Largest `n` enumerated without an explicit override (292,864 networks).
pub const MAX_ROUTINE_N: usize = 6;

/// Depth-first enumeration of every `n`-particle sorting network.
///
/// A prefix is extended by any location `s` whose two particles are still
/// in increasing order, so every branch is a reduced word and every leaf at
/// depth `N` is a sorting network. Networks come out in lexicographic order.
#[derive(Debug, Clone)]
pub struct NetworkEnumerator {
    n: usize,
    total: usize,
    root: usize,
    config: Vec<u32>,
    word: Vec<u32>,
    // next[d]: smallest location not yet tried at depth d
    next: Vec<u32>,
    done: bool,
}

/// Enumerates all networks for `2 <= n <= 6`.
pub fn enumerate_networks(n: usize) -> Result<NetworkEnumerator, ExactError> {
    NetworkEnumerator::new(n, false)
}

impl NetworkEnumerator {
    /// `allow_expensive` admits `n = 7` (about 1.1e9 networks).
    pub fn new(n: usize, allow_expensive: bool) -> Result<Self, ExactError> {
        Self::with_prefix(n, &[], allow_expensive)
    }

    /// Enumerates the networks that begin with `prefix`. Used to split the
    /// enumeration by first swap location.
    pub fn with_prefix(
        n: usize,
        prefix: &[u32],
        allow_expensive: bool,
    ) -> Result<Self, ExactError> {
        if n == MAX_ROUTINE_N + 1 && !allow_expensive {
            return Err(ExactError::ExpensiveEnumeration);
        }
        if !(2..=MAX_ROUTINE_N + 1).contains(&n) {
            return Err(ExactError::EnumerationRange {
                n,
                max: MAX_ROUTINE_N + 1,
            });
        }
        let total = pair_count(n);
        let mut config: Vec<u32> = (1..=n as u32).collect();
        let mut done = prefix.len() > total;
        for &s in prefix {
            let p = s as usize;
            if p == 0 || p >= n || config[p - 1] > config[p] {
                done = true;
                break;
            }
            config.swap(p - 1, p);
        }
        let mut next = vec![1; total + 1];
        if !done && prefix.len() == total {
            // The prefix is itself a full network: a single leaf.
            next[total] = n as u32;
        }
        Ok(NetworkEnumerator {
            n,
            total,
            root: prefix.len(),
            config,
            word: prefix.to_vec(),
            next,
            done,
        })
    }

    fn pop(&mut self) {
        let s = self.word.pop().expect("pop below root") as usize;
        self.config.swap(s - 1, s);
    }
}

impl Iterator for NetworkEnumerator {
    type Item = SortingNetwork;

    fn next(&mut self) -> Option<SortingNetwork> {
        if self.done {
            return None;
        }
        if self.root == self.total {
            self.done = true;
            return Some(SortingNetwork::new_unchecked(self.n, self.word.clone()));
        }
        loop {
            let depth = self.word.len();
            let start = self.next[depth] as usize;
            let found = (start..self.n).find(|&s| self.config[s - 1] < self.config[s]);
            match found {
                Some(s) => {
                    self.next[depth] = s as u32 + 1;
                    self.word.push(s as u32);
                    self.config.swap(s - 1, s);
                    if self.word.len() == self.total {
                        let out = SortingNetwork::new_unchecked(self.n, self.word.clone());
                        self.pop();
                        return Some(out);
                    }
                    self.next[depth + 1] = 1;
                }
                None => {
                    if depth == self.root {
                        self.done = true;
                        return None;
                    }
                    self.pop();
                }
            }
        }
    }
}
