//! Standard Young tableaux of staircase shape `(n-1, n-2, ..., 1)`.
//!
//! These are in bijection with `n`-particle sorting networks through
//! Edelman–Greene insertion ([`network_to_syt`] / [`syt_to_network`]), and a
//! uniform tableau can be drawn with the hook walk ([`sample_syt`]). The
//! composition [`sample_uniform_network`] is the scalable uniform sampler.
//!
//! Cells are addressed by 1-based `(row, column)`.

mod hook_walk;
mod insertion;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::network::{pair_count, SortingNetwork};

pub use hook_walk::sample_syt;
pub use insertion::{network_to_syt, syt_to_network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("cell ({row}, {col}) is outside the staircase of size {n}")]
    CellOutsideShape { n: usize, row: usize, col: usize },
    #[error("staircase tableaux need n >= 2, got {0}")]
    TooSmall(usize),
    #[error("malformed tableau: {0}")]
    Malformed(String),
}

/// Hook length of a cell of the staircase `(n-1, ..., 1)`: arm + leg + 1.
pub fn hook_length(n: usize, row: usize, col: usize) -> Result<u64, TableauError> {
    if row == 0 || col == 0 || row + col > n {
        return Err(TableauError::CellOutsideShape { n, row, col });
    }
    let arm = (n - row) - col;
    let leg = (n - col) - row;
    Ok((arm + leg + 1) as u64)
}

/// Product of all hook lengths of the staircase of size `n`.
pub fn staircase_hook_product(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for row in 1..n {
        for col in 1..=n - row {
            acc *= hook_length(n, row, col).expect("cell in shape");
        }
    }
    acc
}

/// A standard Young tableau of staircase shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircaseSyt {
    n: usize,
    rows: Vec<Vec<u32>>,
    // cells[e - 1] = 0-based (row, col) of entry e
    cells: Vec<(u32, u32)>,
}

impl StaircaseSyt {
    /// Checks shape, that the entries are `1..=N`, and row/column strictness.
    pub fn new(n: usize, rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        if n < 2 {
            return Err(TableauError::TooSmall(n));
        }
        let bad = |msg: String| Err(TableauError::Malformed(msg));
        if rows.len() != n - 1 {
            return bad(format!("expected {} rows, got {}", n - 1, rows.len()));
        }
        let total = pair_count(n);
        let mut cells = vec![(u32::MAX, u32::MAX); total];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n - 1 - r {
                return bad(format!(
                    "row {} has {} cells, expected {}",
                    r + 1,
                    row.len(),
                    n - 1 - r
                ));
            }
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e as usize > total {
                    return bad(format!("entry {e} outside 1..={total}"));
                }
                if cells[e as usize - 1].0 != u32::MAX {
                    return bad(format!("entry {e} appears twice"));
                }
                cells[e as usize - 1] = (r as u32, c as u32);
                if c > 0 && row[c - 1] >= e {
                    return bad(format!("row {} is not increasing", r + 1));
                }
                if r > 0 && rows[r - 1][c] >= e {
                    return bad(format!("column {} is not increasing", c + 1));
                }
            }
        }
        Ok(StaircaseSyt { n, rows, cells })
    }

    pub(crate) fn from_parts_unchecked(n: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut cells = vec![(0, 0); pair_count(n)];
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                cells[e as usize - 1] = (r as u32, c as u32);
            }
        }
        let t = StaircaseSyt { n, rows, cells };
        debug_assert!(StaircaseSyt::new(t.n, t.rows.clone()).is_ok());
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of cells, `N = n(n-1)/2`.
    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// 1-based `(row, col)` of `entry`.
    pub fn cell_of(&self, entry: u32) -> (usize, usize) {
        let (r, c) = self.cells[entry as usize - 1];
        (r as usize + 1, c as usize + 1)
    }

    pub(crate) fn cell_of_zero_based(&self, entry: u32) -> (usize, usize) {
        let (r, c) = self.cells[entry as usize - 1];
        (r as usize, c as usize)
    }

    /// Where the largest entry sits along the staircase boundary, counted as
    /// its column. The largest entry always occupies an outer corner
    /// `(n - k, k)`, and `k` equals the first swap location of
    /// [`syt_to_network`] applied to this tableau.
    pub fn largest_entry_corner(&self) -> usize {
        self.cell_of(self.size() as u32).1
    }
}

/// One row per line, entries separated by spaces.
impl fmt::Display for StaircaseSyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for StaircaseSyt {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, TableauError> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TableauError::Malformed(format!("bad entry: {e}")))?;
        StaircaseSyt::new(rows.len() + 1, rows)
    }
}

/// A uniformly random `n`-particle sorting network: a hook-walk tableau
/// pushed through the Edelman–Greene bijection.
pub fn sample_uniform_network<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SortingNetwork {
    syt_to_network(&sample_syt(n, rng)).expect("bijection image is a valid network")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Every staircase SYT of size `n`, built by filling the largest entry
    /// into each removable corner in turn. Independent of both insertion
    /// and the hook walk.
    pub(crate) fn all_syt(n: usize) -> Vec<StaircaseSyt> {
        fn rec(
            lens: &mut Vec<usize>,
            next: u32,
            rows: &mut Vec<Vec<u32>>,
            out: &mut Vec<Vec<Vec<u32>>>,
        ) {
            if next == 0 {
                out.push(rows.clone());
                return;
            }
            for r in 0..lens.len() {
                let c = lens[r];
                if c == 0 {
                    continue;
                }
                // (r, c-1) is a corner iff the row below is shorter.
                let below = lens.get(r + 1).copied().unwrap_or(0);
                if below < c {
                    rows[r][c - 1] = next;
                    lens[r] -= 1;
                    rec(lens, next - 1, rows, out);
                    lens[r] += 1;
                }
            }
        }
        let mut lens: Vec<usize> = (1..n).rev().collect();
        let mut rows: Vec<Vec<u32>> = lens.iter().map(|&l| vec![0; l]).collect();
        let mut out = Vec::new();
        rec(&mut lens, pair_count(n) as u32, &mut rows, &mut out);
        out.into_iter()
            .map(|rows| StaircaseSyt::new(n, rows).unwrap())
            .collect()
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_length(3, 1, 1).unwrap(), 3);
        assert_eq!(hook_length(2, 1, 1).unwrap(), 1);
        assert_eq!(staircase_hook_product(4), BigUint::from(45u32));
        assert_eq!(staircase_hook_product(3), BigUint::from(3u32));
        assert!(hook_length(3, 2, 2).is_err());
        assert!(hook_length(3, 0, 1).is_err());
    }

    #[test]
    fn enumerated_syt_counts_match_hook_formula() {
        for n in 2..=5 {
            let all = all_syt(n);
            assert_eq!(
                BigUint::from(all.len()),
                crate::exact::count_networks(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn validation() {
        assert!(StaircaseSyt::new(3, vec![vec![1, 2], vec![3]]).is_ok());
        assert!(StaircaseSyt::new(3, vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StaircaseSyt::new(3, vec![vec![2, 1], vec![3]]).is_err());
        assert!(StaircaseSyt::new(3, vec![vec![2, 3], vec![1]]).is_err());
        assert!(StaircaseSyt::new(3, vec![vec![1, 2, 3]]).is_err());
        assert!(StaircaseSyt::new(3, vec![vec![1, 1], vec![3]]).is_err());
        assert!(StaircaseSyt::new(3, vec![vec![1, 2], vec![4]]).is_err());
        assert_eq!(StaircaseSyt::new(1, vec![]), Err(TableauError::TooSmall(1)));
    }

    #[test]
    fn text_format() {
        let t = StaircaseSyt::new(4, vec![vec![1, 2, 4], vec![3, 5], vec![6]]).unwrap();
        let text = t.to_string();
        assert_eq!(text, "1 2 4\n3 5\n6\n");
        assert_eq!(text.parse::<StaircaseSyt>().unwrap(), t);
        assert_eq!(t.cell_of(5), (2, 2));
        assert_eq!(t.largest_entry_corner(), 1);
        assert!("1 2\nx".parse::<StaircaseSyt>().is_err());
    }
}
