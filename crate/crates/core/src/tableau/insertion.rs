//! Edelman–Greene insertion for reduced words of the reverse permutation.
//!
//! Inserting a letter `x` into an increasing row: if `x` exceeds every entry
//! it is appended. Otherwise let `y` be the smallest entry above `x`; if
//! `y = x + 1` and `x` is already in the row, the row is unchanged and
//! `x + 1` moves on to the next row, else `x` replaces `y` and `y` moves on.
//! For any reduced word of the reverse permutation the insertion tableau is
//! the fixed staircase with row `r` equal to `r, r+1, ..., n-1`, so the
//! recording tableau alone determines the word.
//!
//! The word inserted is the network read backwards. Then the largest entry
//! of the recording tableau records the network's first swap, and its
//! column is exactly that swap's location.

use super::{StaircaseSyt, TableauError};
use crate::network::{pair_count, SortingNetwork};

/// The Edelman–Greene recording tableau of the reversed swap word.
pub fn network_to_syt(network: &SortingNetwork) -> StaircaseSyt {
    let n = network.n();
    let mut p: Vec<Vec<u32>> = Vec::with_capacity(n - 1);
    let mut q: Vec<Vec<u32>> = Vec::with_capacity(n - 1);
    for (t, &letter) in network.swaps().iter().rev().enumerate() {
        let stamp = t as u32 + 1;
        let mut x = letter;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![stamp]);
                break;
            }
            let row = &mut p[r];
            let idx = row.partition_point(|&z| z <= x);
            if idx == row.len() {
                row.push(x);
                q[r].push(stamp);
                break;
            }
            let y = row[idx];
            let x_in_row = idx > 0 && row[idx - 1] == x;
            if !(y == x + 1 && x_in_row) {
                debug_assert!(!x_in_row, "reduced words never bump past a duplicate");
                row[idx] = x;
            }
            x = y;
            r += 1;
        }
    }
    debug_assert!(p
        .iter()
        .enumerate()
        .all(|(r, row)| row.iter().copied().eq(r as u32 + 1..n as u32)));
    StaircaseSyt::from_parts_unchecked(n, q)
}

/// Inverse of [`network_to_syt`]: reverse Edelman–Greene insertion from
/// the fixed staircase insertion tableau.
pub fn syt_to_network(tableau: &StaircaseSyt) -> Result<SortingNetwork, TableauError> {
    let n = tableau.n();
    let total = pair_count(n);
    let mut p: Vec<Vec<u32>> = (1..n as u32).map(|r| (r..n as u32).collect()).collect();
    // word[t-1] is the t-th letter of the reversed network
    let mut word = vec![0u32; total];
    for stamp in (1..=total as u32).rev() {
        let (r, c) = tableau.cell_of_zero_based(stamp);
        if p[r].len() != c + 1 {
            return Err(TableauError::Malformed(format!(
                "entry {stamp} is not at the end of its row"
            )));
        }
        let mut y = p[r].pop().expect("non-empty row");
        for row in p[..r].iter_mut().rev() {
            let k = row.partition_point(|&z| z < y);
            if k == 0 {
                return Err(TableauError::Malformed(format!(
                    "no entry below {y} to bump out of row"
                )));
            }
            let x = row[k - 1];
            let y_in_row = k < row.len() && row[k] == y;
            if !(x + 1 == y && y_in_row) {
                if y_in_row {
                    return Err(TableauError::Malformed(
                        "reverse insertion would duplicate an entry".into(),
                    ));
                }
                row[k - 1] = y;
            }
            y = x;
        }
        word[stamp as usize - 1] = y;
    }
    word.reverse();
    SortingNetwork::new(n, word)
        .map_err(|e| TableauError::Malformed(format!("reverse insertion gave {e}")))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::exact::enumerate_networks;
    use crate::tableau::tests::all_syt;

    #[test]
    fn two_particles() {
        let net = SortingNetwork::new(2, vec![1]).unwrap();
        let t = network_to_syt(&net);
        assert_eq!(t.rows(), &[vec![1]]);
        assert_eq!(syt_to_network(&t).unwrap(), net);
    }

    #[test]
    fn three_particles_by_hand() {
        // Reversed words 121 and 212; see the module docs for the rules.
        let a = SortingNetwork::new(3, vec![1, 2, 1]).unwrap();
        assert_eq!(network_to_syt(&a).rows(), &[vec![1, 2], vec![3]]);
        let b = SortingNetwork::new(3, vec![2, 1, 2]).unwrap();
        assert_eq!(network_to_syt(&b).rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn bijection_up_to_five() {
        for n in 2..=5 {
            let nets: Vec<_> = enumerate_networks(n).unwrap().collect();
            let images: HashSet<_> = nets.iter().map(network_to_syt).collect();
            assert_eq!(images.len(), nets.len(), "injective for n={n}");
            let all: HashSet<_> = all_syt(n).into_iter().collect();
            assert_eq!(images, all, "onto for n={n}");
            for net in &nets {
                let t = network_to_syt(net);
                assert_eq!(&syt_to_network(&t).unwrap(), net);
                assert_eq!(t.largest_entry_corner() as u32, net.swap_at(1));
            }
            for t in &all {
                assert_eq!(&network_to_syt(&syt_to_network(t).unwrap()), t);
            }
        }
    }
}
