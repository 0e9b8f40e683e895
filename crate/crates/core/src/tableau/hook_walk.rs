//! Uniform staircase tableaux by the Greene–Nijenhuis–Wilf hook walk.
//!
//! Starting from a uniformly chosen cell of the current shape, the walk
//! repeatedly jumps to a uniform cell of its hook (arm or leg, excluding
//! itself) until it stands on a corner. The largest unplaced entry goes
//! there, the corner is removed and the walk restarts on the smaller shape.

use rand::Rng;

use super::StaircaseSyt;
use crate::network::pair_count;

/// Fenwick tree over row lengths, for picking a uniform cell.
struct RowIndex {
    tree: Vec<usize>,
}

impl RowIndex {
    fn new(lens: &[usize]) -> Self {
        let mut tree = vec![0; lens.len() + 1];
        for (i, &l) in lens.iter().enumerate() {
            let mut k = i + 1;
            while k < tree.len() {
                tree[k] += l;
                k += k & k.wrapping_neg();
            }
        }
        RowIndex { tree }
    }

    fn decrement(&mut self, row: usize) {
        let mut k = row + 1;
        while k < self.tree.len() {
            self.tree[k] -= 1;
            k += k & k.wrapping_neg();
        }
    }

    /// The row holding cell number `idx` in row-major order, and the cell's
    /// column within it.
    fn locate(&self, mut idx: usize) -> (usize, usize) {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= idx {
                pos = next;
                idx -= self.tree[next];
            }
            step >>= 1;
        }
        (pos, idx)
    }
}

/// A uniformly random standard Young tableau of shape `(n-1, ..., 1)`.
pub fn sample_syt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StaircaseSyt {
    assert!(n >= 2, "staircase tableaux need n >= 2");
    let total = pair_count(n);
    let mut row_len: Vec<usize> = (1..n).rev().collect();
    let mut col_len = row_len.clone();
    let mut index = RowIndex::new(&row_len);
    let mut rows: Vec<Vec<u32>> = row_len.iter().map(|&l| vec![0; l]).collect();

    for (remaining, entry) in (1..=total).rev().zip((1..=total as u32).rev()) {
        let (mut r, mut c) = index.locate(rng.random_range(0..remaining));
        loop {
            let arm = row_len[r] - c - 1;
            let leg = col_len[c] - r - 1;
            if arm + leg == 0 {
                break;
            }
            let jump = rng.random_range(0..arm + leg);
            if jump < arm {
                c += jump + 1;
            } else {
                r += jump - arm + 1;
            }
        }
        rows[r][c] = entry;
        row_len[r] -= 1;
        col_len[c] -= 1;
        index.decrement(r);
    }
    StaircaseSyt::from_parts_unchecked(n, rows)
}
