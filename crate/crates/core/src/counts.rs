//! Upper-right one counts and lower-left zero counts for binary masks.
//!
//! For a cell `(a, b)` with `a <= b`:
//!
//! * `UR(a, b) = {(i, j) : i < a, j > b}`, and `ones_ur(a, b)` counts its ones;
//! * `LL(a, b) = {(i, j) : a <= i <= j <= b}`, and `zeros_ll(a, b)` counts its zeros.
//!
//! Both are zero for `a > b` or indices outside `1..=n`.

use crate::error::{Error, Result};
use crate::mask::BinaryMask;

/// Tables of `ones_ur` and `zeros_ll` over the upper triangle, packed row by
/// row with both counts of a cell side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerCounts {
    n: usize,
    /// `[ones_ur, zeros_ll]` for `(a, b)`, `a <= b`, at `row_start(a) + b - a`.
    cells: Vec<[u32; 2]>,
}

/// Offset of 1-based row `a` in the packed triangle.
#[inline]
fn row_start(n: usize, a: usize) -> usize {
    (a - 1) * (n + 1) - (a - 1) * a / 2
}

impl CornerCounts {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn cell(&self, a: usize, b: usize) -> Option<[u32; 2]> {
        if a == 0 || a > b || b > self.n {
            None
        } else {
            Some(self.cells[row_start(self.n, a) + b - a])
        }
    }

    /// Ones strictly up-right of cell `(a, b)`; 1-based.
    #[inline]
    pub fn ones_ur(&self, a: usize, b: usize) -> u32 {
        self.cell(a, b).map_or(0, |c| c[0])
    }

    /// Zeros in the triangle `a <= i <= j <= b`; 1-based.
    #[inline]
    pub fn zeros_ll(&self, a: usize, b: usize) -> u32 {
        self.cell(a, b).map_or(0, |c| c[1])
    }

    /// Cell `(a, b)` is inverted at threshold `t` when both counts reach `t`.
    #[inline]
    pub fn is_inverted(&self, a: usize, b: usize, t: f64) -> bool {
        self.cell(a, b).is_some_and(|[ur, ll]| f64::from(ur) >= t && f64::from(ll) >= t)
    }

    /// Largest `ones_ur * zeros_ll` over upper-triangle cells.
    pub fn max_product(&self) -> u64 {
        self.cells.iter().map(|&[ur, ll]| u64::from(ur) * u64::from(ll)).max().unwrap_or(0)
    }
}

/// Builds both tables in `O(n^2)`, one row at a time:
///
/// * `ones_ur(a, b)` is `ones_ur(a - 1, b)` plus the ones of row `a - 1` right of `b`;
/// * `zeros_ll(a, b)` is `zeros_ll(a + 1, b)` plus the zeros of row `a` in columns `a..=b`.
pub fn corner_counts(mask: &BinaryMask) -> CornerCounts {
    let n = mask.n();
    let mut cells = vec![[0u32; 2]; n * (n + 1) / 2];

    // Row 1 and column n have empty regions and stay zero.
    for a in 2..=n {
        let (head, tail) = cells.split_at_mut(row_start(n, a));
        // Row a - 1 starts at column a - 1, one entry before row a's columns.
        let prev = &head[row_start(n, a - 1) + 1..];
        let cur = &mut tail[..=n - a];
        let mut run = 0u32;
        for b in (a..n).rev() {
            run += u32::from(mask.bit(a - 2, b));
            cur[b - a][0] = prev[b - a][0] + run;
        }
    }

    for a in (1..=n).rev() {
        let (head, tail) = cells.split_at_mut(row_start(n, a) + n - a + 1);
        let cur = &mut head[row_start(n, a)..];
        let mut run = 0u32;
        for b in a..=n {
            run += u32::from(!mask.bit(a - 1, b - 1));
            // Row a + 1 begins at column a + 1, right where `tail` starts.
            let below = if b > a { tail[b - a - 1][1] } else { 0 };
            cur[b - a][1] = below + run;
        }
    }

    CornerCounts { n, cells }
}

/// Validates a 1-based upper-triangle cell.
pub(crate) fn check_cell(n: usize, (i, j): (usize, usize)) -> Result<()> {
    if i == 0 || i > j || j > n {
        Err(Error::InvalidCell { i, j, n })
    } else {
        Ok(())
    }
}
