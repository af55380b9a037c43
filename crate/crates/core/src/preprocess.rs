//! Removal of inverted cells by toggling.
//!
//! A cell `(i, j)` on or above the diagonal is inverted at threshold `t` when
//! `ones_ur(i, j) >= t` and `zeros_ll(i, j) >= t`. Toggling it clears
//! `UR(i, j)` and fills `LL(i, j)` (plus mirrors); this never increases
//! `gamma1` and never creates a new inverted cell, so a single row-major pass
//! leaves a matrix where every cell has `ones_ur < t` or `zeros_ll < t`.

use serde::Serialize;

use crate::approx::Threshold;
use crate::counts::{check_cell, corner_counts, CornerCounts};
use crate::error::Result;
use crate::gamma::Gamma1;
use crate::mask::BinaryMask;

/// One toggle, with the counts of the matrix it was applied to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToggleStep {
    /// 1-based upper-triangle cell.
    pub cell: (usize, usize),
    pub ones_ur: u32,
    pub zeros_ll: u32,
    /// `n^3 * gamma1` before and after the toggle.
    pub violations_before: u64,
    pub violations_after: u64,
    /// Cells (full square, mirrors included) whose value changed.
    pub cells_changed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToggleTrace {
    pub toggled_cells: Vec<(usize, usize)>,
    pub steps: Vec<ToggleStep>,
    pub gamma_before: Gamma1,
    pub gamma_after: Gamma1,
    /// `||A - A_hat||_1`.
    pub l1_moved: f64,
}

impl ToggleTrace {
    pub fn len(&self) -> usize {
        self.toggled_cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.toggled_cells.is_empty()
    }
}

/// Clears `UR(i, j)` and fills `LL(i, j)`, mirrored below the diagonal.
pub fn toggle(a: &BinaryMask, cell: (usize, usize)) -> Result<BinaryMask> {
    check_cell(a.n(), cell)?;
    let mut out = a.clone();
    toggle_in_place(&mut out, cell);
    Ok(out)
}

fn toggle_in_place(a: &mut BinaryMask, (i, j): (usize, usize)) {
    let n = a.n();
    // 0-based: rows r < i-1, columns s > j-1
    for r in 0..(i - 1) {
        for s in j..n {
            a.put(r, s, false);
            a.put(s, r, false);
        }
    }
    for r in (i - 1)..j {
        for s in r..j {
            a.put(r, s, true);
            a.put(s, r, true);
        }
    }
}

/// Single pass over `(i, j)`, `i = 1..=n`, `j = i..=n`, toggling every cell
/// found inverted. Counts are rebuilt after each toggle.
pub fn preprocess(a: &BinaryMask, t: Threshold) -> (BinaryMask, ToggleTrace) {
    let n = a.n();
    let cube = (n as f64).powi(3);
    let mut cur = a.clone();
    let mut counts: CornerCounts = corner_counts(&cur);
    let start = cur.violation_count();
    let mut violations = start;
    let mut steps = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if !counts.is_inverted(i, j, t.value()) {
                continue;
            }
            let before = cur.clone();
            toggle_in_place(&mut cur, (i, j));
            let after = cur.violation_count();
            steps.push(ToggleStep {
                cell: (i, j),
                ones_ur: counts.ones_ur(i, j),
                zeros_ll: counts.zeros_ll(i, j),
                violations_before: violations,
                violations_after: after,
                cells_changed: before.hamming(&cur).expect("same size"),
            });
            violations = after;
            counts = corner_counts(&cur);
        }
    }
    let moved = a.hamming(&cur).expect("same size");
    let trace = ToggleTrace {
        toggled_cells: steps.iter().map(|s| s.cell).collect(),
        steps,
        gamma_before: Gamma1::new(start as f64 / cube),
        gamma_after: Gamma1::new(violations as f64 / cube),
        l1_moved: moved as f64 / (n * n) as f64,
    };
    (cur, trace)
}

/// True when no upper-triangle cell is inverted at `t`.
pub fn satisfies_corner_condition(a: &BinaryMask, t: Threshold) -> bool {
    let c = corner_counts(a);
    let n = a.n();
    (1..=n).all(|i| (i..=n).all(|j| !c.is_inverted(i, j, t.value())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn a3() -> BinaryMask {
        BinaryMask::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]).unwrap()
    }

    #[test]
    fn toggle_whole_triangle() {
        assert_eq!(toggle(&a3(), (1, 3)).unwrap(), BinaryMask::ones(3));
    }

    #[test]
    fn toggle_diagonal_cell() {
        let n = 5;
        let out = toggle(&BinaryMask::ones(n), (3, 3)).unwrap();
        for r in 1..=n {
            for s in r..=n {
                let in_ur = r < 3 && s > 3;
                assert_eq!(out.get(r, s), !in_ur, "cell ({r}, {s})");
            }
        }
        let out = toggle(&BinaryMask::zeros(n), (3, 3)).unwrap();
        assert_eq!(out, BinaryMask::from_fn(n, |i, j| (i, j) == (3, 3)));
    }

    #[test]
    fn toggle_zero_four() {
        let out = toggle(&BinaryMask::zeros(4), (2, 3)).unwrap();
        let expect = BinaryMask::from_fn(4, |i, j| matches!((i, j), (2, 2) | (2, 3) | (3, 3)));
        assert_eq!(out, expect);
        assert!(!out.get(1, 4) && !out.get(4, 1));
    }

    #[test]
    fn toggle_rejects_bad_cells() {
        assert!(matches!(toggle(&a3(), (3, 1)), Err(Error::InvalidCell { .. })));
        assert!(matches!(toggle(&a3(), (0, 1)), Err(Error::InvalidCell { .. })));
        assert!(matches!(toggle(&a3(), (1, 4)), Err(Error::InvalidCell { .. })));
    }

    #[test]
    fn a3_is_untouched() {
        let (out, trace) = preprocess(&a3(), Threshold::new(1.0).unwrap());
        assert_eq!(out, a3());
        assert!(trace.is_empty());
        assert_eq!(trace.l1_moved, 0.0);
        assert_eq!(trace.gamma_before, trace.gamma_after);
    }

    #[test]
    fn robinson_and_all_ones_untouched() {
        let r = BinaryMask::from_fn(6, |i, j| j - i <= 2);
        let ones = BinaryMask::ones(6);
        for t in [0.5, 1.0, 2.0, 5.0] {
            let t = Threshold::new(t).unwrap();
            assert!(preprocess(&r, t).1.is_empty());
            let (out, trace) = preprocess(&ones, t);
            assert_eq!(out, ones);
            assert!(trace.is_empty());
        }
    }

    #[test]
    fn inverted_cell_is_removed() {
        // (1, 3) is a one above zeros: ones_ur(2, 2) = 1 and zeros_ll(2, 2) = 1.
        let a = BinaryMask::from_fn(3, |i, j| (i, j) == (1, 3));
        let t = Threshold::new(1.0).unwrap();
        let (out, trace) = preprocess(&a, t);
        assert_eq!(trace.toggled_cells, vec![(2, 2)]);
        assert!(satisfies_corner_condition(&out, t));
        assert!(trace.gamma_after.value() < trace.gamma_before.value());
        let step = &trace.steps[0];
        assert_eq!((step.ones_ur, step.zeros_ll), (1, 1));
        assert_eq!(step.cells_changed, 3);
    }
}
