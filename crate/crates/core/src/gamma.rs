//! The Robinson deviation `gamma1`.
//!
//! ```text
//! gamma1(A) = (1/n^3) * sum_{i<k<j} [A_ij - A_ik]+ + [A_ij - A_kj]+
//! ```
//!
//! It is zero exactly on Robinson matrices and lies in `[0, 1)` on `[0, 1]`
//! inputs.

use rayon::prelude::*;
use serde::Serialize;

use crate::layers::distinct_levels;
use crate::matrix::SymmetricMatrix;
use crate::sum::Neumaier;

/// Above this size the triple sum switches to compensated accumulation.
const COMPENSATE_ABOVE: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Gamma1(f64);

impl Gamma1 {
    pub const ZERO: Gamma1 = Gamma1(0.0);

    /// Wraps a raw value; must be finite and non-negative.
    pub fn new(value: f64) -> Self {
        assert!(value.is_finite() && value >= 0.0, "gamma1 must be finite and >= 0, got {value}");
        Gamma1(value)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Exact triple-loop evaluation, `O(n^3)`.
pub fn gamma1_direct(a: &SymmetricMatrix) -> Gamma1 {
    Gamma1::new(raw_triple_sum(a.n(), a.as_slice()) / cube(a.n()))
}

/// `gamma1` of an arbitrary symmetric real grid (entries may leave `[0, 1]`).
///
/// Exists for checking sub-additivity on difference matrices `A - R`; the
/// result can exceed 1 there.
pub fn gamma1_unclamped(n: usize, data: &[f64]) -> f64 {
    assert_eq!(data.len(), n * n);
    raw_triple_sum(n, data) / cube(n)
}

fn cube(n: usize) -> f64 {
    (n as f64).powi(3)
}

fn raw_triple_sum(n: usize, d: &[f64]) -> f64 {
    let compensated = n > COMPENSATE_ABOVE;
    // One partial per row, reduced in row order so the result does not depend
    // on the thread count.
    let partials: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row = &d[i * n..(i + 1) * n];
            let mut acc = Neumaier::default();
            let mut plain = 0.0;
            for j in (i + 2)..n {
                let aij = row[j];
                let col_j = |k: usize| d[k * n + j];
                let mut s = 0.0;
                for k in (i + 1)..j {
                    s += (aij - row[k]).max(0.0) + (aij - col_j(k)).max(0.0);
                }
                if compensated {
                    acc.add(s);
                } else {
                    plain += s;
                }
            }
            if compensated {
                acc.total()
            } else {
                plain
            }
        })
        .collect();
    if compensated {
        let mut acc = Neumaier::default();
        partials.iter().for_each(|&p| acc.add(p));
        acc.total()
    } else {
        partials.iter().sum()
    }
}

/// Layered evaluation: `sum_k (s_k - s_{k-1}) * gamma1(A^(k))`.
///
/// Each binary layer costs `O(n^2)` through row prefix counts of zeros, so the
/// total is `O(m n^2)` for `m` distinct values. On binary input the result is
/// bit-identical to [`gamma1_direct`].
pub fn gamma1_fast(a: &SymmetricMatrix) -> Gamma1 {
    let n = a.n();
    let levels = distinct_levels(a);
    let counts: Vec<u64> =
        levels.par_iter().map_init(|| vec![0u32; n * (n + 1)], |buf, &s| layer_violations(a, s, buf)).collect();
    let mut acc = Neumaier::default();
    let mut prev = 0.0;
    for (&s, &c) in levels.iter().zip(&counts) {
        acc.add((s - prev) * c as f64);
        prev = s;
    }
    Gamma1::new(acc.total() / cube(n))
}

/// Picks the cheaper of the two evaluators for this matrix.
///
/// The choice depends only on the multiset of entries, so it is stable under
/// permutations of the same matrix.
pub fn gamma1(a: &SymmetricMatrix) -> Gamma1 {
    if distinct_levels(a).len() <= a.n() {
        gamma1_fast(a)
    } else {
        gamma1_direct(a)
    }
}

/// Violation count (`n^3 * gamma1`) of the layer `{A >= level}`.
pub(crate) fn layer_violations(a: &SymmetricMatrix, level: f64, prefix: &mut [u32]) -> u64 {
    let n = a.n();
    let d = a.as_slice();
    let w = n + 1;
    for r in 0..n {
        let p = &mut prefix[r * w..(r + 1) * w];
        p[0] = 0;
        for c in 0..n {
            p[c + 1] = p[c] + u32::from(d[r * n + c] < level);
        }
    }
    let mut total = 0u64;
    for i in 0..n {
        let pi = &prefix[i * w..(i + 1) * w];
        for j in (i + 2)..n {
            if d[i * n + j] >= level {
                let pj = &prefix[j * w..(j + 1) * w];
                total += u64::from(pi[j] - pi[i + 1]) + u64::from(pj[j] - pj[i + 1]);
            }
        }
    }
    total
}
