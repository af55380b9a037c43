//! Threshold rounding of a binary matrix to a binary Robinson matrix.
//!
//! An upper-triangle cell `(i, j)` is black (1) iff `ones_ur(i, j) >= t`.
//! Because `UR(i, j)` shrinks when moving away from the diagonal, the black
//! region is convex around the diagonal and the output is Robinson. Row 1 and
//! column `n` have empty `UR` regions and are always white.

use serde::Serialize;

use crate::counts::{corner_counts, CornerCounts};
use crate::error::{Error, Result};
use crate::gamma::Gamma1;
use crate::mask::BinaryMask;

/// A positive, finite threshold on corner counts.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Threshold(f64);

impl Threshold {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(Self(t))
        } else {
            Err(Error::InvalidThreshold(t))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `t = n^2 * sqrt(4 * eps)`, the threshold for which every unit-diagonal
/// input already satisfies the corner-count condition.
pub fn threshold_corollary(eps: Gamma1, n: usize) -> Result<Threshold> {
    if eps.is_zero() {
        return Err(Error::ZeroGamma);
    }
    let n2 = (n as f64) * (n as f64);
    Threshold::new(n2 * (4.0 * eps.value()).sqrt())
}

/// `t = 4^(-2/3) * eps^(2/3) * n^2`, the threshold paired with preprocessing.
pub fn threshold_theorem(eps: Gamma1, n: usize) -> Result<Threshold> {
    if eps.is_zero() {
        return Err(Error::ZeroGamma);
    }
    let n2 = (n as f64) * (n as f64);
    Threshold::new(4f64.powf(-2.0 / 3.0) * eps.value().powf(2.0 / 3.0) * n2)
}

/// Runs the threshold rounding on `a`.
pub fn robinson_approx_binary(a: &BinaryMask, t: Threshold) -> BinaryMask {
    approx_from_counts(&corner_counts(a), t)
}

/// Same as [`robinson_approx_binary`] for callers that already hold the counts.
pub fn approx_from_counts(counts: &CornerCounts, t: Threshold) -> BinaryMask {
    let n = counts.n();
    let mut r = BinaryMask::zeros(n);
    let t = t.value();
    for i in 2..n {
        // Along a row the count only grows towards the diagonal, so scan from
        // the diagonal outwards and stop at the first white cell.
        for j in i..n {
            if f64::from(counts.ones_ur(i, j)) >= t {
                r.put(i - 1, j - 1, true);
                r.put(j - 1, i - 1, true);
            } else {
                break;
            }
        }
    }
    r
}
