//! Threshold decomposition of a matrix into nested binary layers.
//!
//! With `0 = s_0 < s_1 < ... < s_m` the distinct entry values plus zero,
//! layer `k` is the indicator of `A >= s_k` and
//! `A = sum_k (s_k - s_{k-1}) * A^(k)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::matrix::SymmetricMatrix;
use crate::sum::Neumaier;

#[derive(Clone, Debug, PartialEq)]
pub struct Layering {
    n: usize,
    /// `s_1 < ... < s_m`; `s_0 = 0` is implicit.
    levels: Vec<f64>,
    layers: Vec<BinaryMask>,
}

impl Layering {
    /// Validates and assembles a layering. The masks need not be nested, so
    /// the same type can carry per-layer approximations for recombination.
    pub fn new(n: usize, levels: Vec<f64>, layers: Vec<BinaryMask>) -> Result<Self> {
        if levels.len() != layers.len() {
            return Err(Error::MalformedLayering(format!(
                "{} levels but {} layers",
                levels.len(),
                layers.len()
            )));
        }
        let mut prev = 0.0;
        for &s in &levels {
            if !(s.is_finite() && s > prev && s <= 1.0) {
                return Err(Error::MalformedLayering(format!("level {s} does not increase from {prev} within (0, 1]")));
            }
            prev = s;
        }
        if let Some(l) = layers.iter().find(|l| l.n() != n) {
            return Err(Error::MalformedLayering(format!("layer of size {} in a size-{n} layering", l.n())));
        }
        Ok(Self { n, levels, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of layers `m`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `s_1, ..., s_m`.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// `s_k - s_{k-1}` for `k = 1..=m`.
    pub fn weights(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.levels
            .iter()
            .map(|&s| {
                let w = s - prev;
                prev = s;
                w
            })
            .collect()
    }

    pub fn layers(&self) -> &[BinaryMask] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<BinaryMask> {
        self.layers
    }

    /// True when `A^(k) <= A^(l)` entrywise for all `l < k`.
    pub fn is_nested(&self) -> bool {
        self.layers.windows(2).all(|w| w[1].is_dominated_by(&w[0]))
    }
}

/// Distinct values of the upper triangle, ascending, zero excluded.
///
/// Values are compared by bit pattern; nothing is merged.
pub(crate) fn distinct_levels(a: &SymmetricMatrix) -> Vec<f64> {
    let n = a.n();
    let d = a.as_slice();
    let mut v: Vec<f64> = (0..n).flat_map(|i| d[i * n + i..(i + 1) * n].iter().copied()).filter(|&x| x > 0.0).collect();
    v.sort_unstable_by(f64::total_cmp);
    v.dedup_by(|a, b| a.to_bits() == b.to_bits());
    v
}

pub fn decompose(a: &SymmetricMatrix) -> Layering {
    let n = a.n();
    let levels = distinct_levels(a);
    let d = a.as_slice();
    let layers = levels.par_iter().map(|&s| BinaryMask::from_fn(n, |i, j| d[(i - 1) * n + (j - 1)] >= s)).collect();
    Layering { n, levels, layers }
}

/// `sum_k w_k * A^(k)`, accumulated per entry in ascending level order with
/// compensated summation.
pub fn recombine(l: &Layering) -> SymmetricMatrix {
    let n = l.n;
    let weights = l.weights();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = Neumaier::default();
            for (w, layer) in weights.iter().zip(&l.layers) {
                if layer.bit(i, j) {
                    acc.add(*w);
                }
            }
            let v = acc.total().clamp(0.0, 1.0);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    SymmetricMatrix::from_raw_parts(n, data)
}

/// Rounds every entry to the nearest multiple of `step`, ties away from zero,
/// then clamps to `[0, 1]`.
pub fn quantize(a: &SymmetricMatrix, step: f64) -> Result<SymmetricMatrix> {
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!("quantization step must be in (0, 1], got {step}")));
    }
    let n = a.n();
    Ok(SymmetricMatrix::from_fn(n, |i, j| ((a.get(i, j) / step).round() * step).clamp(0.0, 1.0)))
}
