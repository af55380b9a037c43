//! Dense symmetric matrices with entries in `[0, 1]`.
//!
//! All cell coordinates in the public API are 1-based, `(i, j)` with
//! `1 <= i, j <= n`. Storage is a row-major `Vec<f64>`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::permutation::Permutation;

/// Default tolerance for [`is_robinson`] on real-valued inputs.
pub const REAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds a matrix from a raw square grid.
    ///
    /// Pairs `raw[i][j]`, `raw[j][i]` that differ by at most `tolerance` are
    /// averaged; entries within `tolerance` of `[0, 1]` are clamped. Anything
    /// further off is rejected.
    pub fn new(raw: &[Vec<f64>], tolerance: f64) -> Result<Self> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row: row + 1, len: r.len(), n });
            }
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let (a, b) = (raw[i][j], raw[j][i]);
                for v in [a, b] {
                    if !v.is_finite() || v < -tolerance || v > 1.0 + tolerance {
                        return Err(Error::OutOfRange { i: i + 1, j: j + 1, value: v });
                    }
                }
                if (a - b).abs() > tolerance {
                    return Err(Error::Asymmetric { i: i + 1, j: j + 1, a, b });
                }
                let v = if a == b { a } else { (a + b) / 2.0 };
                let v = normalize(v.clamp(0.0, 1.0));
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from the upper triangle: `f(i, j)` is called for
    /// `1 <= i <= j <= n` and mirrored. Values are clamped to `[0, 1]`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = normalize(f(i + 1, j + 1).clamp(0.0, 1.0));
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    /// Unit diagonal, zero elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from row-major storage that is already symmetric and in range.
    pub(crate) fn from_raw_parts(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        debug_assert!((0..n).all(|i| (0..n).all(|j| data[i * n + j] == data[j * n + i])));
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based cell `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "cell ({i}, {j}) out of range for n = {}",
            self.n
        );
        self.data[(i - 1) * self.n + (j - 1)]
    }

    /// Row-major storage.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Rows as nested vectors, mostly for serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Converts to a mask, failing on the first non-binary entry.
    pub fn to_mask(&self) -> Result<BinaryMask> {
        let n = self.n;
        if let Some(p) = self.data.iter().position(|&v| v != 0.0 && v != 1.0) {
            return Err(Error::NotBinary { i: p / n + 1, j: p % n + 1, value: self.data[p] });
        }
        Ok(BinaryMask::from_fn(n, |i, j| self.data[(i - 1) * n + (j - 1)] == 1.0))
    }

    /// Diagonal entries in index order.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.data[i * self.n + i]).collect()
    }

    /// Copy with the diagonal replaced by `diag`.
    pub fn with_diagonal(&self, diag: &[f64]) -> Self {
        assert_eq!(diag.len(), self.n);
        let mut out = self.clone();
        for (i, &v) in diag.iter().enumerate() {
            out.data[i * self.n + i] = normalize(v.clamp(0.0, 1.0));
        }
        out
    }
}

impl From<&BinaryMask> for SymmetricMatrix {
    fn from(mask: &BinaryMask) -> Self {
        let n = mask.n();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if mask.bit(i, j) {
                    data[i * n + j] = 1.0;
                }
            }
        }
        Self { n, data }
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricMatrix").field("n", &self.n).field("rows", &self.to_rows()).finish()
    }
}

// -0.0 compares equal to 0.0 but has different bits; distinct-value detection
// works on bits, so keep a single zero.
#[inline]
fn normalize(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Normalized l1 distance `(1/n^2) * sum |A_ij - B_ij|`.
pub fn l1_distance(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    let sum: f64 = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).abs()).sum();
    Ok(sum / (a.n * a.n) as f64)
}

/// True iff no triple `i < j < k` has `A_ik` exceeding `A_ij` or `A_jk` by
/// more than `tolerance`. Diagonal entries are never constrained.
pub fn is_robinson(a: &SymmetricMatrix, tolerance: f64) -> bool {
    let n = a.n;
    let d = &a.data;
    // Running minima turn the O(n^3) triple scan into O(n^2) without
    // changing what "violates by more than tolerance" means.
    for i in 0..n {
        let row = &d[i * n..(i + 1) * n];
        let mut min = f64::INFINITY;
        for k in (i + 2)..n {
            min = min.min(row[k - 1]);
            if row[k] > min + tolerance {
                return false;
            }
        }
    }
    for k in 0..n {
        let mut min = f64::INFINITY;
        for i in (0..k.saturating_sub(1)).rev() {
            min = min.min(d[(i + 1) * n + k]);
            if d[i * n + k] > min + tolerance {
                return false;
            }
        }
    }
    true
}

/// `result[i][j] = A[p(i)][p(j)]`.
pub fn apply_permutation(a: &SymmetricMatrix, p: &Permutation) -> Result<SymmetricMatrix> {
    if a.n != p.len() {
        return Err(Error::DimensionMismatch { left: a.n, right: p.len() });
    }
    let n = a.n;
    let map = p.as_zero_based();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let src = &a.data[map[i] * n..(map[i] + 1) * n];
        for j in 0..n {
            data[i * n + j] = src[map[j]];
        }
    }
    Ok(SymmetricMatrix { n, data })
}
