//! Bit-packed symmetric binary matrices.

use std::fmt;

use crate::error::{Error, Result};

/// Symmetric `n x n` matrix over `{0, 1}`, one bit per cell.
///
/// Public accessors take 1-based cells; [`BinaryMask::bit`] is the 0-based
/// fast path used by the counting kernels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMask {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "mask dimension must be positive");
        let words_per_row = n.div_ceil(64);
        Self { n, words_per_row, bits: vec![0; n * words_per_row] }
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Unit diagonal, zero elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    /// `f(i, j)` is evaluated on the upper triangle (1-based, `i <= j`) and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                if f(i + 1, j + 1) {
                    m.put(i, j, true);
                    m.put(j, i, true);
                }
            }
        }
        m
    }

    /// Parses rows of 0/1 values; rejects asymmetric or non-binary input.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: r + 1, len: row.len(), n });
            }
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = rows[i][j];
                if v > 1 {
                    return Err(Error::NotBinary { i: i + 1, j: j + 1, value: v as f64 });
                }
                if v != rows[j][i] {
                    return Err(Error::Asymmetric { i: i + 1, j: j + 1, a: v as f64, b: rows[j][i] as f64 });
                }
                m.put(i, j, v == 1);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based bit read.
    #[inline]
    pub fn bit(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.n && c < self.n);
        (self.bits[r * self.words_per_row + (c >> 6)] >> (c & 63)) & 1 == 1
    }

    /// 0-based single-cell write; callers keep the mirror in sync.
    #[inline]
    pub(crate) fn put(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.words_per_row + (c >> 6)];
        let mask = 1u64 << (c & 63);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Entry at 1-based cell `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "cell ({i}, {j}) out of range for n = {}",
            self.n
        );
        self.bit(i - 1, j - 1)
    }

    /// Sets 1-based cell `(i, j)` and its mirror.
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "cell ({i}, {j}) out of range for n = {}",
            self.n
        );
        self.put(i - 1, j - 1, v);
        self.put(j - 1, i - 1, v);
    }

    /// Number of one-cells over the full square.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of cells where `self` and `other` differ, over the full square.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(self.bits.iter().zip(&other.bits).map(|(a, b)| (a ^ b).count_ones() as usize).sum())
    }

    pub fn diagonal(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.bit(i, i)).collect()
    }

    pub fn with_diagonal(&self, diag: &[bool]) -> Self {
        assert_eq!(diag.len(), self.n);
        let mut out = self.clone();
        for (i, &v) in diag.iter().enumerate() {
            out.put(i, i, v);
        }
        out
    }

    /// Entrywise `self <= other`.
    pub fn is_dominated_by(&self, other: &Self) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Number of violating terms in the Robinson deviation sum, i.e.
    /// `n^3 * gamma1` for this mask.
    ///
    /// For a one at `(i, j)`, `i < j`, every zero strictly between `i` and `j`
    /// in row `i` or in column `j` contributes one. Runs in `O(n^2)`.
    pub fn violation_count(&self) -> u64 {
        let n = self.n;
        let mut prefix = vec![0u32; n * (n + 1)];
        self.zero_prefix(&mut prefix);
        let mut total = 0u64;
        for i in 0..n {
            let pi = &prefix[i * (n + 1)..(i + 1) * (n + 1)];
            for j in (i + 2)..n {
                if self.bit(i, j) {
                    let pj = &prefix[j * (n + 1)..(j + 1) * (n + 1)];
                    // zeros in row i at columns i+1..j-1 and (by symmetry)
                    // in row j at columns i+1..j-1
                    total += u64::from(pi[j] - pi[i + 1]) + u64::from(pj[j] - pj[i + 1]);
                }
            }
        }
        total
    }

    /// `prefix[r * (n + 1) + c]` = zeros in row `r` among columns `< c`.
    fn zero_prefix(&self, prefix: &mut [u32]) {
        let n = self.n;
        for r in 0..n {
            let p = &mut prefix[r * (n + 1)..(r + 1) * (n + 1)];
            p[0] = 0;
            for c in 0..n {
                p[c + 1] = p[c] + u32::from(!self.bit(r, c));
            }
        }
    }
}

impl fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMask({})", self.n)?;
        for r in 0..self.n {
            let line: String = (0..self.n).map(|c| if self.bit(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
