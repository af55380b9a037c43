//! Exhaustive ground truth for small instances.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gamma::gamma1;
use crate::mask::BinaryMask;
use crate::matrix::{apply_permutation, is_robinson, SymmetricMatrix};
use crate::permutation::Permutation;

/// Largest `n` for the binary Robinson enumeration (`2^(n(n+1)/2)` matrices).
pub const MAX_ENUMERATION_N: usize = 5;
/// Largest `n` for the `n!` seriation scan.
pub const MAX_SERIATION_N: usize = 8;
/// Objectives closer than this count as ties in [`best_seriation`].
pub const SERIATION_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<W> {
    pub best_objective: f64,
    /// Every optimal witness, in enumeration order.
    pub witnesses: Vec<W>,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect()
}

fn mask_from_pattern(n: usize, pairs: &[(usize, usize)], pattern: u32, diag: u32) -> BinaryMask {
    let mut m = BinaryMask::zeros(n);
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if pattern >> b & 1 == 1 {
            m.set(i, j, true);
        }
    }
    for i in 0..n {
        if diag >> i & 1 == 1 {
            m.set(i + 1, i + 1, true);
        }
    }
    m
}

/// Off-diagonal patterns (bit `b` = `b`-th pair in row-major order) that are
/// Robinson; the diagonal never matters.
fn robinson_patterns(n: usize) -> &'static [u32] {
    static CACHE: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=MAX_ENUMERATION_N)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                let ps = pairs(n);
                (0..1u32 << ps.len())
                    .filter(|&p| is_robinson(&SymmetricMatrix::from(&mask_from_pattern(n, &ps, p, 0)), 0.0))
                    .collect()
            })
            .collect()
    });
    &all[n]
}

fn check_enumerable(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge { what: "binary Robinson enumeration", n, max: MAX_ENUMERATION_N });
    }
    Ok(())
}

/// Every symmetric binary `n x n` Robinson matrix, each exactly once.
pub fn enumerate_robinson_binary(n: usize) -> Result<impl Iterator<Item = BinaryMask>> {
    check_enumerable(n)?;
    let ps = pairs(n);
    Ok(robinson_patterns(n)
        .iter()
        .flat_map(move |&p| (0..1u32 << n).map(move |d| (p, d)))
        .map(move |(p, d)| mask_from_pattern(n, &ps, p, d)))
}

/// Closest binary Robinson matrices to `a` in normalized l1 distance.
///
/// Fails with [`Error::Invariant`] if the optimum ever drops below
/// `gamma1(a) / 4`.
pub fn best_robinson_binary(a: &BinaryMask) -> Result<OracleResult<BinaryMask>> {
    let n = a.n();
    check_enumerable(n)?;
    let ps = pairs(n);
    let mut target = 0u32;
    for (b, &(i, j)) in ps.iter().enumerate() {
        if a.get(i, j) {
            target |= 1 << b;
        }
    }
    let diag = (0..n).fold(0u32, |acc, i| acc | (u32::from(a.get(i + 1, i + 1)) << i));

    // Matching the diagonal is always free, so only off-diagonal mismatches count.
    let mut best = u32::MAX;
    let mut winners = Vec::new();
    for &p in robinson_patterns(n) {
        let d = (p ^ target).count_ones();
        if d < best {
            best = d;
            winners.clear();
        }
        if d == best {
            winners.push(p);
        }
    }
    let objective = 2.0 * f64::from(best) / (n * n) as f64;
    let lower = a.violation_count() as f64 / (n as f64).powi(3) / 4.0;
    if objective < lower {
        return Err(Error::Invariant(format!("optimum {objective} below gamma1/4 = {lower}")));
    }
    Ok(OracleResult {
        best_objective: objective,
        witnesses: winners.into_iter().map(|p| mask_from_pattern(n, &ps, p, diag)).collect(),
    })
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a larger suffix element");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Minimum of `gamma1(A^pi)` over all orderings.
///
/// A permutation and its reversal give the same objective, so only the
/// lexicographically smaller of each pair is evaluated and reported.
pub fn best_seriation(a: &SymmetricMatrix) -> Result<OracleResult<Permutation>> {
    let n = a.n();
    if n > MAX_SERIATION_N {
        return Err(Error::TooLarge { what: "exhaustive seriation", n, max: MAX_SERIATION_N });
    }
    let mut map: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    let mut witnesses: Vec<(f64, Permutation)> = Vec::new();
    loop {
        let p = Permutation::from_zero_based(map.clone());
        if p <= p.reversed() {
            let g = gamma1(&apply_permutation(a, &p)?).value();
            if g < best - SERIATION_TIE_TOLERANCE {
                best = g;
                witnesses.retain(|(v, _)| *v <= best + SERIATION_TIE_TOLERANCE);
            } else if g < best {
                best = g;
            }
            if g <= best + SERIATION_TIE_TOLERANCE {
                witnesses.push((g, p));
            }
        }
        if !next_permutation(&mut map) {
            break;
        }
    }
    witnesses.retain(|(v, _)| *v <= best + SERIATION_TIE_TOLERANCE);
    Ok(OracleResult { best_objective: best, witnesses: witnesses.into_iter().map(|(_, p)| p).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_robinson_binary(1).unwrap().count(), 2);
        assert_eq!(enumerate_robinson_binary(2).unwrap().count(), 8);
        assert_eq!(enumerate_robinson_binary(3).unwrap().count(), 40);
        assert!(matches!(enumerate_robinson_binary(6), Err(Error::TooLarge { .. })).then_some(()).is_some());
    }

    #[test]
    fn a3_optimum() {
        let a3 = BinaryMask::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]).unwrap();
        let res = best_robinson_binary(&a3).unwrap();
        assert_eq!(res.best_objective, 2.0 / 9.0);
        assert!(res.witnesses.contains(&BinaryMask::identity(3)));
    }

    #[test]
    fn robinson_input_is_its_own_optimum() {
        let r = BinaryMask::from_fn(4, |i, j| j - i <= 1);
        let res = best_robinson_binary(&r).unwrap();
        assert_eq!(res.best_objective, 0.0);
        assert_eq!(res.witnesses, vec![r]);
    }

    #[test]
    fn free_diagonal() {
        let mut a = BinaryMask::ones(4);
        a.set(2, 2, false);
        let res = best_robinson_binary(&a).unwrap();
        assert_eq!(res.best_objective, 0.0);
        assert_eq!(res.witnesses, vec![a]);
    }

    #[test]
    fn seriation_of_a3() {
        let a3 = SymmetricMatrix::from(&BinaryMask::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]).unwrap());
        let res = best_seriation(&a3).unwrap();
        assert_eq!(res.best_objective, 0.0);
        let p = Permutation::new(vec![2, 1, 3]).unwrap();
        assert!(res.witnesses.contains(&p.canonical()));
        for w in &res.witnesses {
            assert!(*w <= w.reversed());
        }
    }

    #[test]
    fn next_permutation_visits_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![3, 2, 1, 0]);
    }

    #[test]
    fn size_limits() {
        assert!(best_robinson_binary(&BinaryMask::ones(6)).is_err());
        assert!(best_seriation(&SymmetricMatrix::ones(9)).is_err());
    }
}
