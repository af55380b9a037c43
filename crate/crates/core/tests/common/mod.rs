//! Brute-force references and instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robinson_core::{add_noise, apply_permutation, random_robinson, BinaryMask, NoiseModel, Permutation, SymmetricMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `sum_{i<k<j} [A_ij - A_ik]+ + [A_ij - A_kj]+ / n^3`, literally.
pub fn gamma_ref(a: &SymmetricMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 1..=n {
        for j in i + 2..=n {
            for k in i + 1..j {
                s += (a.get(i, j) - a.get(i, k)).max(0.0) + (a.get(i, j) - a.get(k, j)).max(0.0);
            }
        }
    }
    s / (n as f64).powi(3)
}

/// Integer triple count `n^3 * gamma1` for binary input.
pub fn violations_ref(a: &BinaryMask) -> u64 {
    let n = a.n();
    let mut c = 0;
    for i in 1..=n {
        for j in i + 2..=n {
            if !a.get(i, j) {
                continue;
            }
            for k in i + 1..j {
                c += u64::from(!a.get(i, k)) + u64::from(!a.get(k, j));
            }
        }
    }
    c
}

/// Ones with row `< a` and column `> b`.
pub fn ur_ref(m: &BinaryMask, a: usize, b: usize) -> u32 {
    let n = m.n();
    let mut c = 0;
    for i in 1..a {
        for j in b + 1..=n {
            c += u32::from(m.get(i, j));
        }
    }
    c
}

/// Zeros with `a <= i <= j <= b`.
pub fn ll_ref(m: &BinaryMask, a: usize, b: usize) -> u32 {
    let mut c = 0;
    for i in a..=b {
        for j in i..=b {
            c += u32::from(!m.get(i, j));
        }
    }
    c
}

/// Triple condition `A_ij >= A_ik` and `A_jk >= A_ik` for all `i < j < k`.
pub fn robinson_ref(a: &SymmetricMatrix) -> bool {
    let n = a.n();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if a.get(i, j) < a.get(i, k) || a.get(j, k) < a.get(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn hamming_dist(a: &BinaryMask, b: &BinaryMask) -> f64 {
    a.hamming(b).unwrap() as f64 / (a.n() * a.n()) as f64
}

pub fn bernoulli(n: usize, p: f64, r: &mut ChaCha8Rng) -> BinaryMask {
    BinaryMask::from_fn(n, |_, _| r.random::<f64>() < p)
}

/// Entries drawn from `{0, 1/levels, ..., 1}`.
pub fn dyadic_levels(n: usize, levels: u32, r: &mut ChaCha8Rng) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(n, |_, _| f64::from(r.random_range(0..=levels)) / f64::from(levels))
}

/// Rounds to the nearest multiple of `1/levels`.
pub fn snap(a: &SymmetricMatrix, levels: u32) -> SymmetricMatrix {
    let l = f64::from(levels);
    SymmetricMatrix::from_fn(a.n(), |i, j| (a.get(i, j) * l).round() / l)
}

fn shuffle(a: &SymmetricMatrix, r: &mut ChaCha8Rng) -> SymmetricMatrix {
    let mut images: Vec<usize> = (1..=a.n()).collect();
    for k in (1..images.len()).rev() {
        images.swap(k, r.random_range(0..=k));
    }
    apply_permutation(a, &Permutation::new(images).unwrap()).unwrap()
}

/// Binary instance of one of three kinds, selected by `index % 3`: iid
/// Bernoulli, lightly flipped Robinson, or shuffled noisy Robinson.
pub fn binary_instance(n: usize, index: u64, seed: u64) -> BinaryMask {
    let mut r = rng(seed);
    match index % 3 {
        0 => bernoulli(n, r.random_range(0.05..0.95), &mut r),
        1 => {
            let clean = random_robinson(n, 4, seed).unwrap();
            let cut = f64::from(r.random_range(1..=4u32)) / 4.0;
            let band = SymmetricMatrix::from_fn(n, |i, j| f64::from(u8::from(clean.get(i, j) >= cut)));
            let level = r.random_range(0.0..0.1);
            add_noise(&band, level, seed, NoiseModel::Flip).unwrap().to_mask().unwrap()
        }
        _ => {
            let clean = random_robinson(n, 4, seed).unwrap();
            let band = SymmetricMatrix::from_fn(n, |i, j| f64::from(u8::from(clean.get(i, j) >= 0.5)));
            let level = r.random_range(0.0..0.3);
            let noisy = add_noise(&band, level, seed, NoiseModel::Flip).unwrap();
            shuffle(&noisy, &mut r).to_mask().unwrap()
        }
    }
}

/// General instance with entries in `{0, 1/levels, ..., 1}`, same three kinds.
pub fn level_instance(n: usize, levels: u32, index: u64, seed: u64) -> SymmetricMatrix {
    let mut r = rng(seed);
    match index % 3 {
        0 => dyadic_levels(n, levels, &mut r),
        1 => {
            let clean = random_robinson(n, levels as usize, seed).unwrap();
            let level = r.random_range(0.0..0.15);
            snap(&add_noise(&clean, level, seed, NoiseModel::Uniform).unwrap(), levels)
        }
        _ => {
            let clean = random_robinson(n, levels as usize, seed).unwrap();
            let level = r.random_range(0.0..0.5);
            let noisy = snap(&add_noise(&clean, level, seed, NoiseModel::Uniform).unwrap(), levels);
            shuffle(&noisy, &mut r)
        }
    }
}

/// Every symmetric binary `n x n` matrix.
pub fn all_binary(n: usize) -> Vec<BinaryMask> {
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    (0..1u32 << cells.len())
        .map(|bits| {
            let mut m = BinaryMask::zeros(n);
            for (b, &(i, j)) in cells.iter().enumerate() {
                if bits >> b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
            m
        })
        .collect()
}
