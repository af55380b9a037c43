//! Seeded generators for Robinson matrices, noise and planted instances.
//!
//! Every random draw is addressed by `(seed, stream, cell)` on a ChaCha
//! keystream, so output does not depend on iteration order or threads.

use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{apply_permutation, SymmetricMatrix};
use crate::permutation::Permutation;

const POINTS: u64 = 0;
const NOISE: u64 = 1;
const SHUFFLE: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    /// Flip each off-diagonal bit with probability `level`.
    Flip,
    /// Add `U[-level, level]` to each off-diagonal entry, clamped.
    Uniform,
}

/// Stream positioned at draw `index`; each `f64` consumes two 32-bit words.
fn stream_at(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(2 * u128::from(index));
    rng
}

/// Uniform draws for the strict upper triangle, row by row:
/// `out[i][k]` belongs to cell `(i, i + 1 + k)` (0-based).
fn upper_draws(n: usize, seed: u64, stream: u64) -> Vec<Vec<f64>> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_at(seed, stream, (i * n + i + 1) as u64);
            (i + 1..n).map(|_| rng.random::<f64>()).collect()
        })
        .collect()
}

fn check_level(level: f64) -> Result<()> {
    if (0.0..=1.0).contains(&level) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("noise level must be in [0, 1], got {level}")))
    }
}

/// Monotone step kernel `g(d) = ceil(levels * (1 - d)) / levels` of `n`
/// sorted uniform points; Robinson by construction.
pub fn random_robinson(n: usize, levels: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n == 0 || levels == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and levels >= 1, got n = {n}, levels = {levels}")));
    }
    let mut rng = stream_at(seed, POINTS, 0);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    x.sort_by(f64::total_cmp);
    let l = levels as f64;
    Ok(SymmetricMatrix::from_fn(n, |i, j| {
        let d = x[j - 1] - x[i - 1];
        ((l * (1.0 - d)).ceil() / l).clamp(0.0, 1.0)
    }))
}

pub fn add_noise(a: &SymmetricMatrix, level: f64, seed: u64, model: NoiseModel) -> Result<SymmetricMatrix> {
    check_level(level)?;
    let n = a.n();
    if model == NoiseModel::Flip {
        if let Some((i, j, value)) = first_non_binary(a) {
            return Err(Error::NotBinary { i, j, value });
        }
    }
    if level == 0.0 {
        return Ok(a.clone());
    }
    let draws = upper_draws(n, seed, NOISE);
    Ok(SymmetricMatrix::from_fn(n, |i, j| {
        let x = a.get(i, j);
        if i == j {
            return x;
        }
        let u = draws[i - 1][j - i - 1];
        match model {
            NoiseModel::Flip => {
                if u < level {
                    1.0 - x
                } else {
                    x
                }
            }
            NoiseModel::Uniform => (x + (2.0 * u - 1.0) * level).clamp(0.0, 1.0),
        }
    }))
}

fn first_non_binary(a: &SymmetricMatrix) -> Option<(usize, usize, f64)> {
    let n = a.n();
    (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).map(|(i, j)| (i, j, a.get(i, j))).find(|&(_, _, v)| v != 0.0 && v != 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance {
    pub clean: SymmetricMatrix,
    /// `apply_permutation(noisy, truth_perm)`.
    pub noisy_shuffled: SymmetricMatrix,
    pub truth_perm: Permutation,
    pub noise_level: f64,
    pub seed: u64,
}

/// `random_robinson`, then uniform noise, then a seeded shuffle.
pub fn planted_instance(n: usize, levels: usize, noise_level: f64, seed: u64) -> Result<PlantedInstance> {
    let clean = random_robinson(n, levels, seed)?;
    let noisy = add_noise(&clean, noise_level, seed, NoiseModel::Uniform)?;
    let mut rng = stream_at(seed, SHUFFLE, 0);
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(&mut rng);
    let truth_perm = Permutation::new(images)?;
    let noisy_shuffled = apply_permutation(&noisy, &truth_perm)?;
    Ok(PlantedInstance { clean, noisy_shuffled, truth_perm, noise_level, seed })
}
