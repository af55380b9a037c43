//! Orderings that make a matrix as close to Robinson as possible.
//!
//! Three strategies: exhaustive scan (small `n`), a spectral ordering by the
//! Fiedler vector of the Laplacian, and multistart steepest descent on
//! `gamma1(A^pi)` over adjacent swaps and single-element insertions.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{gamma1, Gamma1};
use crate::matrix::{apply_permutation, SymmetricMatrix};
use crate::oracle::{best_seriation, MAX_SERIATION_N};
use crate::permutation::Permutation;

/// Residual tolerance for the Fiedler eigenpair, relative to `max(1, lambda_max)`.
pub const FIEDLER_RESIDUAL_TOLERANCE: f64 = 1e-8;
const FIEDLER_MAX_ITERATIONS: usize = 10_000;
/// Eigenvalues within this relative gap of `lambda_2` share its eigenspace.
const EIGEN_CLUSTER_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Local,
    Spectral,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Local => "local",
            Method::Spectral => "spectral",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriationConfig {
    pub method: Method,
    pub restarts: usize,
    /// Cap on accepted moves per restart.
    pub max_moves: usize,
    pub seed: u64,
}

impl Default for SeriationConfig {
    fn default() -> Self {
        Self { method: Method::Local, restarts: 8, max_moves: 10_000, seed: 0 }
    }
}

impl SeriationConfig {
    pub fn new(method: Method, restarts: usize, max_moves: usize, seed: u64) -> Result<Self> {
        let cfg = Self { method, restarts, max_moves, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.max_moves == 0 {
            return Err(Error::InvalidArgument("max_moves must be at least 1".into()));
        }
        Ok(())
    }
}

/// Spectral ordering plus diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiedlerOrder {
    pub permutation: Permutation,
    /// Second-smallest Laplacian eigenvalue.
    pub eigenvalue: f64,
    /// The vector the ordering sorts by.
    pub vector: Vec<f64>,
    /// `lambda_2` is repeated or the support is disconnected; ties were
    /// resolved by projecting the index vector onto the eigenspace.
    pub degenerate: bool,
    /// False when the eigensolver failed or missed the residual tolerance;
    /// the permutation is then the identity.
    pub converged: bool,
}

/// Laplacian `L = D - A` with `D_ii = sum_{j != i} A_ij`; the diagonal of `A`
/// plays no part.
fn laplacian(a: &SymmetricMatrix) -> DMatrix<f64> {
    let n = a.n();
    let mut l = DMatrix::from_fn(n, n, |r, c| if r == c { 0.0 } else { -a.get(r + 1, c + 1) });
    for r in 0..n {
        let deg: f64 = (0..n).filter(|&c| c != r).map(|c| a.get(r + 1, c + 1)).sum();
        l[(r, r)] = deg;
    }
    l
}

fn sort_by_component(v: &[f64]) -> Permutation {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&x, &y| v[x].total_cmp(&v[y]).then(x.cmp(&y)));
    Permutation::from_zero_based(idx)
}

pub fn fiedler(a: &SymmetricMatrix) -> Result<FiedlerOrder> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("spectral ordering needs n >= 2, got {n}")));
    }
    let l = laplacian(a);
    let failed = || FiedlerOrder {
        permutation: Permutation::identity(n),
        eigenvalue: f64::NAN,
        vector: Vec::new(),
        degenerate: false,
        converged: false,
    };
    let Some(eig) = SymmetricEigen::try_new(l.clone(), f64::EPSILON, FIEDLER_MAX_ITERATIONS) else {
        return Ok(failed());
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]).then(x.cmp(&y)));
    let lambda_max = eig.eigenvalues[order[n - 1]];
    let scale = lambda_max.abs().max(1.0);
    let lambda2 = eig.eigenvalues[order[1]];
    let gap = EIGEN_CLUSTER_TOLERANCE * scale;

    let cluster: Vec<usize> = order.iter().copied().filter(|&k| (eig.eigenvalues[k] - lambda2).abs() <= gap).collect();
    let zero_multiplicity = order.iter().filter(|&&k| eig.eigenvalues[k].abs() <= gap).count();
    let degenerate = cluster.len() > 1 || zero_multiplicity > 1;

    // Projecting the centred index vector onto the eigenspace picks a
    // canonical member of it and fixes the sign.
    let mid = (n as f64 - 1.0) / 2.0;
    let centred = DVector::from_fn(n, |i, _| i as f64 - mid);
    let mut v = DVector::zeros(n);
    for &k in &cluster {
        let col = eig.eigenvectors.column(k);
        v += col * col.dot(&centred);
    }
    if v.norm() <= 1e-9 * centred.norm() {
        let col = eig.eigenvectors.column(order[1]).into_owned();
        let lead = col.iter().copied().find(|x| x.abs() > 1e-9).unwrap_or(0.0);
        v = if lead > 0.0 { -col } else { col };
    }
    let norm = v.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Ok(failed());
    }
    v /= norm;

    let residual = (&l * &v - &v * lambda2).norm();
    if residual > FIEDLER_RESIDUAL_TOLERANCE * scale {
        return Ok(failed());
    }
    let vector: Vec<f64> = v.iter().copied().collect();
    Ok(FiedlerOrder { permutation: sort_by_component(&vector), eigenvalue: lambda2, vector, degenerate, converged: true })
}

/// Indices sorted by Fiedler-vector component, ties by index.
pub fn fiedler_order(a: &SymmetricMatrix) -> Result<Permutation> {
    Ok(fiedler(a)?.permutation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "restart")]
pub enum Start {
    Identity,
    Fiedler,
    /// Seeded with `seed + restart`.
    Random(usize),
}

/// One descent run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentRun {
    pub start: Start,
    pub initial: Permutation,
    /// `gamma1` of the start followed by the value after every accepted move.
    pub trajectory: Vec<f64>,
    pub permutation: Permutation,
    pub gamma1: Gamma1,
    /// True if the run stopped at `max_moves` rather than a local minimum.
    pub hit_move_cap: bool,
}

impl DescentRun {
    pub fn moves(&self) -> usize {
        self.trajectory.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalSearch {
    pub permutation: Permutation,
    pub gamma1: Gamma1,
    pub runs: Vec<DescentRun>,
    pub fiedler_converged: bool,
    pub fiedler_degenerate: bool,
}

fn objective(a: &SymmetricMatrix, p: &Permutation) -> f64 {
    gamma1(&apply_permutation(a, p).expect("permutation matches matrix size")).value()
}

/// Move the object at position `from` to position `to`. With `|from - to| = 1`
/// this is the adjacent transposition.
fn insertion(map: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut m = map.to_vec();
    let x = m.remove(from);
    m.insert(to, x);
    m
}

fn neighbours(map: &[usize]) -> Vec<Vec<usize>> {
    let n = map.len();
    let mut out = Vec::with_capacity(n * n);
    for from in 0..n {
        for to in 0..n {
            // Moving by one in either direction yields the same swap; keep one.
            if from == to || to + 1 == from {
                continue;
            }
            out.push(insertion(map, from, to));
        }
    }
    out
}

fn by_value_then_perm(x: &(f64, Vec<usize>), y: &(f64, Vec<usize>)) -> Ordering {
    x.0.total_cmp(&y.0).then_with(|| x.1.cmp(&y.1))
}

fn descend(a: &SymmetricMatrix, start: Start, initial: Permutation, max_moves: usize) -> DescentRun {
    let mut map = initial.as_zero_based().to_vec();
    let mut current = objective(a, &initial);
    let mut trajectory = vec![current];
    let mut hit_move_cap = false;
    while current > 0.0 {
        if trajectory.len() > max_moves {
            hit_move_cap = true;
            break;
        }
        let best = neighbours(&map)
            .into_par_iter()
            .map(|m| (objective(a, &Permutation::from_zero_based(m.clone())), m))
            .collect::<Vec<_>>()
            .into_iter()
            .min_by(by_value_then_perm)
            .expect("n >= 2 has neighbours");
        if best.0 >= current {
            break;
        }
        current = best.0;
        map = best.1;
        if cfg!(debug_assertions) && a.n() <= 60 {
            let check = crate::gamma::gamma1_direct(&apply_permutation(a, &Permutation::from_zero_based(map.clone())).unwrap());
            debug_assert!((check.value() - current).abs() <= 1e-12, "objective drift: {} vs {current}", check.value());
        }
        trajectory.push(current);
    }
    DescentRun {
        start,
        initial,
        trajectory,
        permutation: Permutation::from_zero_based(map),
        gamma1: Gamma1::new(current),
        hit_move_cap,
    }
}

fn random_start(n: usize, seed: u64, restart: usize) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(&mut rng);
    Permutation::from_zero_based(map)
}

/// Multistart steepest descent with full run records.
///
/// Starts are the identity, the Fiedler ordering (restart 0; the identity if
/// the eigensolver fails) and `restarts - 1` seeded random orderings. The best
/// result by `(gamma1, permutation)` wins.
pub fn local_search(a: &SymmetricMatrix, cfg: &SeriationConfig) -> Result<LocalSearch> {
    cfg.validate()?;
    let n = a.n();
    if n < 2 {
        let p = Permutation::identity(n);
        let run = DescentRun {
            start: Start::Identity,
            initial: p.clone(),
            trajectory: vec![0.0],
            permutation: p.clone(),
            gamma1: Gamma1::ZERO,
            hit_move_cap: false,
        };
        return Ok(LocalSearch {
            permutation: p,
            gamma1: Gamma1::ZERO,
            runs: vec![run],
            fiedler_converged: true,
            fiedler_degenerate: false,
        });
    }
    let f = fiedler(a)?;
    let mut starts = vec![(Start::Identity, Permutation::identity(n)), (Start::Fiedler, f.permutation.clone())];
    starts.extend((1..cfg.restarts).map(|r| (Start::Random(r), random_start(n, cfg.seed, r))));
    let runs: Vec<DescentRun> = starts.into_par_iter().map(|(s, p)| descend(a, s, p, cfg.max_moves)).collect();
    let best = runs
        .iter()
        .min_by(|x, y| x.gamma1.value().total_cmp(&y.gamma1.value()).then_with(|| x.permutation.cmp(&y.permutation)))
        .expect("at least two runs");
    Ok(LocalSearch {
        permutation: best.permutation.clone(),
        gamma1: best.gamma1,
        runs,
        fiedler_converged: f.converged,
        fiedler_degenerate: f.degenerate,
    })
}

pub fn seriate_local(a: &SymmetricMatrix, cfg: &SeriationConfig) -> Result<(Permutation, Gamma1)> {
    let r = local_search(a, cfg)?;
    Ok((r.permutation, r.gamma1))
}

/// Summary of any seriation method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Seriation {
    pub method: Method,
    pub restarts: usize,
    pub best_gamma1: Gamma1,
    pub permutation: Permutation,
    /// Only meaningful for the spectral and local methods.
    pub fiedler_converged: bool,
    pub fiedler_degenerate: bool,
}

pub fn seriate(a: &SymmetricMatrix, cfg: &SeriationConfig) -> Result<Seriation> {
    cfg.validate()?;
    let n = a.n();
    match cfg.method {
        Method::Exhaustive => {
            if n > MAX_SERIATION_N {
                return Err(Error::TooLarge { what: "exhaustive seriation", n, max: MAX_SERIATION_N });
            }
            let res = best_seriation(a)?;
            Ok(Seriation {
                method: cfg.method,
                restarts: cfg.restarts,
                best_gamma1: Gamma1::new(res.best_objective),
                permutation: res.witnesses[0].clone(),
                fiedler_converged: true,
                fiedler_degenerate: false,
            })
        }
        Method::Spectral => {
            let f = fiedler(a)?;
            let g = Gamma1::new(objective(a, &f.permutation));
            Ok(Seriation {
                method: cfg.method,
                restarts: cfg.restarts,
                best_gamma1: g,
                permutation: f.permutation,
                fiedler_converged: f.converged,
                fiedler_degenerate: f.degenerate,
            })
        }
        Method::Local => {
            let r = local_search(a, cfg)?;
            Ok(Seriation {
                method: cfg.method,
                restarts: cfg.restarts,
                best_gamma1: r.gamma1,
                permutation: r.permutation,
                fiedler_converged: r.fiedler_converged,
                fiedler_degenerate: r.fiedler_degenerate,
            })
        }
    }
}
