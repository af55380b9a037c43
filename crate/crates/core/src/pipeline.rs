//! End-to-end Robinson approximation with certified bounds.
//!
//! General matrices are split into binary layers; each layer gets a unit
//! diagonal, is preprocessed (inverted cells toggled) and then rounded by the
//! corner-count threshold rule. The rounded layers are recombined with the
//! original level weights, so the result is a convex combination of Robinson
//! matrices and hence Robinson.
//!
//! Guarantees checked on every run:
//!
//! * with preprocessing: `||A - R||_1 <= 26 * gamma1(A)^(1/3)`;
//! * without: `||A - R||_1 <= 2^(9/2) * gamma1(A)^(1/4) + 5/n`;
//! * always: `||A - R||_1 >= gamma1(A) / 4` for any Robinson `R`.

use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{approx_from_counts, threshold_corollary, threshold_theorem, Threshold};
use crate::counts::corner_counts;
use crate::error::{Error, Result};
use crate::gamma::{gamma1, Gamma1};
use crate::layers::{decompose, recombine, Layering};
use crate::mask::BinaryMask;
use crate::matrix::{is_robinson, l1_distance, SymmetricMatrix, REAL_TOLERANCE};
use crate::preprocess::{preprocess, ToggleTrace};
use crate::sum::Neumaier;

/// Constant of the preprocessing guarantee.
pub const MAIN_BOUND_CONSTANT: f64 = 26.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Toggle inverted cells before rounding (threshold `4^(-2/3) eps^(2/3) n^2`);
    /// otherwise round directly with `n^2 sqrt(4 eps)`.
    pub preprocess: bool,
    /// Overwrite the output diagonal with the input diagonal.
    pub restore_diagonal: bool,
    /// Set every layer's diagonal to 1 before processing.
    pub unit_diagonal: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self { preprocess: true, restore_diagonal: true, unit_diagonal: true }
    }
}

impl PipelineOptions {
    /// Output exactly as the bare algorithms produce it: no diagonal restoration.
    pub fn paper_literal() -> Self {
        Self { restore_diagonal: false, ..Self::default() }
    }

    pub fn no_preprocess() -> Self {
        Self { preprocess: false, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerReport {
    pub level: f64,
    pub weight: f64,
    pub gamma1: Gamma1,
    /// `None` when the layer is already Robinson and was passed through.
    pub threshold: Option<Threshold>,
    pub toggles: usize,
}

/// Certificate for one approximation run. Field order is the JSON order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxReport {
    pub n: usize,
    pub m_layers: usize,
    pub gamma1: f64,
    pub l1_dist: f64,
    /// `26 * gamma1^(1/3)`.
    pub upper_bound: f64,
    /// `gamma1 / 4`, a lower bound on the distance to any Robinson matrix.
    pub lower_bound: f64,
    pub within_upper_bound: bool,
    /// Bound guaranteed for the method actually used.
    pub guarantee: f64,
    pub within_guarantee: bool,
    pub toggle_count: usize,
    pub per_layer: Vec<LayerReport>,
    pub preprocess_used: bool,
    pub diagonal_restored: bool,
}

/// Intermediate matrices of the binary path, exposed for bound checking.
#[derive(Clone, Debug)]
pub struct BinaryStages {
    /// Input after the optional unit-diagonal fix.
    pub input: BinaryMask,
    /// `n^3 * gamma1(input)`.
    pub violations: u64,
    pub threshold: Option<Threshold>,
    /// Input after preprocessing (equal to `input` when it was skipped).
    pub preprocessed: BinaryMask,
    pub trace: Option<ToggleTrace>,
    /// Rounded output, before any diagonal restoration.
    pub rounded: BinaryMask,
}

impl BinaryStages {
    pub fn gamma1(&self) -> Gamma1 {
        Gamma1::new(self.violations as f64 / (self.input.n() as f64).powi(3))
    }
}

/// Runs the binary path up to (not including) diagonal restoration.
///
/// Already-Robinson layers pass through untouched (original diagonal kept);
/// the threshold formulas are undefined at `gamma1 = 0`.
pub fn binary_stages(a: &BinaryMask, opts: PipelineOptions) -> BinaryStages {
    let n = a.n();
    let input = if opts.unit_diagonal { a.with_diagonal(&vec![true; n]) } else { a.clone() };
    let violations = input.violation_count();
    if violations == 0 {
        return BinaryStages {
            preprocessed: input.clone(),
            rounded: a.clone(),
            input,
            violations,
            threshold: None,
            trace: None,
        };
    }
    let eps = Gamma1::new(violations as f64 / (n as f64).powi(3));
    let (threshold, preprocessed, trace) = if opts.preprocess {
        let t = threshold_theorem(eps, n).expect("eps > 0");
        let (pre, trace) = preprocess(&input, t);
        (t, pre, Some(trace))
    } else {
        (threshold_corollary(eps, n).expect("eps > 0"), input.clone(), None)
    };
    let rounded = approx_from_counts(&corner_counts(&preprocessed), threshold);
    BinaryStages { input, violations, threshold: Some(threshold), preprocessed, trace, rounded }
}

pub fn approximate_binary(a: &BinaryMask) -> (BinaryMask, ApproxReport) {
    approximate_binary_with(a, PipelineOptions::default())
}

pub fn approximate_binary_with(a: &BinaryMask, opts: PipelineOptions) -> (BinaryMask, ApproxReport) {
    let n = a.n();
    let violations = a.violation_count();
    let gamma = violations as f64 / (n as f64).powi(3);
    if violations == 0 {
        let report = assemble(n, gamma, 0.0, opts, Vec::new(), usize::from(a.count_ones() > 0));
        return (a.clone(), report);
    }
    let stages = binary_stages(a, opts);
    let r = if opts.restore_diagonal { stages.rounded.with_diagonal(&a.diagonal()) } else { stages.rounded.clone() };
    let dist = a.hamming(&r).expect("same size") as f64 / (n * n) as f64;
    let layer = LayerReport {
        level: 1.0,
        weight: 1.0,
        gamma1: stages.gamma1(),
        threshold: stages.threshold,
        toggles: stages.trace.as_ref().map_or(0, ToggleTrace::len),
    };
    (r, assemble(n, gamma, dist, opts, vec![layer], 1))
}

pub fn approximate_general(a: &SymmetricMatrix) -> (SymmetricMatrix, ApproxReport) {
    approximate_general_with(a, PipelineOptions::default())
}

/// Layered approximation without preprocessing, thresholds `n^2 sqrt(4 eps_k)`.
pub fn approximate_no_preprocess(a: &SymmetricMatrix) -> (SymmetricMatrix, ApproxReport) {
    approximate_general_with(a, PipelineOptions::no_preprocess())
}

pub fn approximate_general_with(a: &SymmetricMatrix, opts: PipelineOptions) -> (SymmetricMatrix, ApproxReport) {
    let n = a.n();
    let layering = decompose(a);
    let m = layering.len();
    let weights = layering.weights();
    let stages: Vec<BinaryStages> = layering.layers().par_iter().map(|l| binary_stages(l, opts)).collect();

    // gamma1 distributes over the layers.
    let mut acc = Neumaier::default();
    for (w, s) in weights.iter().zip(&stages) {
        acc.add(w * s.gamma1().value());
    }
    let gamma = acc.total();
    #[cfg(debug_assertions)]
    if n <= 60 {
        let direct = crate::gamma::gamma1_direct(a).value();
        debug_assert!((gamma - direct).abs() <= 1e-12, "layered gamma1 {gamma} vs direct {direct}");
    }

    if gamma == 0.0 {
        return (a.clone(), assemble(n, 0.0, 0.0, opts, Vec::new(), m));
    }

    let per_layer: Vec<LayerReport> = layering
        .levels()
        .iter()
        .zip(&weights)
        .zip(&stages)
        .map(|((&level, &weight), s)| LayerReport {
            level,
            weight,
            gamma1: s.gamma1(),
            threshold: s.threshold,
            toggles: s.trace.as_ref().map_or(0, ToggleTrace::len),
        })
        .collect();

    let rounded: Vec<BinaryMask> = stages.into_iter().map(|s| s.rounded).collect();
    let combined = Layering::new(n, layering.levels().to_vec(), rounded).expect("levels come from decompose");
    let mut r = recombine(&combined);
    if opts.restore_diagonal {
        r = r.with_diagonal(&a.diagonal());
    }
    let dist = l1_distance(a, &r).expect("same size");
    (r, assemble(n, gamma, dist, opts, per_layer, m))
}

fn guarantee(n: usize, gamma: f64, preprocess: bool) -> f64 {
    if gamma == 0.0 {
        0.0
    } else if preprocess {
        MAIN_BOUND_CONSTANT * gamma.cbrt()
    } else {
        2f64.powf(4.5) * gamma.powf(0.25) + 5.0 / n as f64
    }
}

fn assemble(
    n: usize,
    gamma: f64,
    dist: f64,
    opts: PipelineOptions,
    per_layer: Vec<LayerReport>,
    m_layers: usize,
) -> ApproxReport {
    let upper = MAIN_BOUND_CONSTANT * gamma.cbrt();
    let g = guarantee(n, gamma, opts.preprocess);
    ApproxReport {
        n,
        m_layers,
        gamma1: gamma,
        l1_dist: dist,
        upper_bound: upper,
        lower_bound: gamma / 4.0,
        within_upper_bound: dist <= upper,
        guarantee: g,
        within_guarantee: dist <= g,
        toggle_count: per_layer.iter().map(|l| l.toggles).sum(),
        per_layer,
        preprocess_used: opts.preprocess && gamma > 0.0,
        diagonal_restored: opts.restore_diagonal && gamma > 0.0,
    }
}

/// Bounds report for an arbitrary Robinson candidate `r`.
pub fn certify(a: &SymmetricMatrix, r: &SymmetricMatrix) -> Result<ApproxReport> {
    if a.n() != r.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: r.n() });
    }
    let tol = if r.is_binary() { 0.0 } else { REAL_TOLERANCE };
    if !is_robinson(r, tol) {
        return Err(Error::NotRobinson);
    }
    let gamma = gamma1(a).value();
    let dist = l1_distance(a, r)?;
    let m = crate::layers::distinct_levels(a).len();
    let opts = PipelineOptions { preprocess: true, restore_diagonal: false, unit_diagonal: false };
    let mut report = assemble(a.n(), gamma, dist, opts, Vec::new(), m);
    report.preprocess_used = false;
    Ok(report)
}
