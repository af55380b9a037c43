//! Distance to Robinson form, certified Robinson approximation and seriation.
//!
//! A symmetric matrix with entries in `[0, 1]` is Robinson when entries never
//! increase moving away from the diagonal along any row or column. This crate
//! measures how far a matrix is from that shape ([`gamma1`]), builds a
//! Robinson approximation with a provable l1 error ([`approximate_general`]),
//! and searches for row/column orderings that minimize the deviation
//! ([`seriate`]).
//!
//! Indices in the public API are 1-based.

pub mod approx;
pub mod counts;
pub mod error;
pub mod gamma;
pub mod graph;
pub mod layers;
pub mod mask;
pub mod matrix;
pub mod oracle;
pub mod permutation;
pub mod pipeline;
pub mod preprocess;
pub mod seriate;
mod sum;
pub mod synth;

pub use approx::{robinson_approx_binary, threshold_corollary, threshold_theorem, Threshold};
pub use counts::{corner_counts, CornerCounts};
pub use error::{Error, Result};
pub use gamma::{gamma1, gamma1_direct, gamma1_fast, Gamma1};
pub use graph::{unit_interval_approx, Graph};
pub use layers::{decompose, quantize, recombine, Layering};
pub use mask::BinaryMask;
pub use matrix::{apply_permutation, is_robinson, l1_distance, SymmetricMatrix};
pub use oracle::{best_robinson_binary, best_seriation, enumerate_robinson_binary, OracleResult};
pub use permutation::Permutation;
pub use pipeline::{
    approximate_binary, approximate_general, approximate_no_preprocess, certify, ApproxReport, PipelineOptions,
};
pub use preprocess::{preprocess, toggle, ToggleTrace};
pub use seriate::{fiedler_order, seriate, seriate_local, Method, SeriationConfig};
pub use synth::{add_noise, planted_instance, random_robinson, NoiseModel, PlantedInstance};
