//! JSON report types. Field order is the serialized order.

use robinson_core::{ApproxReport, Permutation};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunReport<'a, R> {
    pub command: &'static str,
    /// Arguments after the program name, as given.
    pub args: Vec<String>,
    pub input: Option<String>,
    pub n: usize,
    pub result: &'a R,
    pub runtime_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct GraphApproxResult {
    pub edit_distance: usize,
    pub edges_in: usize,
    pub edges_out: usize,
    pub approx: ApproxReport,
}

#[derive(Debug, Serialize)]
pub struct PlantedMeta {
    pub n: usize,
    pub levels: usize,
    pub noise_level: f64,
    pub seed: u64,
    pub truth_perm: Permutation,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
