//! File formats: CSV matrices, edge lists and permutation lines.

use std::fs;
use std::path::Path;

use robinson_core::{Graph, Permutation, SymmetricMatrix};

use crate::error::CliError;

/// Symmetry tolerance when reading matrices.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix, CliError> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Input(format!("line {}: `{cell}` is not a finite number", line_no + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(SymmetricMatrix::new(&rows, SYMMETRY_TOLERANCE)?)
}

pub fn read_matrix(path: &Path) -> Result<SymmetricMatrix, CliError> {
    parse_matrix(&read(path)?)
}

/// One row per line; shortest decimal form that reads back to the same bits.
pub fn format_matrix(a: &SymmetricMatrix) -> String {
    let mut out = String::new();
    for row in a.to_rows() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// First line `n <count>`, then one `u v` edge per line.
pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| CliError::Input("empty graph file".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse::<usize>().map_err(|_| CliError::Input(format!("bad vertex count `{count}`")))?,
        _ => return Err(CliError::Input(format!("first line must be `n <count>`, got `{header}`"))),
    };
    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let ids: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| CliError::Input(format!("line {}: bad vertex `{t}`", line_no + 1))))
            .collect::<Result<_, _>>()?;
        match ids.as_slice() {
            [u, v] => edges.push((*u, *v)),
            _ => return Err(CliError::Input(format!("line {}: expected `u v`", line_no + 1))),
        }
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn format_permutation(p: &Permutation) -> String {
    format!("{p}\n")
}
