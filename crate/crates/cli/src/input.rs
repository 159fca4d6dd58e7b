//! Resolving command-line tokens and files into library values.

use std::fs;
use std::path::Path;

use edfun_core::{Crg, PValue, SimpleGraph};

use crate::args::{CrgInput, ForbidInput, GraphInput, Points};
use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn crg(input: &CrgInput) -> Result<Crg, CliError> {
    match (&input.crg, &input.crg_file) {
        (Some(spec), _) => Ok(Crg::from_spec(spec)?),
        (None, Some(path)) => Ok(read(path)?.parse()?),
        (None, None) => Err(CliError::Usage("one of --crg or --crg-file is required".into())),
    }
}

pub fn graph(input: &GraphInput) -> Result<SimpleGraph, CliError> {
    match (&input.graph, &input.graph_file) {
        (Some(name), _) => Ok(SimpleGraph::named(name.trim())?),
        (None, Some(path)) => Ok(read(path)?.parse()?),
        (None, None) => Err(CliError::Usage("one of --graph or --graph-file is required".into())),
    }
}

/// Splits a file holding several graphs at each `graph` header.
pub fn split_graphs(text: &str) -> Result<Vec<SimpleGraph>, CliError> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with("graph") || blocks.is_empty() {
            blocks.push(String::new());
        }
        let block = blocks.last_mut().expect("pushed above");
        block.push_str(line);
        block.push('\n');
    }
    let graphs = blocks
        .iter()
        .filter(|b| !b.trim().is_empty())
        .map(|b| b.parse::<SimpleGraph>())
        .collect::<Result<Vec<_>, _>>()?;
    if graphs.is_empty() {
        return Err(CliError::Usage("forbidden-graph file holds no graph".into()));
    }
    Ok(graphs)
}

pub fn forbidden(input: &ForbidInput) -> Result<Vec<SimpleGraph>, CliError> {
    match (&input.forbid, &input.forbid_file) {
        (Some(list), _) => {
            let names: Vec<&str> = list.split(',').map(str::trim).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(CliError::Usage(format!("empty name in forbidden list `{list}`")));
            }
            Ok(names.into_iter().map(SimpleGraph::named).collect::<Result<Vec<_>, _>>()?)
        }
        (None, Some(path)) => split_graphs(&read(path)?),
        (None, None) => Err(CliError::Usage("one of --forbid or --forbid-file is required".into())),
    }
}

/// A density, with a note on stderr when it had to be moved off 0 or 1.
pub fn density(p: f64, notes: &mut Vec<String>) -> Result<PValue, CliError> {
    let value = PValue::new(p)?;
    if PValue::needs_clamp(p) {
        notes.push(format!("warning: p = {p} clamped to {}", value.get()));
    }
    Ok(value)
}

/// The requested densities: one value, or `i/(n+1)` for `i = 1..=n`.
pub fn densities(points: &Points, notes: &mut Vec<String>) -> Result<Vec<PValue>, CliError> {
    match (points.p, points.grid) {
        (Some(p), _) => Ok(vec![density(p, notes)?]),
        (None, Some(0)) => Err(CliError::Usage("--grid must be positive".into())),
        (None, Some(n)) => (1..=n).map(|i| density(i as f64 / (n + 1) as f64, notes)).collect(),
        (None, None) => Err(CliError::Usage("one of --p or --grid is required".into())),
    }
}
