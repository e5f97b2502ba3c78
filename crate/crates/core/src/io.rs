//! Text formats: edge lists, coordinates, signals and the CSV exports.
//!
//! Floats are written with Rust's shortest round-trip formatting, so the
//! output is deterministic and re-reads to the same bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{GbfError, Result};
use crate::graph::Graph;
use crate::interp::Interpolant;
use crate::quadrature::QuadratureRule;
use crate::spacefreq::FrequencySet;
use crate::spectral::{Signal, Spectrum};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(GbfError::Parse {
        line,
        message: message.into(),
    })
}

/// Content lines with their 1-based line numbers; blank lines and lines
/// starting with `#` are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(line: usize, tok: &str) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => parse_err(line, format!("expected a finite number, found '{tok}'")),
    }
}

/// Parses `n=<count>` followed by `i j w` lines (0-based indices).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = match lines.next() {
        Some(h) => h,
        None => return parse_err(1, "missing header 'n=<count>'"),
    };
    let n = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| GbfError::Parse {
            line: hl,
            message: format!("expected header 'n=<count>', found '{header}'"),
        })?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return parse_err(ln, format!("expected 'i j w', found {} fields", toks.len()));
        }
        let i = toks[0].parse::<usize>().map_err(|_| GbfError::Parse {
            line: ln,
            message: format!("bad node index '{}'", toks[0]),
        })?;
        let j = toks[1].parse::<usize>().map_err(|_| GbfError::Parse {
            line: ln,
            message: format!("bad node index '{}'", toks[1]),
        })?;
        let w = parse_f64(ln, toks[2])?;
        edges.push((i, j, w, ln));
    }
    let plain: Vec<_> = edges.iter().map(|&(i, j, w, _)| (i, j, w)).collect();
    Graph::from_edges(n, &plain).map_err(|e| {
        // Point validation failures at the offending line where possible.
        let line = match &e {
            GbfError::NonPositiveWeight { i, j, .. } | GbfError::DuplicateEdge { i, j } => edges
                .iter()
                .rfind(|&&(a, b, _, _)| (a, b) == (*i, *j) || (a, b) == (*j, *i))
                .map(|e| e.3),
            GbfError::SelfLoop { node } => edges.iter().find(|e| e.0 == *node && e.1 == *node).map(|e| e.3),
            GbfError::IndexOutOfRange { index, .. } => {
                edges.iter().find(|e| e.0 == *index || e.1 == *index).map(|e| e.3)
            }
            _ => None,
        };
        match line {
            Some(line) => GbfError::Parse {
                line,
                message: e.to_string(),
            },
            None => e,
        }
    })
}

pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!("n={}\n", graph.len());
    for (i, j, w) in graph.edges() {
        let _ = writeln!(out, "{i} {j} {w}");
    }
    out
}

/// Parses `x y [z]` lines, one per node.
pub fn parse_coordinates(text: &str) -> Result<Vec<Vec<f64>>> {
    content_lines(text)
        .map(|(ln, l)| {
            let vals = l
                .split_whitespace()
                .map(|t| parse_f64(ln, t))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() == 2 || vals.len() == 3 {
                Ok(vals)
            } else {
                parse_err(ln, format!("expected 2 or 3 coordinates, found {}", vals.len()))
            }
        })
        .collect()
}

/// One value per line.
pub fn parse_signal(text: &str) -> Result<Signal> {
    let vals = content_lines(text)
        .map(|(ln, l)| parse_f64(ln, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Signal::from_vec(vals))
}

pub fn write_signal(x: &Signal) -> String {
    x.0.iter().map(|v| format!("{v}\n")).collect()
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn read_signal_file(path: &Path) -> Result<Signal> {
    parse_signal(&fs::read_to_string(path)?)
}

/// `index,eigenvalue` rows, followed by `u_1..u_n` columns when
/// `with_vectors` is set.
pub fn spectrum_csv(spectrum: &Spectrum, with_vectors: bool) -> String {
    let n = spectrum.len();
    let mut out = String::from("index,eigenvalue");
    if with_vectors {
        for v in 0..n {
            let _ = write!(out, ",u_node{v}");
        }
    }
    out.push('\n');
    for (k, l) in spectrum.eigenvalues().iter().enumerate() {
        let _ = write!(out, "{},{l}", k + 1);
        if with_vectors {
            for v in 0..n {
                let _ = write!(out, ",{}", spectrum.fourier()[(v, k)]);
            }
        }
        out.push('\n');
    }
    out
}

pub fn interpolant_csv(it: &Interpolant) -> String {
    let mask = it.sampling.mask();
    let mut out = String::from("node_index,value,is_sample\n");
    for (i, v) in it.signal.0.iter().enumerate() {
        let _ = writeln!(out, "{i},{v},{}", mask[i]);
    }
    out
}

pub fn interpolant_diagnostics_json(it: &Interpolant) -> serde_json::Value {
    serde_json::json!({
        "condition_estimate": it.diagnostics.condition_estimate,
        "residual_max": it.diagnostics.residual_max,
        "gbf_descriptor": it.gbf,
        "N": it.sampling.len(),
    })
}

pub fn quadrature_csv(rule: &QuadratureRule) -> String {
    let mut out = String::from("node_index,weight\n");
    for (&j, w) in rule.sampling.indices().iter().zip(rule.weights.iter()) {
        let _ = writeln!(out, "{j},{w}");
    }
    out
}

pub fn quadrature_diagnostics_json(rule: &QuadratureRule) -> serde_json::Value {
    serde_json::json!({
        "exactness_residual": rule.exactness_residual,
        "gbf_descriptor": rule.gbf,
    })
}

/// Rows are nodes, columns the selected frequencies (1-based in the header).
pub fn frame_coefficients_csv(coeffs: &DMatrix<f64>, freqs: &FrequencySet) -> String {
    let header: Vec<String> = freqs.indices().iter().map(|k| format!("k{}", k + 1)).collect();
    let mut out = format!("node_index,{}\n", header.join(","));
    for i in 0..coeffs.nrows() {
        let _ = write!(out, "{i}");
        for j in 0..coeffs.ncols() {
            let _ = write!(out, ",{}", coeffs[(i, j)]);
        }
        out.push('\n');
    }
    out
}
