//! Weighted undirected graphs, degree vectors, the normalized Laplacian and a
//! handful of deterministic generators.
//!
//! Graphs are stored densely. The interpolation machinery needs the full
//! eigendecomposition of the Laplacian anyway, so a sparse representation
//! would buy nothing for the sizes this crate targets (a few thousand nodes).

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GbfError, Result};

/// A weighted, undirected graph without self-loops.
///
/// The adjacency matrix is symmetric bit-for-bit: every constructor writes
/// `A[i][j]` and `A[j][i]` from the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: DMatrix<f64>,
    labels: Option<Vec<String>>,
    coords: Option<Vec<Vec<f64>>>,
}

/// Node degrees `d[i] = sum_k A[i][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVector(pub DVector<f64>);

impl DegreeVector {
    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    /// Indices of nodes with zero degree.
    pub fn isolated(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl Graph {
    /// Builds a graph on `n` nodes from 0-based weighted edges.
    ///
    /// Isolated nodes are accepted here and only rejected when the Laplacian
    /// is requested, so that a graph can still be inspected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(GbfError::InvalidParam("graph needs at least one node".into()));
        }
        let mut adjacency = DMatrix::zeros(n, n);
        for &(i, j, w) in edges {
            for idx in [i, j] {
                if idx >= n {
                    return Err(GbfError::IndexOutOfRange { index: idx, len: n });
                }
            }
            if i == j {
                return Err(GbfError::SelfLoop { node: i });
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(GbfError::NonPositiveWeight { i, j, weight: w });
            }
            if adjacency[(i, j)] != 0.0 {
                return Err(GbfError::DuplicateEdge { i, j });
            }
            adjacency[(i, j)] = w;
            adjacency[(j, i)] = w;
        }
        Ok(Self {
            adjacency,
            labels: None,
            coords: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(GbfError::DimensionMismatch {
                expected: self.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_coords(mut self, coords: Vec<Vec<f64>>) -> Result<Self> {
        if coords.len() != self.len() {
            return Err(GbfError::DimensionMismatch {
                expected: self.len(),
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|p| p.len() != 2 && p.len() != 3) {
            return Err(GbfError::InvalidParam(format!(
                "coordinates must be 2D or 3D, got {} components",
                bad.len()
            )));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.adjacency.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    /// Edges `(i, j, w)` with `i < j`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = self.adjacency[(i, j)];
                if w != 0.0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> DegreeVector {
        DegreeVector(DVector::from_iterator(
            self.len(),
            self.adjacency.row_iter().map(|r| r.sum()),
        ))
    }

    /// `L = I - D^{-1/2} A D^{-1/2}`.
    pub fn normalized_laplacian(&self) -> Result<DMatrix<f64>> {
        let degrees = self.degrees();
        if let Some(&node) = degrees.isolated().first() {
            return Err(GbfError::IsolatedNode { node });
        }
        let inv_sqrt: Vec<f64> = degrees.0.iter().map(|d| 1.0 / d.sqrt()).collect();
        let n = self.len();
        let mut lap = DMatrix::zeros(n, n);
        for i in 0..n {
            lap[(i, i)] = 1.0;
            for j in (i + 1)..n {
                let a = self.adjacency[(i, j)];
                if a != 0.0 {
                    let v = -a * inv_sqrt[i] * inv_sqrt[j];
                    lap[(i, j)] = v;
                    lap[(j, i)] = v;
                }
            }
        }
        Ok(lap)
    }

    /// Number of connected components (isolated nodes count as components).
    pub fn component_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for (w, s) in seen.iter_mut().enumerate() {
                    if !*s && self.adjacency[(v, w)] != 0.0 {
                        *s = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}

/// Generator families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Uniform points in the unit square, unit-weight edges between pairs at
    /// euclidean distance strictly below `radius`.
    RandomGeometric {
        n: usize,
        radius: f64,
        seed: u64,
    },
}

/// Output of [`generate_graph`]. `isolated` is non-empty when a random
/// geometric draw left nodes without neighbours; the caller decides whether
/// to redraw.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub isolated: Vec<usize>,
}

impl Generated {
    pub fn is_usable(&self) -> bool {
        self.isolated.is_empty()
    }
}

/// Builds a graph of the requested family.
///
/// Random geometric graphs draw their points from `ChaCha8Rng::seed_from_u64`
/// (rand_chacha), two `f64` samples in `[0, 1)` per node, x before y, so the
/// output is byte-for-byte reproducible for a fixed seed.
pub fn generate_graph(kind: &GraphKind) -> Result<Generated> {
    let graph = match *kind {
        GraphKind::Path { n } => {
            require(n >= 2, "path needs n >= 2")?;
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
            Graph::from_edges(n, &edges)?
        }
        GraphKind::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
            Graph::from_edges(n, &edges)?
        }
        GraphKind::Complete { n } => {
            require(n >= 2, "complete graph needs n >= 2")?;
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    edges.push((i, j, 1.0));
                }
            }
            Graph::from_edges(n, &edges)?
        }
        GraphKind::Grid { rows, cols } => {
            require(
                rows >= 1 && cols >= 1 && rows * cols >= 2,
                "grid needs at least two nodes",
            )?;
            let idx = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            let mut coords = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    coords.push(vec![c as f64, r as f64]);
                    if c + 1 < cols {
                        edges.push((idx(r, c), idx(r, c + 1), 1.0));
                    }
                    if r + 1 < rows {
                        edges.push((idx(r, c), idx(r + 1, c), 1.0));
                    }
                }
            }
            Graph::from_edges(rows * cols, &edges)?.with_coords(coords)?
        }
        GraphKind::RandomGeometric { n, radius, seed } => {
            require(n >= 2, "random geometric graph needs n >= 2")?;
            require(radius > 0.0 && radius.is_finite(), "radius must be positive")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<[f64; 2]> = (0..n)
                .map(|_| {
                    let x: f64 = rng.random();
                    let y: f64 = rng.random();
                    [x, y]
                })
                .collect();
            let r2 = radius * radius;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let dx = points[i][0] - points[j][0];
                    let dy = points[i][1] - points[j][1];
                    if dx * dx + dy * dy < r2 {
                        edges.push((i, j, 1.0));
                    }
                }
            }
            let coords = points.iter().map(|p| p.to_vec()).collect();
            Graph::from_edges(n, &edges)?.with_coords(coords)?
        }
    };
    let isolated = graph.degrees().isolated();
    Ok(Generated { graph, isolated })
}

/// Draws random geometric graphs with seeds `seed, seed + 1, ...` until one is
/// connected. Returns the graph and the seed that produced it.
pub fn connected_random_geometric(n: usize, radius: f64, seed: u64, max_attempts: usize) -> Result<(Graph, u64)> {
    for attempt in 0..max_attempts as u64 {
        let s = seed.wrapping_add(attempt);
        let g = generate_graph(&GraphKind::RandomGeometric { n, radius, seed: s })?;
        if g.is_usable() && g.graph.is_connected() {
            return Ok((g.graph, s));
        }
    }
    Err(GbfError::InvalidParam(format!(
        "no connected random geometric graph (n={n}, radius={radius}) within {max_attempts} draws"
    )))
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GbfError::InvalidParam(msg.to_string()))
    }
}
