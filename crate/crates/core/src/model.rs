//! Raw and normalized citation matrices.
//!
//! Entry `(i, j)` of every matrix in this crate is indexed *cited, citer*:
//! it counts (or weighs) the citations of node `i` made by node `j`. Column
//! `j` therefore holds everything node `j` cited.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Tolerance on the column sums of a normalized matrix.
pub const COLUMN_SUM_TOLERANCE: f64 = 1e-12;

/// Interned node labels. Ids are dense in `[0, N)` and follow first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeTable {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from labels in id order. Fails on duplicates or empty labels.
    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = Self::new();
        for label in labels {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::Input("node labels must be non-empty".into()));
            }
            if table.index.contains_key(&label) {
                return Err(Error::Input(format!("duplicate node label `{label}`")));
            }
            table.intern(&label);
        }
        Ok(table)
    }

    /// Returns the id of `label`, assigning the next id if it is new.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// One weighted citation record: `citer` cited `cited` `count` times.
///
/// The count is signed so that malformed input can be rejected with a
/// precise error rather than wrapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub citer: String,
    pub cited: String,
    pub count: i64,
}

impl Edge {
    pub fn new(citer: impl Into<String>, cited: impl Into<String>, count: i64) -> Self {
        Self { citer: citer.into(), cited: cited.into(), count }
    }
}

/// Integer citation counts with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCitationMatrix {
    n: usize,
    counts: Vec<u64>,
}

impl RawCitationMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, counts: vec![0; n * n] }
    }

    /// Builds a matrix from row-major counts (`counts[i * n + j]` = times `j` cited `i`).
    pub fn from_counts(n: usize, counts: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("citation matrix must have at least one node".into()));
        }
        if counts.len() != n * n {
            return Err(Error::Input(format!(
                "expected {} counts for {n} nodes, got {}",
                n * n,
                counts.len()
            )));
        }
        if let Some(i) = (0..n).find(|&i| counts[i * n + i] != 0) {
            return Err(Error::Input(format!("self-citation count on diagonal entry {i}")));
        }
        Ok(Self { n, counts })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of times `citer` cited `cited`.
    #[inline]
    pub fn count(&self, cited: usize, citer: usize) -> u64 {
        self.counts[cited * self.n + citer]
    }

    /// Total citations made by `citer`.
    pub fn column_sum(&self, citer: usize) -> u64 {
        (0..self.n).map(|i| self.count(i, citer)).sum()
    }

    /// Total citations received by `cited`.
    pub fn row_sum(&self, cited: usize) -> u64 {
        (0..self.n).map(|j| self.count(cited, j)).sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    fn add(&mut self, cited: usize, citer: usize, count: u64) -> Result<()> {
        let slot = &mut self.counts[cited * self.n + citer];
        *slot = slot
            .checked_add(count)
            .ok_or_else(|| Error::Input("citation count overflow".into()))?;
        Ok(())
    }
}

/// Output of [`build_raw`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    pub nodes: NodeTable,
    pub raw: RawCitationMatrix,
    /// Number of edge records dropped because citer and cited coincide.
    pub dropped_self_citations: u64,
}

/// Interns labels and accumulates counts into a raw citation matrix.
///
/// Repeated pairs add up. Self-citations are dropped and counted; their
/// label still becomes a node.
pub fn build_raw(edges: &[Edge]) -> Result<CitationGraph> {
    if edges.is_empty() {
        return Err(Error::Input("no graph: the edge list is empty".into()));
    }

    let mut nodes = NodeTable::new();
    let mut ids = Vec::with_capacity(edges.len());
    for (k, e) in edges.iter().enumerate() {
        if e.citer.is_empty() || e.cited.is_empty() {
            return Err(Error::Input(format!("edge {k}: labels must be non-empty")));
        }
        if e.count <= 0 {
            return Err(Error::Input(format!(
                "edge {k} ({} -> {}): count must be positive, got {}",
                e.citer, e.cited, e.count
            )));
        }
        let citer = nodes.intern(&e.citer);
        let cited = nodes.intern(&e.cited);
        ids.push((citer, cited, e.count as u64));
    }

    let mut raw = RawCitationMatrix::zeros(nodes.len());
    let mut dropped = 0;
    for (citer, cited, count) in ids {
        if citer == cited {
            dropped += 1;
        } else {
            raw.add(cited, citer, count)?;
        }
    }

    Ok(CitationGraph { nodes, raw, dropped_self_citations: dropped })
}

/// Column-normalized citation matrix: every column sums to one, or is all zero.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedCitationMatrix {
    weights: SquareMatrix,
    zero_columns: Vec<usize>,
}

/// Divides each nonzero column of `raw` by its sum; zero columns stay zero.
pub fn normalize(raw: &RawCitationMatrix) -> NormalizedCitationMatrix {
    let n = raw.dim();
    let mut weights = SquareMatrix::zeros(n);
    let mut zero_columns = Vec::new();
    for j in 0..n {
        let total = raw.column_sum(j);
        if total == 0 {
            zero_columns.push(j);
            continue;
        }
        let total = total as f64;
        for i in 0..n {
            let c = raw.count(i, j);
            if c != 0 {
                weights.set(i, j, c as f64 / total);
            }
        }
    }
    NormalizedCitationMatrix { weights, zero_columns }
}

impl NormalizedCitationMatrix {
    /// Wraps an already-normalized weight matrix after checking its invariants.
    pub fn from_weights(weights: SquareMatrix) -> Result<Self> {
        let n = weights.dim();
        if n == 0 {
            return Err(Error::Input("matrix must have at least one node".into()));
        }
        let mut zero_columns = Vec::new();
        for j in 0..n {
            if weights.get(j, j) != 0.0 {
                return Err(Error::Input(format!("diagonal entry {j} must be zero")));
            }
            for i in 0..n {
                let w = weights.get(i, j);
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::Input(format!("weight ({i},{j}) = {w} outside [0, 1]")));
                }
            }
            let sum = weights.column_sum(j);
            if sum == 0.0 {
                zero_columns.push(j);
            } else if (sum - 1.0).abs() > COLUMN_SUM_TOLERANCE {
                return Err(Error::Input(format!("column {j} sums to {sum}, expected 1 or 0")));
            }
        }
        Ok(Self { weights, zero_columns })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_weights(SquareMatrix::from_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.weights.dim()
    }

    /// Fraction of `citer`'s citations that refer to `cited`.
    #[inline]
    pub fn weight(&self, cited: usize, citer: usize) -> f64 {
        self.weights.get(cited, citer)
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        self.weights.column_sum(j)
    }

    /// Columns whose raw sum was zero (nodes that cite no one), ascending.
    pub fn zero_columns(&self) -> &[usize] {
        &self.zero_columns
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        self.zero_columns.binary_search(&j).is_ok()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.weights
    }

    pub fn has_positive_weight(&self) -> bool {
        self.zero_columns.len() < self.dim()
    }

    /// Divides each nonzero column by its floating-point sum again.
    pub fn renormalize(&self) -> Self {
        let n = self.dim();
        let mut weights = self.weights.clone();
        for j in 0..n {
            let sum = self.column_sum(j);
            if sum > 0.0 {
                for i in 0..n {
                    weights.set(i, j, self.weights.get(i, j) / sum);
                }
            }
        }
        Self { weights, zero_columns: self.zero_columns.clone() }
    }

    pub(crate) fn from_parts(weights: SquareMatrix, zero_columns: Vec<usize>) -> Self {
        Self { weights, zero_columns }
    }
}
