//! Dominant eigenpair and score vectors of a normalized citation matrix.
//!
//! A score vector `x` satisfies `C x = λ x` with `x ≥ 0`. When every column
//! of `C` sums to one, summing the equation over rows gives `λ = 1`, so the
//! scores are the fixed point `C x = x`, scaled so that the largest score is
//! exactly 1.
//!
//! The eigenvector is found by iterating `M = (I + C) / 2`. `M` shares the
//! eigenvectors of `C`, and its positive diagonal makes every irreducible
//! block primitive, so the iteration converges on periodic matrices (a
//! simple cycle, say) where plain power iteration oscillates forever.
//!
//! For reducible matrices the condensation of [`crate::structure`] decides
//! where scores can be positive: only on recurrent classes (condensation
//! sinks with internal weight). Every other node is forced to zero.

use crate::diagnostics::Diagnostic;
use crate::error::{Error, Result};
use crate::matrix::{max_abs, SquareMatrix};
use crate::model::NormalizedCitationMatrix;
use crate::structure::{Classification, StructureReport};

/// Allowed distance of the dominant eigenvalue from 1 when all columns sum to 1.
pub const LAMBDA_TOLERANCE: f64 = 1e-10;
/// Tolerance for the block checks of [`verify_reducible`].
pub const BLOCK_TOLERANCE: f64 = 1e-10;
/// Allowed distance of the left eigenvector of a recurrent block from all-ones.
pub const OMEGA_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Target for `‖Cx − λx‖∞ / ‖x‖∞`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tolerance: 1e-12, max_iterations: 100_000 }
    }
}

impl SolverOptions {
    pub fn new(tolerance: f64, max_iterations: usize) -> Result<Self> {
        let opts = Self { tolerance, max_iterations };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Input(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(Error::Input("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Converged output of the shifted iteration. `vector` has max component 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub vector: Vec<f64>,
    /// `‖Cx − λx‖∞` at the returned vector.
    pub residual: f64,
    /// Number of applications of the shifted operator.
    pub iterations: usize,
}

/// Dominant non-negative eigenpair of `c`, starting from the uniform vector.
pub fn dominant_eigenpair(c: &NormalizedCitationMatrix, opts: &SolverOptions) -> Result<Eigenpair> {
    let n = c.dim();
    if n == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    opts.validate()?;
    shifted_power_iteration(c.matrix(), vec![1.0 / n as f64; n], opts)
}

/// As [`dominant_eigenpair`], from a caller-supplied non-negative start vector.
pub fn dominant_eigenpair_from(
    c: &NormalizedCitationMatrix,
    start: &[f64],
    opts: &SolverOptions,
) -> Result<Eigenpair> {
    if c.dim() == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    if start.len() != c.dim() {
        return Err(Error::Input(format!(
            "start vector has length {}, matrix has dimension {}",
            start.len(),
            c.dim()
        )));
    }
    if start.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || start.iter().all(|&v| v == 0.0) {
        return Err(Error::Input("start vector must be non-negative and nonzero".into()));
    }
    opts.validate()?;
    shifted_power_iteration(c.matrix(), start.to_vec(), opts)
}

fn scale_to_unit_max(x: &mut [f64]) {
    let m = max_abs(x);
    if m > 0.0 {
        x.iter_mut().for_each(|v| *v /= m);
    }
}

/// Iterates `x ← (x + A x) / 2`, renormalized to max 1, until the residual of
/// `A x = λ x` is within tolerance. `λ` is the ratio `Σ(Ax) / Σx`.
pub(crate) fn shifted_power_iteration(
    a: &SquareMatrix,
    mut x: Vec<f64>,
    opts: &SolverOptions,
) -> Result<Eigenpair> {
    let n = a.dim();
    scale_to_unit_max(&mut x);
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iteration in 0..=opts.max_iterations {
        a.mul_vec_into(&x, &mut ax);
        let lambda = ax.iter().sum::<f64>() / x.iter().sum::<f64>();
        residual = ax
            .iter()
            .zip(&x)
            .fold(0.0_f64, |r, (y, v)| r.max((y - lambda * v).abs()));
        if residual <= opts.tolerance {
            return Ok(Eigenpair { lambda, vector: x, residual, iterations: iteration });
        }
        if iteration == opts.max_iterations {
            break;
        }
        for (v, y) in x.iter_mut().zip(&ax) {
            *v = 0.5 * (*v + y);
        }
        scale_to_unit_max(&mut x);
    }

    Err(Error::Convergence { iterations: opts.max_iterations, residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Inside a recurrent class: strictly positive score.
    Positive,
    /// In a transient class: score forced to zero.
    ForcedZero,
    /// Cites no one and receives nothing it can pass on: score zero.
    Dead,
}

impl Support {
    pub fn as_str(&self) -> &'static str {
        match self {
            Support::Positive => "positive",
            Support::ForcedZero => "forced_zero",
            Support::Dead => "dead",
        }
    }
}

/// Perron vector of one recurrent class, max-normalized within the class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassScores {
    /// Component index in the structure report.
    pub component: usize,
    /// Node ids, ascending.
    pub nodes: Vec<usize>,
    /// Scores aligned with `nodes`.
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreResult {
    pub lambda: f64,
    /// Full score vector; `None` when the eigenvector is not unique.
    pub scores: Option<Vec<f64>>,
    pub support: Vec<Support>,
    pub residual: f64,
    pub iterations: usize,
    /// One entry per recurrent class.
    pub classes: Vec<ClassScores>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ScoreResult {
    pub fn is_unique(&self) -> bool {
        self.scores.is_some()
    }
}

/// Outcome of [`check_column_sum_lambda`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCheck {
    /// All columns are nonzero, so `λ = 1` must hold.
    pub armed: bool,
    pub zero_columns: Vec<usize>,
}

/// Whether the column-sum argument for `λ = 1` applies to `c`.
pub fn check_column_sum_lambda(c: &NormalizedCitationMatrix) -> LambdaCheck {
    LambdaCheck { armed: c.zero_columns().is_empty(), zero_columns: c.zero_columns().to_vec() }
}

fn residual_of(c: &SquareMatrix, x: &[f64], lambda: f64) -> f64 {
    let cx = c.mul_vec(x);
    cx.iter().zip(x).fold(0.0_f64, |r, (y, v)| r.max((y - lambda * v).abs()))
}

/// Scores for every node, following the structure in `report`.
///
/// With exactly one recurrent class the result is unique: the class gets its
/// Perron vector, every other node gets 0, and the vector is scaled to max 1.
/// With several recurrent classes each gets its own Perron vector and no
/// merged vector is produced.
pub fn solve_scores(
    c: &NormalizedCitationMatrix,
    report: &StructureReport,
    opts: &SolverOptions,
) -> Result<ScoreResult> {
    opts.validate()?;
    let n = c.dim();
    if report.n() != n {
        return Err(Error::Input(format!(
            "structure report covers {} nodes, matrix has {n}",
            report.n()
        )));
    }
    if report.recurrent_classes.is_empty() {
        let why = if report.classification == Classification::Degenerate {
            "the matrix has no positive weight"
        } else {
            "every condensation sink is a node that cites no one"
        };
        return Err(Error::NoRankableStructure(why.into()));
    }

    let lambda_check = check_column_sum_lambda(c);
    let partition = &report.partition;

    let mut support = vec![Support::ForcedZero; n];
    for &p in &report.dead_sinks {
        for &v in &partition.components[p] {
            support[v] = Support::Dead;
        }
    }

    let mut classes = Vec::with_capacity(report.recurrent_classes.len());
    let mut lambda = 0.0_f64;
    let mut residual = 0.0_f64;
    let mut iterations = 0;
    for &p in &report.recurrent_classes {
        let nodes = partition.components[p].clone();
        let block = c.matrix().principal_submatrix(&nodes);
        let k = nodes.len();
        let pair = shifted_power_iteration(&block, vec![1.0 / k as f64; k], opts)?;

        // A recurrent class keeps all its citations inside, so its block is
        // column-stochastic and its Perron root is 1.
        if (pair.lambda - 1.0).abs() > LAMBDA_TOLERANCE {
            return Err(Error::InternalConsistency(format!(
                "recurrent class {p} has dominant eigenvalue {} instead of 1",
                pair.lambda
            )));
        }
        if let Some(min) = pair.vector.iter().copied().reduce(f64::min).filter(|&m| m <= 0.0) {
            return Err(Error::InternalConsistency(format!(
                "Perron vector of recurrent class {p} has non-positive component {min}"
            )));
        }
        for &v in &nodes {
            support[v] = Support::Positive;
        }
        lambda = lambda.max(pair.lambda);
        residual = residual.max(pair.residual);
        iterations += pair.iterations;
        classes.push(ClassScores { component: p, nodes, scores: pair.vector });
    }

    if lambda_check.armed && (lambda - 1.0).abs() > LAMBDA_TOLERANCE {
        return Err(Error::InternalConsistency(format!(
            "all columns sum to 1 but lambda = {lambda}"
        )));
    }

    let scores = if classes.len() == 1 {
        let mut x = vec![0.0; n];
        for (&v, &s) in classes[0].nodes.iter().zip(&classes[0].scores) {
            x[v] = s;
        }
        // fresh product over the whole matrix
        residual = residual_of(c.matrix(), &x, lambda);
        if residual > opts.tolerance {
            return Err(Error::InternalConsistency(format!(
                "embedded score vector has residual {residual:e} above tolerance {:e}",
                opts.tolerance
            )));
        }
        Some(x)
    } else {
        None
    };

    let mut diagnostics = Vec::new();
    if !lambda_check.armed {
        diagnostics.push(Diagnostic::ZeroColumns { nodes: lambda_check.zero_columns.clone() });
        let m = c.matrix();
        let isolated: Vec<usize> = lambda_check
            .zero_columns
            .iter()
            .copied()
            .filter(|&i| m.row(i).iter().all(|&w| w == 0.0))
            .collect();
        if !isolated.is_empty() {
            diagnostics.push(Diagnostic::IsolatedNodes { nodes: isolated });
        }
    }
    if scores.is_none() {
        diagnostics.push(Diagnostic::NonUnique { classes: classes.len() });
    } else {
        let forced: Vec<usize> = (0..n).filter(|&v| support[v] == Support::ForcedZero).collect();
        if !forced.is_empty() {
            diagnostics.push(Diagnostic::ReducibleCaveat { nodes: forced });
        }
    }

    Ok(ScoreResult { lambda, scores, support, residual, iterations, classes, diagnostics })
}

/// Block decomposition of a reducible matrix with one recurrent class,
/// together with the checks that the unique score vector is consistent with it.
///
/// After applying the block permutation, the matrix reads `[[A, 0], [B, D]]`
/// with `A` on the transient nodes and `D` on the recurrent class, and the
/// score vector splits as `x = (y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducibleDecomposition {
    /// Node ids in block order.
    pub transient_nodes: Vec<usize>,
    pub recurrent_nodes: Vec<usize>,
    pub transient_block: SquareMatrix,
    /// Rows: recurrent nodes; columns: transient nodes.
    pub coupling_block: Vec<Vec<f64>>,
    pub recurrent_block: SquareMatrix,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    /// Left Perron vector of `D`, max-normalized.
    pub omega: Vec<f64>,
    /// `ωᵀ B y`.
    pub solvability: f64,
    /// `‖B y + D z − z‖∞`.
    pub block_residual: f64,
}

/// Extracts `A`, `B`, `D` and checks `A y = y`, `B y + D z = z` and `ωᵀ B y = 0`.
///
/// Fails with [`Error::InternalConsistency`] when any check is out of
/// tolerance; that means the solver or the report is wrong, not the input.
pub fn verify_reducible(
    c: &NormalizedCitationMatrix,
    report: &StructureReport,
    result: &ScoreResult,
) -> Result<ReducibleDecomposition> {
    if report.classification != Classification::ChainedReducible || report.recurrent_classes.len() != 1 {
        return Err(Error::Input(
            "verify_reducible needs a chained-reducible matrix with one recurrent class".into(),
        ));
    }
    let x = result
        .scores
        .as_ref()
        .ok_or_else(|| Error::Input("result carries no unique score vector".into()))?;
    let n = c.dim();
    if x.len() != n || report.n() != n {
        return Err(Error::Input("matrix, report and result disagree on dimension".into()));
    }

    let order: Vec<usize> = report.block_permutation.inverse().as_slice().to_vec();
    let recurrent: &[usize] = &report.partition.components[report.recurrent_classes[0]];
    let split = n - recurrent.len();
    let (transient_nodes, recurrent_nodes) = (order[..split].to_vec(), order[split..].to_vec());
    let m = c.matrix();

    let upper_right = m.block(&transient_nodes, &recurrent_nodes);
    if upper_right.iter().flatten().any(|&w| w != 0.0) {
        return Err(Error::InternalConsistency(
            "block permutation leaves weight in the top-right block".into(),
        ));
    }

    let a = m.principal_submatrix(&transient_nodes);
    let b = m.block(&recurrent_nodes, &transient_nodes);
    let d = m.principal_submatrix(&recurrent_nodes);
    // Without dead sinks every transient class drains into the single recurrent
    // class, so the coupling block cannot vanish.
    if report.dead_sinks.is_empty() && b.iter().flatten().all(|&w| w == 0.0) {
        return Err(Error::InternalConsistency(
            "coupling block is zero under a chained-reducible classification".into(),
        ));
    }

    let y: Vec<f64> = transient_nodes.iter().map(|&v| x[v]).collect();
    let z: Vec<f64> = recurrent_nodes.iter().map(|&v| x[v]).collect();
    if let Some(v) = y.iter().find(|&&v| v != 0.0) {
        return Err(Error::InternalConsistency(format!("transient score {v} is not zero")));
    }
    let ay = a.mul_vec(&y);
    if max_abs(&ay) > BLOCK_TOLERANCE {
        return Err(Error::InternalConsistency("A y = y fails for y = 0".into()));
    }

    let k = recurrent_nodes.len();
    let omega = shifted_power_iteration(
        &d.transpose(),
        vec![1.0 / k as f64; k],
        &SolverOptions::default(),
    )?
    .vector;
    if omega.iter().any(|&w| w <= 0.0 || (w - 1.0).abs() > OMEGA_TOLERANCE) {
        return Err(Error::InternalConsistency(format!(
            "left eigenvector of the recurrent block is not all-ones: {omega:?}"
        )));
    }

    let by: Vec<f64> = b.iter().map(|row| row.iter().zip(&y).map(|(w, v)| w * v).sum()).collect();
    let solvability: f64 = omega.iter().zip(&by).map(|(w, v)| w * v).sum();
    if solvability.abs() > BLOCK_TOLERANCE {
        return Err(Error::InternalConsistency(format!("solvability ωᵀBy = {solvability:e}")));
    }

    let dz = d.mul_vec(&z);
    let block_residual = (0..k).fold(0.0_f64, |r, i| r.max((by[i] + dz[i] - z[i]).abs()));
    if block_residual > BLOCK_TOLERANCE {
        return Err(Error::InternalConsistency(format!(
            "B y + D z = z fails with residual {block_residual:e}"
        )));
    }

    Ok(ReducibleDecomposition {
        transient_nodes,
        recurrent_nodes,
        transient_block: a,
        coupling_block: b,
        recurrent_block: d,
        y,
        z,
        omega,
        solvability,
        block_residual,
    })
}
