//! File ingestion, the end-to-end pipeline, and text/JSON reports.
//!
//! # Input format
//!
//! One record per line, comma- or tab-separated: `citer,cited[,count]`.
//! The count defaults to 1. Blank lines and lines starting with `#` are
//! skipped, and a header line (`citer,cited[,count]` or
//! `winner,loser[,count]`) is allowed as the first record.
//!
//! In [`Mode::League`] the columns are `winner,loser[,count]`. A win is an
//! endorsement of the winner by the loser, so the record becomes a citation
//! of the winner by the loser: `tigers,lions,2` (tigers beat lions twice)
//! is read as the edge `lions → tigers` with count 2.
//!
//! # JSON schema
//!
//! `rank` emits an object with keys, in order: `scores` (array of
//! `{label, score, support}` sorted by score descending then label, or
//! `null` when the ranking is not unique), `lambda`, `classification`,
//! `recurrent_classes` (arrays of labels), `diagnostics` (array of
//! `{code, message, nodes}`), `residual`, `iterations`, `unique`, and
//! `per_class` (array of `{members, scores}`, or `null` unless requested).
//! `analyze` adds `structure` and `decomposition`. Failures are reported as
//! `{"error": {"code", "message"}}`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::diagnostics::Diagnostic;
use crate::error::{Error, Result};
use crate::model::{build_raw, normalize, CitationGraph, Edge, NodeTable, NormalizedCitationMatrix};
use crate::solver::{
    check_column_sum_lambda, solve_scores, verify_reducible, ReducibleDecomposition, ScoreResult,
    SolverOptions,
};
use crate::structure::{analyze, Classification, StructureReport};

/// How the columns of an input file are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// `citer,cited,count`.
    #[default]
    Citations,
    /// `winner,loser,count`; the loser "cites" the winner.
    League,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRequest {
    pub input_path: PathBuf,
    pub mode: Mode,
    pub tolerance: f64,
    pub max_iter: usize,
    pub output_format: OutputFormat,
    /// Emit per-class rankings when the eigenvector is not unique.
    pub per_class: bool,
}

impl RankRequest {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        let defaults = SolverOptions::default();
        Self {
            input_path: input_path.into(),
            mode: Mode::Citations,
            tolerance: defaults.tolerance,
            max_iter: defaults.max_iterations,
            output_format: OutputFormat::Text,
            per_class: false,
        }
    }

    pub fn solver_options(&self) -> Result<SolverOptions> {
        SolverOptions::new(self.tolerance, self.max_iter)
    }
}

pub fn parse_edges(path: &Path, mode: Mode) -> Result<Vec<Edge>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_edges_str(&text, mode)
}

fn is_header(fields: &[&str]) -> bool {
    let lower: Vec<String> = fields.iter().map(|f| f.to_ascii_lowercase()).collect();
    matches!(
        lower.iter().map(String::as_str).collect::<Vec<_>>().as_slice(),
        ["citer", "cited"] | ["citer", "cited", "count"] | ["winner", "loser"] | ["winner", "loser", "count"]
    )
}

pub fn parse_edges_str(text: &str, mode: Mode) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    let mut seen_record = false;
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let sep = if trimmed.contains('\t') { '\t' } else { ',' };
        let fields: Vec<&str> = trimmed.split(sep).map(str::trim).collect();
        let first_record = !seen_record;
        seen_record = true;
        if first_record && is_header(&fields) {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(format!("expected 2 or 3 fields, found {}", fields.len())));
        }
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(parse_err("empty label".into()));
        }
        let count = match fields.get(2) {
            None => 1,
            Some(raw) => {
                let c: i64 = raw
                    .parse()
                    .map_err(|_| parse_err(format!("count `{raw}` is not an integer")))?;
                if c <= 0 {
                    return Err(parse_err(format!("count must be positive, got {c}")));
                }
                c
            }
        };
        let (a, b) = (fields[0], fields[1]);
        edges.push(match mode {
            Mode::Citations => Edge::new(a, b, count),
            Mode::League => Edge::new(b, a, count),
        });
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreEntry {
    pub label: String,
    pub score: f64,
    pub support: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticEntry {
    pub code: String,
    pub message: String,
    pub nodes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRanking {
    pub members: Vec<String>,
    pub scores: Vec<ScoreEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub scores: Option<Vec<ScoreEntry>>,
    pub lambda: f64,
    pub classification: Classification,
    pub recurrent_classes: Vec<Vec<String>>,
    pub diagnostics: Vec<DiagnosticEntry>,
    pub residual: f64,
    pub iterations: usize,
    pub unique: bool,
    pub per_class: Option<Vec<ClassRanking>>,
}

impl RankReport {
    pub fn exit_code(&self) -> i32 {
        if self.unique {
            0
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureSummary {
    pub components: Vec<Vec<String>>,
    /// Pairs of indices into `components`.
    pub condensation_edges: Vec<(usize, usize)>,
    pub transient_classes: Vec<Vec<String>>,
    pub dead_sinks: Vec<String>,
    /// Node labels in block order: transient first, recurrent last.
    pub block_order: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionSummary {
    pub transient_nodes: Vec<String>,
    pub recurrent_nodes: Vec<String>,
    pub omega: Vec<f64>,
    pub solvability: f64,
    pub block_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    #[serde(flatten)]
    pub rank: RankReport,
    pub structure: StructureSummary,
    pub decomposition: Option<DecompositionSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnCheckSummary {
    pub armed: bool,
    pub zero_columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub nodes: usize,
    pub classification: Classification,
    pub recurrent_classes: Vec<Vec<String>>,
    pub structure: StructureSummary,
    pub column_check: ColumnCheckSummary,
    pub diagnostics: Vec<DiagnosticEntry>,
}

impl ValidationReport {
    /// 0: one recurrent class, 2: several, 1: none.
    pub fn exit_code(&self) -> i32 {
        match self.recurrent_classes.len() {
            0 => 1,
            1 => 0,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ErrorBody {
    code: &'static str,
    message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ErrorReport {
    error: ErrorBody,
}

/// Graph, matrix and structure of an input, before solving.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub graph: CitationGraph,
    pub matrix: NormalizedCitationMatrix,
    pub structure: StructureReport,
}

impl Prepared {
    pub fn from_edges(edges: &[Edge]) -> Result<Self> {
        let graph = build_raw(edges)?;
        let matrix = normalize(&graph.raw);
        let structure = analyze(&matrix);
        Ok(Self { graph, matrix, structure })
    }

    pub fn nodes(&self) -> &NodeTable {
        &self.graph.nodes
    }

    pub fn solve(self, opts: &SolverOptions) -> Result<Analysis> {
        let result = solve_scores(&self.matrix, &self.structure, opts)?;
        let decomposition = if self.structure.classification == Classification::ChainedReducible
            && self.structure.recurrent_classes.len() == 1
        {
            Some(verify_reducible(&self.matrix, &self.structure, &result)?)
        } else {
            None
        };
        Ok(Analysis { prepared: self, result, decomposition })
    }

    fn labels(&self, ids: &[usize]) -> Vec<String> {
        let mut out: Vec<String> = ids.iter().map(|&i| self.nodes().label(i).to_owned()).collect();
        out.sort();
        out
    }

    fn class_labels(&self, classes: &[usize]) -> Vec<Vec<String>> {
        classes
            .iter()
            .map(|&p| self.labels(&self.structure.partition.components[p]))
            .collect()
    }

    fn diagnostic_entries(&self, extra: &[Diagnostic]) -> Vec<DiagnosticEntry> {
        let mut all = Vec::new();
        if self.graph.dropped_self_citations > 0 {
            all.push(Diagnostic::DroppedSelfCitations { count: self.graph.dropped_self_citations });
        }
        all.extend(extra.iter().cloned());
        all.iter()
            .map(|d| DiagnosticEntry {
                code: d.code().to_owned(),
                message: d.message(),
                nodes: self.labels(d.nodes()),
            })
            .collect()
    }

    pub fn structure_summary(&self) -> StructureSummary {
        let s = &self.structure;
        let inverse = s.block_permutation.inverse();
        StructureSummary {
            components: s
                .partition
                .components
                .iter()
                .map(|c| self.labels(c))
                .collect(),
            condensation_edges: s.partition.condensation_edges.iter().copied().collect(),
            transient_classes: self.class_labels(
                &s.transient_classes
                    .iter()
                    .copied()
                    .filter(|p| !s.dead_sinks.contains(p))
                    .collect::<Vec<_>>(),
            ),
            dead_sinks: self.labels(
                &s.dead_sinks
                    .iter()
                    .flat_map(|&p| s.partition.components[p].iter().copied())
                    .collect::<Vec<_>>(),
            ),
            block_order: inverse
                .as_slice()
                .iter()
                .map(|&i| self.nodes().label(i).to_owned())
                .collect(),
        }
    }

    /// Structure and column checks without solving.
    pub fn validation_report(&self) -> ValidationReport {
        let check = check_column_sum_lambda(&self.matrix);
        let mut extra = Vec::new();
        if !check.armed {
            extra.push(Diagnostic::ZeroColumns { nodes: check.zero_columns.clone() });
        }
        if self.structure.recurrent_classes.len() > 1 {
            extra.push(Diagnostic::NonUnique { classes: self.structure.recurrent_classes.len() });
        }
        ValidationReport {
            nodes: self.nodes().len(),
            classification: self.structure.classification,
            recurrent_classes: self.class_labels(&self.structure.recurrent_classes),
            structure: self.structure_summary(),
            column_check: ColumnCheckSummary {
                armed: check.armed,
                zero_columns: self.labels(&check.zero_columns),
            },
            diagnostics: self.diagnostic_entries(&extra),
        }
    }
}

/// Fully solved input.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub prepared: Prepared,
    pub result: ScoreResult,
    pub decomposition: Option<ReducibleDecomposition>,
}

fn sort_entries(entries: &mut [ScoreEntry]) {
    entries.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.label.cmp(&b.label)));
}

impl Analysis {
    pub fn rank_report(&self, per_class: bool) -> RankReport {
        let p = &self.prepared;
        let r = &self.result;
        let nodes = p.nodes();
        let scores = r.scores.as_ref().map(|x| {
            let mut entries: Vec<ScoreEntry> = x
                .iter()
                .enumerate()
                .map(|(i, &score)| ScoreEntry {
                    label: nodes.label(i).to_owned(),
                    score,
                    support: r.support[i].as_str().to_owned(),
                })
                .collect();
            sort_entries(&mut entries);
            entries
        });
        let per_class = (per_class && !r.is_unique()).then(|| {
            r.classes
                .iter()
                .map(|class| {
                    let mut scores: Vec<ScoreEntry> = class
                        .nodes
                        .iter()
                        .zip(&class.scores)
                        .map(|(&v, &score)| ScoreEntry {
                            label: nodes.label(v).to_owned(),
                            score,
                            support: r.support[v].as_str().to_owned(),
                        })
                        .collect();
                    sort_entries(&mut scores);
                    ClassRanking { members: p.labels(&class.nodes), scores }
                })
                .collect()
        });
        RankReport {
            scores,
            lambda: r.lambda,
            classification: p.structure.classification,
            recurrent_classes: p.class_labels(&p.structure.recurrent_classes),
            diagnostics: p.diagnostic_entries(&r.diagnostics),
            residual: r.residual,
            iterations: r.iterations,
            unique: r.is_unique(),
            per_class,
        }
    }

    pub fn analysis_report(&self, per_class: bool) -> AnalysisReport {
        let p = &self.prepared;
        let labels = |ids: &[usize]| ids.iter().map(|&i| p.nodes().label(i).to_owned()).collect();
        AnalysisReport {
            rank: self.rank_report(per_class),
            structure: p.structure_summary(),
            decomposition: self.decomposition.as_ref().map(|d| DecompositionSummary {
                transient_nodes: labels(&d.transient_nodes),
                recurrent_nodes: labels(&d.recurrent_nodes),
                omega: d.omega.clone(),
                solvability: d.solvability,
                block_residual: d.block_residual,
            }),
        }
    }
}

/// Parse, build, normalize and analyze the structure of the requested file.
pub fn prepare(req: &RankRequest) -> Result<Prepared> {
    let edges = parse_edges(&req.input_path, req.mode)?;
    Prepared::from_edges(&edges)
}

/// Full pipeline for one request.
pub fn run_rank(req: &RankRequest) -> Result<RankReport> {
    let opts = req.solver_options()?;
    Ok(prepare(req)?.solve(&opts)?.rank_report(req.per_class))
}

pub fn run_analyze(req: &RankRequest) -> Result<AnalysisReport> {
    let opts = req.solver_options()?;
    Ok(prepare(req)?.solve(&opts)?.analysis_report(req.per_class))
}

pub fn run_validate(req: &RankRequest) -> Result<ValidationReport> {
    Ok(prepare(req)?.validation_report())
}

/// JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

pub fn error_json(err: &Error) -> String {
    to_json(&ErrorReport { error: ErrorBody { code: err.code(), message: err.to_string() } })
}

/// Formats `v` with `digits` significant digits.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = digits.max(1);
    // exponent after rounding, so 0.99999999999995 counts as magnitude 0
    let sci = format!("{:.*e}", digits - 1, v);
    let exponent: i64 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

const TEXT_DIGITS: usize = 12;

fn write_table(out: &mut String, entries: &[ScoreEntry]) {
    let width = entries.iter().map(|e| e.label.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:>4}  {:<width$}  {:<16}  support", "rank", "label", "score");
    for (k, e) in entries.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:<16}  {}",
            k + 1,
            e.label,
            format_significant(e.score, TEXT_DIGITS),
            e.support
        );
    }
}

fn write_header(out: &mut String, r: &RankReport) {
    let _ = writeln!(out, "classification: {}", r.classification);
    let _ = writeln!(out, "lambda: {}", format_significant(r.lambda, TEXT_DIGITS));
    let _ = writeln!(out, "residual: {:e}", r.residual);
    let _ = writeln!(out, "iterations: {}", r.iterations);
    for (k, class) in r.recurrent_classes.iter().enumerate() {
        let _ = writeln!(out, "recurrent class {}: {}", k + 1, class.join(", "));
    }
}

pub fn render_rank_text(r: &RankReport) -> String {
    let mut out = String::new();
    write_header(&mut out, r);
    out.push('\n');
    match (&r.scores, &r.per_class) {
        (Some(scores), _) => write_table(&mut out, scores),
        (None, Some(classes)) => {
            for (k, class) in classes.iter().enumerate() {
                let _ = writeln!(out, "class {} (scores not comparable across classes)", k + 1);
                write_table(&mut out, &class.scores);
                out.push('\n');
            }
        }
        (None, None) => {
            let _ = writeln!(
                out,
                "no merged ranking: {} recurrent classes (rerun with --per-class)",
                r.recurrent_classes.len()
            );
        }
    }
    out
}

pub fn render_analysis_text(a: &AnalysisReport) -> String {
    let mut out = render_rank_text(&a.rank);
    out.push('\n');
    write_structure(&mut out, &a.structure);
    if let Some(d) = &a.decomposition {
        let _ = writeln!(out, "transient block: {}", d.transient_nodes.join(", "));
        let _ = writeln!(out, "recurrent block: {}", d.recurrent_nodes.join(", "));
        let omega: Vec<String> = d.omega.iter().map(|w| format_significant(*w, TEXT_DIGITS)).collect();
        let _ = writeln!(out, "omega: ({})", omega.join(", "));
        let _ = writeln!(out, "solvability: {:e}", d.solvability);
        let _ = writeln!(out, "block residual: {:e}", d.block_residual);
    }
    out
}

fn write_structure(out: &mut String, s: &StructureSummary) {
    let _ = writeln!(out, "components:");
    for (k, c) in s.components.iter().enumerate() {
        let _ = writeln!(out, "  [{k}] {}", c.join(", "));
    }
    if !s.condensation_edges.is_empty() {
        let edges: Vec<String> = s.condensation_edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let _ = writeln!(out, "condensation edges: {}", edges.join(" "));
    }
    if !s.dead_sinks.is_empty() {
        let _ = writeln!(out, "dead sinks: {}", s.dead_sinks.join(", "));
    }
    let _ = writeln!(out, "block order: {}", s.block_order.join(", "));
}

pub fn render_validation_text(v: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes: {}", v.nodes);
    let _ = writeln!(out, "classification: {}", v.classification);
    for (k, class) in v.recurrent_classes.iter().enumerate() {
        let _ = writeln!(out, "recurrent class {}: {}", k + 1, class.join(", "));
    }
    let _ = writeln!(
        out,
        "column sums: {}",
        if v.column_check.armed { "all 1 (lambda = 1 expected)" } else { "some zero" }
    );
    write_structure(&mut out, &v.structure);
    out
}

pub fn render_diagnostics_text(diagnostics: &[DiagnosticEntry]) -> String {
    let mut out = String::new();
    for d in diagnostics {
        let _ = write!(out, "[{}] {}", d.code, d.message);
        if !d.nodes.is_empty() {
            let _ = write!(out, ": {}", d.nodes.join(", "));
        }
        out.push('\n');
    }
    out
}
