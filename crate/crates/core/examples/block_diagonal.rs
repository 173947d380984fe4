//! Two groups that never cite each other: the eigenvector is not unique, so
//! each group gets its own ranking and no merged one is produced.
//!
//! Run with `cargo run --example block_diagonal`.

use citescore::{analyze, build_raw, normalize, solve_scores, Edge, SolverOptions};

fn main() -> citescore::Result<()> {
    let edges = [
        Edge::new("algebra1", "algebra2", 3),
        Edge::new("algebra2", "algebra1", 1),
        Edge::new("algebra2", "algebra3", 1),
        Edge::new("algebra3", "algebra1", 1),
        Edge::new("botany1", "botany2", 1),
        Edge::new("botany2", "botany1", 1),
    ];
    let graph = build_raw(&edges)?;
    let c = normalize(&graph.raw);
    let report = analyze(&c);
    let result = solve_scores(&c, &report, &SolverOptions::default())?;

    println!("classification: {}", report.classification);
    println!("unique ranking: {}", result.is_unique());
    for (k, class) in result.classes.iter().enumerate() {
        println!("\nclass {}:", k + 1);
        for (&v, s) in class.nodes.iter().zip(&class.scores) {
            println!("  {:>9}  {s:.6}", graph.nodes.label(v));
        }
    }
    for diag in &result.diagnostics {
        println!("\n[{}] {}", diag.code(), diag.message());
    }
    Ok(())
}
