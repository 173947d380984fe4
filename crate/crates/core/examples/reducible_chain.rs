//! A transient group feeding a recurrent group: transient scores are forced
//! to zero, and the block equations are checked.
//!
//! Run with `cargo run --example reducible_chain`.

use citescore::{analyze, build_raw, normalize, solve_scores, verify_reducible, Edge, SolverOptions};

fn main() -> citescore::Result<()> {
    let edges = [
        Edge::new("newcomer", "b", 2),
        Edge::new("newcomer", "c", 1),
        Edge::new("b", "c", 1),
        Edge::new("c", "b", 1),
        Edge::new("c", "d", 1),
        Edge::new("d", "b", 1),
    ];
    let graph = build_raw(&edges)?;
    let c = normalize(&graph.raw);
    let report = analyze(&c);
    let result = solve_scores(&c, &report, &SolverOptions::default())?;

    println!("classification: {}", report.classification);
    for (i, x) in result.scores.as_ref().unwrap().iter().enumerate() {
        println!("{:>9}  {x:.6}  {}", graph.nodes.label(i), result.support[i].as_str());
    }

    let d = verify_reducible(&c, &report, &result)?;
    println!("\ncoupling block B (recurrent rows x transient columns): {:?}", d.coupling_block);
    println!("left eigenvector of D: {:?}", d.omega);
    println!("solvability omega^T B y = {}", d.solvability);
    println!("|B y + D z - z| = {:e}", d.block_residual);
    for diag in &result.diagnostics {
        println!("[{}] {}", diag.code(), diag.message());
    }
    Ok(())
}
