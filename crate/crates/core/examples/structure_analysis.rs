//! Strongly connected components, classification, and the block permutation
//! that exposes a zero top-right block for a reducible matrix.
//!
//! Run with `cargo run --example structure_analysis`.

use citescore::{analyze, build_raw, normalize, permute, Edge};

fn main() -> citescore::Result<()> {
    // p1 and p2 cite each other, p3 cites into that pair, p4 <-> p5 cite each
    // other and p4 also cites p1.
    let edges = [
        Edge::new("p1", "p2", 1),
        Edge::new("p2", "p1", 1),
        Edge::new("p3", "p1", 2),
        Edge::new("p4", "p5", 1),
        Edge::new("p5", "p4", 1),
        Edge::new("p4", "p1", 1),
    ];
    let graph = build_raw(&edges)?;
    let c = normalize(&graph.raw);
    let report = analyze(&c);
    let name = |ids: &[usize]| ids.iter().map(|&i| graph.nodes.label(i)).collect::<Vec<_>>();

    println!("classification: {}", report.classification);
    for (p, comp) in report.partition.components.iter().enumerate() {
        println!("component {p}: {:?}", name(comp));
    }
    println!("condensation edges: {:?}", report.partition.condensation_edges);
    println!("recurrent nodes: {:?}", name(&report.recurrent_nodes()));
    println!("transient nodes: {:?}", name(&report.transient_nodes()));

    let order = report.block_permutation.inverse();
    println!("\nblock order: {:?}", name(order.as_slice()));
    let permuted = permute(&c, &report.block_permutation)?;
    for i in 0..permuted.dim() {
        let row: Vec<String> = (0..permuted.dim()).map(|j| format!("{:5.2}", permuted.weight(i, j))).collect();
        println!("  {}", row.join(" "));
    }
    println!("(no weight above the diagonal blocks: later nodes never cite earlier ones)");
    Ok(())
}
