//! Build a raw citation matrix from records and column-normalize it.
//!
//! Run with `cargo run --example normalize_citations`.

use citescore::{build_raw, normalize, Edge};

fn main() -> citescore::Result<()> {
    let edges = [
        Edge::new("ana", "ben", 3),
        Edge::new("ana", "cleo", 1),
        Edge::new("ben", "ana", 2),
        Edge::new("ben", "ana", 2), // repeated pairs add up
        Edge::new("cleo", "cleo", 7), // self-citations are dropped
        Edge::new("dev", "ana", 1),
    ];
    let graph = build_raw(&edges)?;
    let labels = graph.nodes.labels();
    println!("nodes: {labels:?}");
    println!("dropped self-citations: {}", graph.dropped_self_citations);

    println!("\nraw counts (row = cited, column = citer):");
    print_header(labels);
    for (i, label) in labels.iter().enumerate() {
        let row: Vec<String> = (0..labels.len()).map(|j| format!("{:>6}", graph.raw.count(i, j))).collect();
        println!("{label:>6}{}", row.join(""));
    }

    let c = normalize(&graph.raw);
    println!("\nnormalized (each column is the citer's share of citations):");
    print_header(labels);
    for (i, label) in labels.iter().enumerate() {
        let row: Vec<String> = (0..labels.len()).map(|j| format!("{:>6.3}", c.weight(i, j))).collect();
        println!("{label:>6}{}", row.join(""));
    }
    let zero: Vec<&str> = c.zero_columns().iter().map(|&j| graph.nodes.label(j)).collect();
    println!("\nzero columns (cite no one): {zero:?}");
    Ok(())
}

fn print_header(labels: &[String]) {
    let head: Vec<String> = labels.iter().map(|l| format!("{l:>6}")).collect();
    println!("{:>6}{}", "", head.join(""));
}
