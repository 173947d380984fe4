//! Rank teams from game results. Each win counts as the loser endorsing the
//! winner, so `winner,loser,count` becomes the edge loser -> winner.
//!
//! Run with `cargo run --example league_ranking`.

use citescore::report::{parse_edges_str, Mode, Prepared};
use citescore::SolverOptions;

const RESULTS: &str = "\
winner,loser,count
tigers,lions,2
lions,tigers,1
tigers,bears,2
bears,tigers,1
lions,bears,2
bears,lions,1
bears,wolves,3
wolves,tigers,1
tigers,wolves,1
lions,wolves,1
";

fn main() -> citescore::Result<()> {
    let edges = parse_edges_str(RESULTS, Mode::League)?;
    println!("first record as an edge: {:?}", edges[0]);

    let analysis = Prepared::from_edges(&edges)?.solve(&SolverOptions::default())?;
    let report = analysis.rank_report(false);
    println!("\n{}", citescore::report::render_rank_text(&report));

    // A team that never loses cites no one; its column is zero.
    let unbeaten = parse_edges_str("a,b\na,c\nb,c\nc,b\n", Mode::League)?;
    match Prepared::from_edges(&unbeaten)?.solve(&SolverOptions::default()) {
        Ok(_) => println!("unbeaten league ranked"),
        Err(e) => println!("unbeaten league: {e}"),
    }
    Ok(())
}
