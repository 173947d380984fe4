//! End-to-end run over an edge file, printing the JSON report.
//!
//! Run with `cargo run --example csv_pipeline -- [path]`; defaults to the
//! shipped `fixtures/dead_sink.csv`.

use std::path::PathBuf;

use citescore::report::{run_analyze, to_json, RankRequest};

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/dead_sink.csv")
    });
    let req = RankRequest::new(path);
    match run_analyze(&req) {
        Ok(report) => {
            print!("{}", to_json(&report));
            std::process::exit(report.rank.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
