//! Scores for an irreducible matrix, compared with a direct elimination.
//!
//! Run with `cargo run --example irreducible_scores`.

use citescore::{analyze, solve_scores, NormalizedCitationMatrix, SolverOptions};

fn main() -> citescore::Result<()> {
    // column j lists how author j splits their citations
    let c = NormalizedCitationMatrix::from_rows(&[
        vec![0.0, 1.0, 0.5],
        vec![0.5, 0.0, 0.5],
        vec![0.5, 0.0, 0.0],
    ])?;
    let report = analyze(&c);
    let result = solve_scores(&c, &report, &SolverOptions::default())?;
    let x = result.scores.as_ref().expect("irreducible matrices have a unique ranking");

    println!("classification: {}", report.classification);
    println!("lambda = {:.15}", result.lambda);
    println!("scores = {x:?}");
    println!("residual = {:e} after {} iterations", result.residual, result.iterations);

    // C x = x with x3 = 1/2 gives x2 = x1/2 + x3/2 and x3 = x1/2, so x = (1, 3/4, 1/2)
    println!("by hand: [1.0, 0.75, 0.5]");
    Ok(())
}
