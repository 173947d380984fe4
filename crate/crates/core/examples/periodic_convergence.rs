//! Plain power iteration on a citation cycle just rotates the vector; the
//! shifted iteration converges.
//!
//! Run with `cargo run --example periodic_convergence`.

use citescore::solver::dominant_eigenpair_from;
use citescore::{NormalizedCitationMatrix, SolverOptions};

fn main() -> citescore::Result<()> {
    // a cites b, b cites c, c cites a
    let c = NormalizedCitationMatrix::from_rows(&[
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let start = [1.0, 0.0, 0.0];

    let mut x = start.to_vec();
    println!("plain iteration:");
    for k in 1..=6 {
        x = c.matrix().mul_vec(&x);
        println!("  step {k}: {x:?}");
    }

    let pair = dominant_eigenpair_from(&c, &start, &SolverOptions::default())?;
    println!(
        "\nshifted iteration: lambda = {}, x = {:?}, residual = {:e}, {} iterations",
        pair.lambda, pair.vector, pair.residual, pair.iterations
    );
    Ok(())
}
