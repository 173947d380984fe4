//! Test-only oracles and random instance generators.
//!
//! The oracle solves `(C - I) x = 0` by Gaussian elimination to reduced row
//! echelon form. It shares no code with the shifted iteration it checks.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::Rng;

use citescore::{normalize, NormalizedCitationMatrix, RawCitationMatrix};

/// Basis of the null space of a dense `rows x cols` matrix.
pub fn null_space(mut a: Vec<Vec<f64>>, pivot_tol: f64) -> Vec<Vec<f64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) = (r..rows)
            .map(|i| (i, a[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= pivot_tol {
            for row in a.iter_mut().skip(r) {
                row[c] = 0.0;
            }
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        for v in a[r].iter_mut() {
            *v /= p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0.0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] -= f * a[r][k];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0.0; cols];
            x[f] = 1.0;
            for (k, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = -a[k][f];
            }
            x
        })
        .collect()
}

/// Non-negative solution of `(C - I) x = 0` scaled to max 1, if the null
/// space is one-dimensional.
pub fn fixed_point_oracle(c: &NormalizedCitationMatrix) -> Option<Vec<f64>> {
    let n = c.dim();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| c.weight(i, j) - if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let basis = null_space(a, 1e-10);
    if basis.len() != 1 {
        return None;
    }
    let mut x = basis.into_iter().next().unwrap();
    let (lo, hi) = x.iter().fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
    let scale = if hi.abs() >= lo.abs() { hi } else { lo };
    for v in x.iter_mut() {
        *v /= scale;
        if v.abs() < 1e-14 {
            *v = 0.0;
        }
    }
    x.iter().all(|&v| v >= 0.0).then_some(x)
}

/// Transitive closure by Floyd-Warshall over the citer -> cited relation.
pub fn strongly_connected(raw: &RawCitationMatrix) -> bool {
    let n = raw.dim();
    let mut reach = vec![vec![false; n]; n];
    for j in 0..n {
        reach[j][j] = true;
        for i in 0..n {
            if raw.count(i, j) > 0 {
                reach[j][i] = true;
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            if reach[a][k] {
                for b in 0..n {
                    if reach[k][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}

pub fn random_raw<R: Rng>(rng: &mut R, n: usize, density: f64) -> RawCitationMatrix {
    let mut counts = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                counts[i * n + j] = rng.gen_range(1..=9);
            }
        }
    }
    RawCitationMatrix::from_counts(n, counts).unwrap()
}

/// Random raw matrix whose graph is strongly connected, by rejection.
pub fn random_irreducible<R: Rng>(rng: &mut R, n_range: std::ops::RangeInclusive<usize>) -> RawCitationMatrix {
    loop {
        let n = rng.gen_range(n_range.clone());
        let density = rng.gen_range(0.2..0.8);
        let raw = random_raw(rng, n, density);
        if strongly_connected(&raw) {
            return raw;
        }
    }
}

/// Random raw matrix with one recurrent class fed by at least one transient
/// node, labels shuffled. Returns the matrix and the recurrent node ids.
pub fn random_chained<R: Rng>(rng: &mut R) -> (RawCitationMatrix, Vec<usize>) {
    let r = rng.gen_range(2..=5);
    let t = rng.gen_range(1..=3);
    let n = r + t;
    let block = random_irreducible(rng, r..=r);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // order[k] is the final id of logical node k; logical 0..r are recurrent
    let mut counts = vec![0u64; n * n];
    for i in 0..r {
        for j in 0..r {
            counts[order[i] * n + order[j]] = block.count(i, j);
        }
    }
    for j in r..n {
        let target = rng.gen_range(0..r);
        counts[order[target] * n + order[j]] = rng.gen_range(1..=9);
        for i in 0..n {
            if i != j && rng.gen_bool(0.3) {
                counts[order[i] * n + order[j]] += rng.gen_range(1..=9);
            }
        }
    }
    let mut recurrent: Vec<usize> = order[..r].to_vec();
    recurrent.sort_unstable();
    (RawCitationMatrix::from_counts(n, counts).unwrap(), recurrent)
}

/// Two or three disjoint strongly connected groups.
pub fn random_block_diagonal<R: Rng>(rng: &mut R) -> RawCitationMatrix {
    let blocks: Vec<RawCitationMatrix> = (0..rng.gen_range(2..=3)).map(|_| random_irreducible(rng, 2..=3)).collect();
    let n: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut counts = vec![0u64; n * n];
    let mut offset = 0;
    for b in &blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                counts[(offset + i) * n + offset + j] = b.count(i, j);
            }
        }
        offset += b.dim();
    }
    RawCitationMatrix::from_counts(n, counts).unwrap()
}

pub fn normalized(raw: &RawCitationMatrix) -> NormalizedCitationMatrix {
    normalize(raw)
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}
