//! Solver invariants on random matrices, checked against the elimination oracle.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use citescore::{analyze, normalize, solve_scores, Classification, RawCitationMatrix, SolverOptions, Support};
use common::{fixed_point_oracle, max_diff, random_chained, random_irreducible};

fn any_raw() -> impl Strategy<Value = RawCitationMatrix> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1u64..9], n * n).prop_map(move |mut counts| {
            for i in 0..n {
                counts[i * n + i] = 0;
            }
            RawCitationMatrix::from_counts(n, counts).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn irreducible_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = normalize(&random_irreducible(&mut rng, 2..=8));
        let r = solve_scores(&c, &analyze(&c), &SolverOptions::default()).unwrap();
        let x = r.scores.unwrap();
        let oracle = fixed_point_oracle(&c).unwrap();
        prop_assert!(max_diff(&x, &oracle) <= 1e-8);
        prop_assert!(x.iter().all(|&v| v > 0.0));
        prop_assert_eq!(x.iter().copied().fold(f64::MIN, f64::max), 1.0);
    }

    #[test]
    fn chained_support_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (raw, recurrent) = random_chained(&mut rng);
        let c = normalize(&raw);
        let report = analyze(&c);
        let r = solve_scores(&c, &report, &SolverOptions::default()).unwrap();
        for (v, s) in r.support.iter().enumerate() {
            let expected = if recurrent.contains(&v) { Support::Positive } else { Support::ForcedZero };
            prop_assert_eq!(*s, expected);
        }
    }

    /// Whatever the structure, a successful solve satisfies its residual
    /// contract on a fresh product, and every score is non-negative.
    #[test]
    fn residual_contract(raw in any_raw()) {
        let c = normalize(&raw);
        let report = analyze(&c);
        let opts = SolverOptions::default();
        match solve_scores(&c, &report, &opts) {
            Ok(r) => {
                prop_assert!(r.residual <= opts.tolerance);
                if let Some(x) = &r.scores {
                    let cx = c.matrix().mul_vec(x);
                    let fresh = cx.iter().zip(x).fold(0.0_f64, |m, (a, b)| m.max((a - r.lambda * b).abs()));
                    prop_assert!(fresh <= opts.tolerance);
                    prop_assert!(x.iter().all(|&v| v >= 0.0));
                    prop_assert_eq!(x.iter().copied().fold(f64::MIN, f64::max), 1.0);
                    if let Some(oracle) = fixed_point_oracle(&c) {
                        prop_assert!(max_diff(x, &oracle) <= 1e-8);
                    }
                } else {
                    prop_assert!(r.classes.len() >= 2);
                }
                for class in &r.classes {
                    prop_assert_eq!(class.scores.iter().copied().fold(f64::MIN, f64::max), 1.0);
                }
            }
            Err(citescore::Error::NoRankableStructure(_)) => {
                prop_assert!(report.recurrent_classes.is_empty());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
        if report.classification == Classification::Irreducible {
            prop_assert!(c.zero_columns().is_empty());
        }
    }
}
