//! Monte Carlo estimate of both AUC definitions by sampling cross-class pairs.
//!
//! Each draw picks one positive and one negative uniformly with replacement
//! and records whether the positive scored higher or tied. Draws are split
//! into fixed chunks of [`CHUNK_DRAWS`]; chunk `c` uses random stream `c`, so
//! the totals do not depend on how chunks are spread over threads.

use serde::Serialize;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, WeightedIndex};

pub const CHUNK_DRAWS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloResult {
    /// Fraction of draws where the positive scored strictly higher.
    pub auc_definition: f64,
    /// `auc_definition` plus half the fraction of tied draws.
    pub auc_wties: f64,
    pub n_draws: u64,
    pub seed: u64,
    pub greater: u64,
    pub ties: u64,
}

pub fn est_auc(d: &Dataset, n_draws: u64, seed: u64) -> Result<MonteCarloResult> {
    d.require_both_classes()?;
    if n_draws == 0 {
        return Err(Error::Argument("n_draws must be at least 1".into()));
    }
    let groups = d.groups().as_slice();
    let pos = WeightedIndex::new(groups.iter().map(|g| g.pos));
    let neg = WeightedIndex::new(groups.iter().map(|g| g.neg));

    let n_chunks = n_draws.div_ceil(CHUNK_DRAWS);
    let run_chunk = |chunk: u64| -> (u64, u64) {
        let mut rng = stream_rng(seed, chunk);
        let len = CHUNK_DRAWS.min(n_draws - chunk * CHUNK_DRAWS);
        let (mut greater, mut ties) = (0u64, 0u64);
        for _ in 0..len {
            // Groups are in descending score order, so a smaller index is a
            // higher score.
            let p = pos.sample(&mut rng);
            let n = neg.sample(&mut rng);
            if p < n {
                greater += 1;
            } else if p == n {
                ties += 1;
            }
        }
        (greater, ties)
    };

    #[cfg(feature = "parallel")]
    let (greater, ties) = {
        use rayon::prelude::*;
        (0..n_chunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    #[cfg(not(feature = "parallel"))]
    let (greater, ties) = (0..n_chunks)
        .map(run_chunk)
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let n = n_draws as f64;
    Ok(MonteCarloResult {
        auc_definition: greater as f64 / n,
        auc_wties: (2 * greater + ties) as f64 / (2.0 * n),
        n_draws,
        seed,
        greater,
        ties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::fixtures::*;
    use crate::data::load_rows;

    #[test]
    fn constant_predictor_always_ties() {
        for seed in [0, 1, 99] {
            let r = est_auc(&constant(4, 3), 1000, seed).unwrap();
            assert_eq!(r.auc_definition, 0.0);
            assert_eq!(r.auc_wties, 0.5);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            est_auc(&binary_table(), 0, 1),
            Err(Error::Argument(_))
        ));
        let d = load_rows([(0.3, 1)]).unwrap();
        assert!(matches!(
            est_auc(&d, 10, 1),
            Err(Error::DegenerateClass { .. })
        ));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = est_auc(&four_level_table(), 200_000, 42).unwrap();
        let b = est_auc(&four_level_table(), 200_000, 42).unwrap();
        let c = est_auc(&four_level_table(), 200_000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.greater, c.greater);
    }

    #[test]
    fn binary_table_within_binomial_band() {
        let exact_strict = 2600.0 / 7140.0;
        let exact_half = 4310.0 / 7140.0;
        let n = 1_000_000u64;
        let band = 4.0 * (exact_strict * (1.0 - exact_strict) / n as f64).sqrt();
        for seed in [1, 2, 3] {
            let r = est_auc(&binary_table(), n, seed).unwrap();
            assert!((r.auc_definition - exact_strict).abs() < band, "{r:?}");
            assert!((r.auc_wties - exact_half).abs() < 0.002, "{r:?}");
            let half_ties = r.ties as f64 / n as f64 / 2.0;
            assert!((r.auc_wties - r.auc_definition - half_ties).abs() < 1e-15);
            assert!(
                0.0 <= r.auc_definition && r.auc_definition <= r.auc_wties && r.auc_wties <= 1.0
            );
        }
    }

    #[test]
    fn partial_chunk_counts_every_draw() {
        let r = est_auc(&separated(), CHUNK_DRAWS + 17, 5).unwrap();
        assert_eq!(r.greater, CHUNK_DRAWS + 17);
        assert_eq!(r.auc_definition, 1.0);
    }
}
