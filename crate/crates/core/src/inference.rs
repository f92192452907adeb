//! Uncertainty for AUC estimates.
//!
//! Two routes: the asymptotic normal interval built from DeLong placement
//! values (half-ties AUC only), and a paired nonparametric bootstrap that
//! works for any tie convention and reports normal, percentile and
//! bias-corrected intervals.

use serde::Serialize;

use crate::auc::{auc_for_convention, auc_half_ties, pair_counts_from_cells, pair_statistics};
use crate::data::{Dataset, ScoreGroup, ScoreGroups};
use crate::error::{Error, Result};
use crate::normal;
use crate::ratio::ExactRatio;
use crate::rng::{cell_sampler, stream_rng};
use crate::roc::PathConvention;

pub const MIN_REPLICATES: u32 = 100;

/// Placement value shared by every subject of one class at one score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Placement {
    pub score: f64,
    pub value: f64,
    pub exact: ExactRatio,
    /// Number of subjects carrying this value.
    pub weight: u64,
}

/// DeLong placement values, one entry per (score group, class) cell.
///
/// A positive's value is the fraction of negatives scoring below it plus half
/// the fraction tied with it. A negative's value is the fraction of positives
/// scoring above it plus half the fraction tied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentVectors {
    pub v10: Vec<Placement>,
    pub v01: Vec<Placement>,
    pub n_pos: u64,
    pub n_neg: u64,
}

impl ComponentVectors {
    pub fn mean_v10(&self) -> ExactRatio {
        weighted_exact_mean(&self.v10, self.n_pos)
    }

    pub fn mean_v01(&self) -> ExactRatio {
        weighted_exact_mean(&self.v01, self.n_neg)
    }

    /// Sample variance (divisor n - 1) of the positives' placements.
    pub fn var_v10(&self, mean: f64) -> f64 {
        weighted_sample_variance(&self.v10, self.n_pos, mean)
    }

    pub fn var_v01(&self, mean: f64) -> f64 {
        weighted_sample_variance(&self.v01, self.n_neg, mean)
    }
}

fn weighted_exact_mean(values: &[Placement], n: u64) -> ExactRatio {
    let den = values.first().map(|p| p.exact.den).unwrap_or(1);
    let num = values
        .iter()
        .map(|p| p.exact.num * p.weight as u128)
        .sum::<u128>();
    ExactRatio::new(num, den * n as u128)
}

fn weighted_sample_variance(values: &[Placement], n: u64, mean: f64) -> f64 {
    let ss: f64 = values
        .iter()
        .map(|p| p.weight as f64 * (p.value - mean).powi(2))
        .sum();
    ss / (n - 1) as f64
}

pub fn placement_components(g: &ScoreGroups) -> Result<ComponentVectors> {
    let (n_pos, n_neg) = (g.n_pos(), g.n_neg());
    if n_pos < 2 || n_neg < 2 {
        return Err(Error::InsufficientData {
            n_pos,
            n_neg,
            required: 2,
        });
    }
    let mut v10 = Vec::new();
    let mut v01 = Vec::new();
    let (mut pos_above, mut neg_above) = (0u64, 0u64);
    for grp in g {
        if grp.pos > 0 {
            let neg_below = n_neg - neg_above - grp.neg;
            let exact = ExactRatio::new(2 * neg_below as u128 + grp.neg as u128, 2 * n_neg as u128);
            v10.push(Placement {
                score: grp.score,
                value: exact.to_f64(),
                exact,
                weight: grp.pos,
            });
        }
        if grp.neg > 0 {
            let exact = ExactRatio::new(2 * pos_above as u128 + grp.pos as u128, 2 * n_pos as u128);
            v01.push(Placement {
                score: grp.score,
                value: exact.to_f64(),
                exact,
                weight: grp.neg,
            });
        }
        pos_above += grp.pos;
        neg_above += grp.neg;
    }
    Ok(ComponentVectors {
        v10,
        v01,
        n_pos,
        n_neg,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticResult {
    /// Always the half-ties AUC.
    pub convention: PathConvention,
    pub auc: f64,
    pub se: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub level: f64,
}

/// Normal-theory interval for the half-ties AUC with DeLong variance
/// `S10 / n_pos + S01 / n_neg`, clamped to `[0, 1]`.
pub fn asymptotic_normal_ci(g: &ScoreGroups, level: f64) -> Result<AsymptoticResult> {
    check_level(level)?;
    let comps = placement_components(g)?;
    let auc = auc_half_ties(&pair_statistics(g)?).value;
    let var = comps.var_v10(auc) / comps.n_pos as f64 + comps.var_v01(auc) / comps.n_neg as f64;
    let se = var.max(0.0).sqrt();
    let z = normal::two_sided_z(level);
    Ok(AsymptoticResult {
        convention: PathConvention::Linear,
        auc,
        se,
        ci_lower: (auc - z * se).clamp(0.0, 1.0),
        ci_upper: (auc + z * se).clamp(0.0, 1.0),
        level,
    })
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "confidence level must lie strictly between 0 and 1, got {level}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapResult {
    pub convention: PathConvention,
    pub observed: f64,
    pub bias: f64,
    pub se: f64,
    pub ci_normal: Interval,
    pub ci_percentile: Interval,
    pub ci_bc: Interval,
    pub replicates: u32,
    /// Resamples thrown away because one class was missing.
    pub redraws: u64,
    pub seed: u64,
    pub level: f64,
}

/// Raw replicate AUCs, in replicate order.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapSample {
    pub convention: PathConvention,
    pub observed: f64,
    pub values: Vec<f64>,
    pub redraws: u64,
    pub seed: u64,
}

/// Draws `replicates` paired resamples of all rows and records the AUC of
/// each. Replicate `r` uses random stream `r`. A resample missing a class is
/// redrawn from the same stream.
pub fn bootstrap_replicates(
    d: &Dataset,
    convention: PathConvention,
    replicates: u32,
    seed: u64,
) -> Result<BootstrapSample> {
    d.require_both_classes()?;
    if replicates < MIN_REPLICATES {
        return Err(Error::Argument(format!(
            "bootstrap needs at least {MIN_REPLICATES} replicates, got {replicates}"
        )));
    }
    let groups = d.groups().as_slice();
    let observed = auc_for_convention(&pair_statistics(d.groups())?, convention).value;
    let sampler = cell_sampler(groups);
    let n = d.len();

    let one = |r: u32| -> (f64, u64) {
        let mut rng = stream_rng(seed, u64::from(r));
        let mut cells: Vec<ScoreGroup> = groups
            .iter()
            .map(|g| ScoreGroup {
                score: g.score,
                neg: 0,
                pos: 0,
            })
            .collect();
        let mut redraws = 0;
        loop {
            cells.iter_mut().for_each(|c| {
                c.neg = 0;
                c.pos = 0;
            });
            let (mut n_pos, mut n_neg) = (0u64, 0u64);
            for _ in 0..n {
                let idx = sampler.sample(&mut rng);
                let cell = &mut cells[idx / 2];
                if idx.is_multiple_of(2) {
                    cell.neg += 1;
                    n_neg += 1;
                } else {
                    cell.pos += 1;
                    n_pos += 1;
                }
            }
            if n_pos > 0 && n_neg > 0 {
                let p = pair_counts_from_cells(&cells, n_pos, n_neg);
                return (auc_for_convention(&p, convention).value, redraws);
            }
            redraws += 1;
        }
    };

    #[cfg(feature = "parallel")]
    let draws: Vec<(f64, u64)> = {
        use rayon::prelude::*;
        (0..replicates).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let draws: Vec<(f64, u64)> = (0..replicates).map(one).collect();

    Ok(BootstrapSample {
        convention,
        observed,
        redraws: draws.iter().map(|d| d.1).sum(),
        values: draws.into_iter().map(|d| d.0).collect(),
        seed,
    })
}

pub fn bootstrap_auc(
    d: &Dataset,
    convention: PathConvention,
    replicates: u32,
    seed: u64,
    level: f64,
) -> Result<BootstrapResult> {
    check_level(level)?;
    let sample = bootstrap_replicates(d, convention, replicates, seed)?;
    Ok(summarize_bootstrap(&sample, level))
}

/// Bias, standard error and the three intervals from replicate values.
pub fn summarize_bootstrap(sample: &BootstrapSample, level: f64) -> BootstrapResult {
    let b = sample.values.len();
    let observed = sample.observed;
    let mean = sample.values.iter().sum::<f64>() / b as f64;
    let se = (sample
        .values
        .iter()
        .map(|v| (v - mean).powi(2))
        .sum::<f64>()
        / (b - 1) as f64)
        .sqrt();

    let mut sorted = sample.values.clone();
    sorted.sort_by(f64::total_cmp);
    let alpha = 1.0 - level;
    let z = normal::two_sided_z(level);

    let below = sorted.iter().filter(|&&v| v < observed).count();
    let z0 = normal::inverse_cdf(below as f64 / b as f64);
    let bc_lo = normal::cdf(2.0 * z0 - z);
    let bc_hi = normal::cdf(2.0 * z0 + z);

    BootstrapResult {
        convention: sample.convention,
        observed,
        bias: mean - observed,
        se,
        ci_normal: Interval {
            lower: observed - z * se,
            upper: observed + z * se,
        },
        ci_percentile: Interval {
            lower: quantile_sorted(&sorted, alpha / 2.0),
            upper: quantile_sorted(&sorted, 1.0 - alpha / 2.0),
        },
        ci_bc: Interval {
            lower: quantile_sorted(&sorted, bc_lo),
            upper: quantile_sorted(&sorted, bc_hi),
        },
        replicates: b as u32,
        redraws: sample.redraws,
        seed: sample.seed,
        level,
    }
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let p = if p.is_nan() { 0.5 } else { p.clamp(0.0, 1.0) };
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}
