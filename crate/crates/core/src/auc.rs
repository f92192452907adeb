//! AUC under each tie convention, three ways: cross-class pair counts,
//! closed forms for a two-valued predictor, and trapezoidal integration of
//! the matching ROC polyline.
//!
//! Pair counts are exact integers; the only rounding is the final division.

use serde::Serialize;

use crate::data::{confusion_for_groups, ConfusionTable, ScoreGroup, ScoreGroups};
use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::roc::{PathConvention, RocPolyline};

/// Counts over all positive x negative pairs of whether the positive scored
/// higher (`gt`), the same (`eq`) or lower (`lt`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub gt: u128,
    pub eq: u128,
    pub lt: u128,
    pub n_pos: u64,
    pub n_neg: u64,
}

impl PairCounts {
    pub fn total(&self) -> u128 {
        self.n_pos as u128 * self.n_neg as u128
    }

    /// Fraction of cross-class pairs that are tied.
    pub fn tie_mass(&self) -> ExactRatio {
        ExactRatio::new(self.eq, self.total())
    }

    /// Counts after swapping which class is called positive.
    pub fn label_swapped(&self) -> PairCounts {
        PairCounts {
            gt: self.lt,
            eq: self.eq,
            lt: self.gt,
            n_pos: self.n_neg,
            n_neg: self.n_pos,
        }
    }
}

/// An AUC value tagged with the tie convention that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AucEstimate {
    pub convention: PathConvention,
    pub value: f64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRatio>,
}

impl AucEstimate {
    pub fn from_exact(convention: PathConvention, exact: ExactRatio) -> Self {
        AucEstimate {
            convention,
            value: exact.to_f64(),
            exact: Some(exact),
        }
    }
}

/// Pair counts from the score groups via running class totals.
pub fn pair_statistics(g: &ScoreGroups) -> Result<PairCounts> {
    g.require_both_classes()?;
    Ok(pair_counts_from_cells(g.as_slice(), g.n_pos(), g.n_neg()))
}

/// `cells` must be in strictly descending score order; empty cells are fine.
pub(crate) fn pair_counts_from_cells(cells: &[ScoreGroup], n_pos: u64, n_neg: u64) -> PairCounts {
    let (mut gt, mut eq, mut lt) = (0u128, 0u128, 0u128);
    let mut neg_above = 0u64;
    for c in cells {
        let pos = c.pos as u128;
        let neg_below = n_neg - neg_above - c.neg;
        gt += pos * neg_below as u128;
        eq += pos * c.neg as u128;
        lt += pos * neg_above as u128;
        neg_above += c.neg;
    }
    PairCounts {
        gt,
        eq,
        lt,
        n_pos,
        n_neg,
    }
}

/// Ties earn nothing: `gt / pairs`.
pub fn auc_strict(p: &PairCounts) -> AucEstimate {
    AucEstimate::from_exact(
        PathConvention::PessimisticStep,
        ExactRatio::new(p.gt, p.total()),
    )
}

/// Ties earn half: `(2 gt + eq) / (2 pairs)`.
pub fn auc_half_ties(p: &PairCounts) -> AucEstimate {
    AucEstimate::from_exact(
        PathConvention::Linear,
        ExactRatio::new(2 * p.gt + p.eq, 2 * p.total()),
    )
}

/// Ties earn full credit: `(gt + eq) / pairs`.
pub fn auc_optimistic(p: &PairCounts) -> AucEstimate {
    AucEstimate::from_exact(
        PathConvention::OptimisticStep,
        ExactRatio::new(p.gt + p.eq, p.total()),
    )
}

pub fn auc_for_convention(p: &PairCounts, convention: PathConvention) -> AucEstimate {
    match convention {
        PathConvention::PessimisticStep => auc_strict(p),
        PathConvention::Linear => auc_half_ties(p),
        PathConvention::OptimisticStep => auc_optimistic(p),
    }
}

/// AUC of a binary predictor from its single operating point.
///
/// With sensitivity `se` and specificity `sp`, the strict AUC is `se * sp`,
/// the half-ties AUC `(se + sp) / 2` and the optimistic AUC
/// `se*sp + se*(1-sp) + (1-se)*sp`. Only meaningful when `ct` is taken at
/// the upper of the two score values.
pub fn auc_binary_closed_form(ct: &ConfusionTable, convention: PathConvention) -> AucEstimate {
    let (tp, fp, tn, fn_) = (ct.tp as u128, ct.fp as u128, ct.tn as u128, ct.fn_ as u128);
    let (n_pos, n_neg) = (ct.n_pos() as u128, ct.n_neg() as u128);
    let exact = match convention {
        PathConvention::PessimisticStep => ExactRatio::new(tp * tn, n_pos * n_neg),
        PathConvention::Linear => ExactRatio::new(tp * n_neg + tn * n_pos, 2 * n_pos * n_neg),
        PathConvention::OptimisticStep => {
            ExactRatio::new(tp * tn + tp * fp + fn_ * tn, n_pos * n_neg)
        }
    };
    AucEstimate::from_exact(convention, exact)
}

/// Closed-form AUC after checking the predictor takes exactly two values.
pub fn binary_auc(g: &ScoreGroups, convention: PathConvention) -> Result<AucEstimate> {
    g.require_both_classes()?;
    if g.n_distinct() != 2 {
        return Err(Error::NotBinary {
            n_distinct: g.n_distinct(),
        });
    }
    let ct = confusion_for_groups(g, g.as_slice()[0].score)?;
    Ok(auc_binary_closed_form(&ct, convention))
}

/// Trapezoidal area under a polyline.
///
/// `value` is the floating-point trapezoid sum over the rates; `exact` is the
/// same sum carried out on the integer counts.
pub fn auc_from_polyline(pl: &RocPolyline) -> AucEstimate {
    let mut area = 0.0;
    let mut twice_area_counts = 0u128;
    for w in pl.points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
        twice_area_counts += (b.fp - a.fp) as u128 * (a.tp + b.tp) as u128;
    }
    let den = 2 * pl.n_pos as u128 * pl.n_neg as u128;
    AucEstimate {
        convention: pl.convention,
        value: area,
        exact: Some(ExactRatio::new(twice_area_counts, den)),
    }
}
