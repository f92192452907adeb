//! Scored binary-outcome data and the tie structure derived from it.
//!
//! A [`Dataset`] is built either from individual rows ([`load_rows`]) or from
//! a cross-tabulation of score values against outcome counts ([`load_counts`]).
//! Either way it carries its [`ScoreGroups`]: distinct scores in strictly
//! descending order with per-class counts. Every other computation in the
//! crate works from the groups, so a counts table with a few cells never gets
//! expanded into rows.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn from_code(code: i64) -> Result<Self> {
        match code {
            0 => Ok(Label::Negative),
            1 => Ok(Label::Positive),
            other => Err(Error::Ingest(format!("label must be 0 or 1, got {other}"))),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::Negative => Label::Positive,
            Label::Positive => Label::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub score: f64,
    pub label: Label,
}

/// One distinct score value with the number of negatives and positives at it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreGroup {
    pub score: f64,
    pub neg: u64,
    pub pos: u64,
}

/// Distinct score values, strictly descending, with per-class counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreGroups {
    groups: Vec<ScoreGroup>,
    n_pos: u64,
    n_neg: u64,
}

impl ScoreGroups {
    /// Builds groups from (score, neg, pos) cells in any order. Cells sharing a
    /// score are merged and empty cells dropped.
    fn from_cells(mut cells: Vec<ScoreGroup>) -> Self {
        cells.sort_by(|a, b| b.score.total_cmp(&a.score));
        let mut groups: Vec<ScoreGroup> = Vec::with_capacity(cells.len());
        for cell in cells {
            if cell.neg == 0 && cell.pos == 0 {
                continue;
            }
            match groups.last_mut() {
                Some(last) if last.score == cell.score => {
                    last.neg += cell.neg;
                    last.pos += cell.pos;
                }
                _ => groups.push(cell),
            }
        }
        let n_pos = groups.iter().map(|g| g.pos).sum();
        let n_neg = groups.iter().map(|g| g.neg).sum();
        ScoreGroups {
            groups,
            n_pos,
            n_neg,
        }
    }

    pub fn as_slice(&self) -> &[ScoreGroup] {
        &self.groups
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScoreGroup> {
        self.groups.iter()
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn n_pos(&self) -> u64 {
        self.n_pos
    }

    pub fn n_neg(&self) -> u64 {
        self.n_neg
    }

    pub fn n_distinct(&self) -> usize {
        self.groups.len()
    }

    pub fn require_both_classes(&self) -> Result<()> {
        if self.n_pos == 0 || self.n_neg == 0 {
            return Err(Error::DegenerateClass {
                n_pos: self.n_pos,
                n_neg: self.n_neg,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a ScoreGroups {
    type Item = &'a ScoreGroup;
    type IntoIter = std::slice::Iter<'a, ScoreGroup>;

    fn into_iter(self) -> Self::IntoIter {
        self.groups.iter()
    }
}

/// Immutable collection of scored observations.
///
/// Row-loaded datasets keep their samples in input order; count-loaded
/// datasets only keep the groups.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Option<Vec<Sample>>,
    groups: ScoreGroups,
}

impl Dataset {
    pub fn n_pos(&self) -> u64 {
        self.groups.n_pos
    }

    pub fn n_neg(&self) -> u64 {
        self.groups.n_neg
    }

    pub fn len(&self) -> u64 {
        self.groups.n_pos + self.groups.n_neg
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples in input order, when the dataset was loaded from rows.
    pub fn rows(&self) -> Option<&[Sample]> {
        self.rows.as_deref()
    }

    pub fn groups(&self) -> &ScoreGroups {
        &self.groups
    }

    pub fn require_both_classes(&self) -> Result<()> {
        self.groups.require_both_classes()
    }

    /// Same observations with every label flipped.
    pub fn with_labels_swapped(&self) -> Dataset {
        let rows = self.rows.as_ref().map(|rows| {
            rows.iter()
                .map(|s| Sample {
                    score: s.score,
                    label: s.label.flipped(),
                })
                .collect()
        });
        let cells = self
            .groups
            .iter()
            .map(|g| ScoreGroup {
                score: g.score,
                neg: g.pos,
                pos: g.neg,
            })
            .collect();
        Dataset {
            rows,
            groups: ScoreGroups::from_cells(cells),
        }
    }

    /// Applies `f` to every score. Values that collide after mapping merge
    /// into one group.
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> Result<Dataset> {
        let apply = |score: f64| -> Result<f64> {
            let mapped = f(score);
            if !mapped.is_finite() {
                return Err(Error::Ingest(format!(
                    "score transform produced non-finite value {mapped} from {score}"
                )));
            }
            Ok(normalize_zero(mapped))
        };
        let rows = match &self.rows {
            Some(rows) => Some(
                rows.iter()
                    .map(|s| {
                        Ok(Sample {
                            score: apply(s.score)?,
                            label: s.label,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let cells = self
            .groups
            .iter()
            .map(|g| {
                Ok(ScoreGroup {
                    score: apply(g.score)?,
                    ..*g
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset {
            rows,
            groups: ScoreGroups::from_cells(cells),
        })
    }
}

fn normalize_zero(score: f64) -> f64 {
    // -0.0 and 0.0 must land in the same group under total_cmp.
    score + 0.0
}

fn check_score(score: f64) -> Result<f64> {
    if score.is_finite() {
        Ok(normalize_zero(score))
    } else {
        Err(Error::Ingest(format!("score must be finite, got {score}")))
    }
}

/// Builds a dataset from `(score, label)` pairs, labels coded 0/1.
pub fn load_rows<I>(records: I) -> Result<Dataset>
where
    I: IntoIterator<Item = (f64, i64)>,
{
    let rows = records
        .into_iter()
        .enumerate()
        .map(|(i, (score, label))| {
            let score = check_score(score).map_err(|e| at_record(i, e))?;
            let label = Label::from_code(label).map_err(|e| at_record(i, e))?;
            Ok(Sample { score, label })
        })
        .collect::<Result<Vec<_>>>()?;
    from_samples(rows)
}

/// Builds a dataset from already-typed samples.
pub fn from_samples(rows: Vec<Sample>) -> Result<Dataset> {
    if rows.is_empty() {
        return Err(Error::Ingest("no records".into()));
    }
    for (i, s) in rows.iter().enumerate() {
        check_score(s.score).map_err(|e| at_record(i, e))?;
    }
    let rows: Vec<Sample> = rows
        .into_iter()
        .map(|s| Sample {
            score: normalize_zero(s.score),
            label: s.label,
        })
        .collect();
    let cells = rows
        .iter()
        .map(|s| match s.label {
            Label::Negative => ScoreGroup {
                score: s.score,
                neg: 1,
                pos: 0,
            },
            Label::Positive => ScoreGroup {
                score: s.score,
                neg: 0,
                pos: 1,
            },
        })
        .collect();
    Ok(Dataset {
        rows: Some(rows),
        groups: ScoreGroups::from_cells(cells),
    })
}

/// Builds a dataset from `(score_value, neg_count, pos_count)` cells.
///
/// Score values must be distinct. Cells with both counts zero are dropped,
/// but at least one observation must remain.
pub fn load_counts<I>(records: I) -> Result<Dataset>
where
    I: IntoIterator<Item = (f64, i64, i64)>,
{
    let mut cells = Vec::new();
    for (i, (score, neg, pos)) in records.into_iter().enumerate() {
        let score = check_score(score).map_err(|e| at_record(i, e))?;
        if neg < 0 || pos < 0 {
            return Err(at_record(
                i,
                Error::Ingest(format!(
                    "counts must be nonnegative, got neg={neg}, pos={pos}"
                )),
            ));
        }
        cells.push(ScoreGroup {
            score,
            neg: neg as u64,
            pos: pos as u64,
        });
    }
    let mut seen: Vec<f64> = cells.iter().map(|c| c.score).collect();
    seen.sort_by(f64::total_cmp);
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Ingest(format!("duplicate score value {}", w[0])));
    }
    if cells.iter().all(|c| c.neg == 0 && c.pos == 0) {
        return Err(Error::Ingest("all counts are zero".into()));
    }
    Ok(Dataset {
        rows: None,
        groups: ScoreGroups::from_cells(cells),
    })
}

fn at_record(index: usize, err: Error) -> Error {
    match err {
        Error::Ingest(msg) => Error::Ingest(format!("record {}: {msg}", index + 1)),
        other => other,
    }
}

/// Distinct scores of the dataset, descending, with per-class counts.
pub fn group_by_score(d: &Dataset) -> ScoreGroups {
    d.groups.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfusionTable {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionTable {
    pub fn n_pos(&self) -> u64 {
        self.tp + self.fn_
    }

    pub fn n_neg(&self) -> u64 {
        self.tn + self.fp
    }

    pub fn sensitivity(&self) -> f64 {
        self.tp as f64 / self.n_pos() as f64
    }

    pub fn specificity(&self) -> f64 {
        self.tn as f64 / self.n_neg() as f64
    }
}

/// Confusion table for the rule "predict positive when score >= threshold".
///
/// Infinite thresholds are accepted: `-inf` predicts everything positive and
/// `+inf` nothing.
pub fn confusion_at_threshold(d: &Dataset, threshold: f64) -> Result<ConfusionTable> {
    confusion_for_groups(&d.groups, threshold)
}

pub(crate) fn confusion_for_groups(g: &ScoreGroups, threshold: f64) -> Result<ConfusionTable> {
    g.require_both_classes()?;
    if threshold.is_nan() {
        return Err(Error::Argument("threshold is NaN".into()));
    }
    let (tp, fp) = g
        .iter()
        .take_while(|grp| grp.score.total_cmp(&threshold) != Ordering::Less)
        .fold((0, 0), |(tp, fp), grp| (tp + grp.pos, fp + grp.neg));
    Ok(ConfusionTable {
        tp,
        fp,
        tn: g.n_neg - fp,
        fn_: g.n_pos - tp,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn binary_table() -> Dataset {
        load_counts([(0.0, 52, 35), (1.0, 32, 50)]).unwrap()
    }

    pub fn four_level_table() -> Dataset {
        load_counts([(1.0, 31, 21), (2.0, 21, 14), (3.0, 11, 17), (4.0, 21, 33)]).unwrap()
    }

    pub fn binary_rows() -> Vec<(f64, i64)> {
        let mut rows = Vec::new();
        rows.extend(std::iter::repeat_n((0.0, 0), 52));
        rows.extend(std::iter::repeat_n((0.0, 1), 35));
        rows.extend(std::iter::repeat_n((1.0, 0), 32));
        rows.extend(std::iter::repeat_n((1.0, 1), 50));
        rows
    }

    pub fn constant(n_pos: usize, n_neg: usize) -> Dataset {
        let rows = std::iter::repeat_n((7.0, 1), n_pos).chain(std::iter::repeat_n((7.0, 0), n_neg));
        load_rows(rows).unwrap()
    }

    pub fn separated() -> Dataset {
        load_rows([(0.9, 1), (0.8, 1), (0.7, 1), (0.3, 0), (0.2, 0)]).unwrap()
    }
}
