//! Convention-disclosure report.
//!
//! Puts the strict, half-ties and optimistic AUCs side by side with the tie
//! diagnostics that explain how far apart they are, so a reader can tell
//! which number a tool would have printed and why.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::auc::{
    auc_half_ties, auc_optimistic, auc_strict, pair_statistics, AucEstimate, PairCounts,
};
use crate::data::{Dataset, ScoreGroups};
use crate::error::Result;
use crate::inference::{asymptotic_normal_ci, bootstrap_auc, AsymptoticResult, BootstrapResult};
use crate::ratio::ExactRatio;
use crate::roc::{roc_path, roc_vertices, PathConvention, RocPolyline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NoticeCode {
    BinaryPredictor,
    HighTieMass,
    DiscretePredictor,
    NearlyIdenticalToDichotomy,
}

impl NoticeCode {
    pub fn as_str(self) -> &'static str {
        match self {
            NoticeCode::BinaryPredictor => "BINARY_PREDICTOR",
            NoticeCode::HighTieMass => "HIGH_TIE_MASS",
            NoticeCode::DiscretePredictor => "DISCRETE_PREDICTOR",
            NoticeCode::NearlyIdenticalToDichotomy => "NEARLY_IDENTICAL_TO_DICHOTOMY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Notice {
    pub code: NoticeCode,
    pub message: String,
}

/// Thresholds for diagnostics. The defaults flag tie mass above 0.1 and
/// predictors with at most 10 distinct values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticPolicy {
    pub high_tie_mass: f64,
    pub discrete_max_distinct: usize,
    /// Largest gap at which a dichotomized predictor's AUC counts as
    /// "nearly identical" to the full predictor's.
    pub near_identical: f64,
}

impl Default for DiagnosticPolicy {
    fn default() -> Self {
        DiagnosticPolicy {
            high_tie_mass: 0.1,
            discrete_max_distinct: 10,
            near_identical: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub n_distinct: usize,
    pub tie_mass: f64,
    pub tie_mass_exact: ExactRatio,
    pub is_binary: bool,
    /// Optimistic minus strict AUC; always equal to the tie mass.
    pub convention_spread: f64,
    pub warnings: Vec<Notice>,
}

pub fn diagnose(g: &ScoreGroups, policy: &DiagnosticPolicy) -> Result<Diagnostics> {
    let pairs = pair_statistics(g)?;
    Ok(diagnose_pairs(g, &pairs, policy))
}

fn diagnose_pairs(g: &ScoreGroups, pairs: &PairCounts, policy: &DiagnosticPolicy) -> Diagnostics {
    let n_distinct = g.n_distinct();
    let tie_mass_exact = pairs.tie_mass();
    let tie_mass = tie_mass_exact.to_f64();
    let strict = auc_strict(pairs).exact.expect("pair-based");
    let optimistic = auc_optimistic(pairs).exact.expect("pair-based");
    let convention_spread = ExactRatio::new(optimistic.num - strict.num, strict.den).to_f64();
    let is_binary = n_distinct == 2;

    let mut warnings = Vec::new();
    if is_binary {
        warnings.push(Notice {
            code: NoticeCode::BinaryPredictor,
            message: "predictor takes two values: the ROC curve has a single operating point, \
                      the half-ties AUC equals (sensitivity + specificity) / 2 and the strict AUC \
                      equals sensitivity * specificity"
                .into(),
        });
    }
    if tie_mass > policy.high_tie_mass {
        warnings.push(Notice {
            code: NoticeCode::HighTieMass,
            message: format!(
                "{:.1}% of positive/negative pairs are tied; tie handling moves the AUC across \
                 [{:.4}, {:.4}]",
                100.0 * tie_mass,
                strict.to_f64(),
                optimistic.to_f64()
            ),
        });
    }
    if n_distinct <= policy.discrete_max_distinct && !is_binary {
        warnings.push(Notice {
            code: NoticeCode::DiscretePredictor,
            message: format!(
                "predictor takes only {n_distinct} distinct values; report which tie convention \
                 the AUC uses"
            ),
        });
    }
    Diagnostics {
        n_distinct,
        tie_mass,
        tie_mass_exact,
        is_binary,
        convention_spread,
        warnings,
    }
}

/// The single-threshold collapse of a multi-valued predictor whose
/// half-ties AUC comes closest to the predictor's own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dichotomy {
    /// Scores at or above this value are called positive.
    pub threshold: f64,
    pub half_ties: AucEstimate,
    pub delta: f64,
    pub nearly_identical: bool,
}

fn closest_dichotomy(
    g: &ScoreGroups,
    pairs: &PairCounts,
    policy: &DiagnosticPolicy,
) -> Option<Dichotomy> {
    if g.n_distinct() < 3 {
        return None;
    }
    let full = auc_half_ties(pairs).value;
    let (n_pos, n_neg) = (g.n_pos() as u128, g.n_neg() as u128);
    let (mut tp, mut fp) = (0u128, 0u128);
    let mut best: Option<Dichotomy> = None;
    // Cutting below the last group would call everything positive.
    for grp in &g.as_slice()[..g.len() - 1] {
        tp += grp.pos as u128;
        fp += grp.neg as u128;
        let tn = n_neg - fp;
        let exact = ExactRatio::new(tp * n_neg + tn * n_pos, 2 * n_pos * n_neg);
        let half_ties = AucEstimate::from_exact(PathConvention::Linear, exact);
        let delta = (half_ties.value - full).abs();
        if best.as_ref().is_none_or(|b| delta < b.delta) {
            best = Some(Dichotomy {
                threshold: grp.score,
                half_ties,
                delta,
                nearly_identical: delta <= policy.near_identical,
            });
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapOptions {
    pub replicates: u32,
    pub seed: u64,
    pub level: f64,
    pub conventions: Vec<PathConvention>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub policy: DiagnosticPolicy,
    /// Confidence level for the asymptotic interval; `None` skips it.
    pub asymptotic_level: Option<f64>,
    pub bootstrap: Option<BootstrapOptions>,
    pub curves: Vec<PathConvention>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            policy: DiagnosticPolicy::default(),
            asymptotic_level: Some(0.95),
            bootstrap: None,
            curves: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AucTriple {
    pub strict: AucEstimate,
    pub half_ties: AucEstimate,
    pub optimistic: AucEstimate,
}

impl AucTriple {
    pub fn from_pairs(p: &PairCounts) -> Self {
        AucTriple {
            strict: auc_strict(p),
            half_ties: auc_half_ties(p),
            optimistic: auc_optimistic(p),
        }
    }

    pub fn get(&self, c: PathConvention) -> &AucEstimate {
        match c {
            PathConvention::PessimisticStep => &self.strict,
            PathConvention::Linear => &self.half_ties,
            PathConvention::OptimisticStep => &self.optimistic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub n: u64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub auc: AucTriple,
    /// Strict AUC with the outcome labels swapped.
    pub reversed_strict: AucEstimate,
    pub pairs: PairCounts,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dichotomy: Option<Dichotomy>,
    pub notes: Vec<Notice>,
    pub asymptotic: Option<AsymptoticResult>,
    /// Keyed by convention name.
    pub bootstrap: Option<BTreeMap<PathConvention, BootstrapResult>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<RocPolyline>,
}

pub fn build_report(d: &Dataset, options: &ReportOptions) -> Result<Report> {
    let g = d.groups();
    let pairs = pair_statistics(g)?;
    let auc = AucTriple::from_pairs(&pairs);
    let reversed_strict = auc_strict(&pairs.label_swapped());
    let diagnostics = diagnose_pairs(g, &pairs, &options.policy);

    let dichotomy = closest_dichotomy(g, &pairs, &options.policy);
    let mut notes = Vec::new();
    if let Some(dich) = dichotomy.as_ref().filter(|d| d.nearly_identical) {
        notes.push(Notice {
            code: NoticeCode::NearlyIdenticalToDichotomy,
            message: format!(
                "half-ties AUC {:.5} is within {:.5} of the binary predictor 'score >= {}' \
                 (half-ties AUC {:.5}); the extra score levels add almost nothing under linear \
                 interpolation",
                auc.half_ties.value, dich.delta, dich.threshold, dich.half_ties.value
            ),
        });
    }

    let asymptotic = options
        .asymptotic_level
        .map(|level| asymptotic_normal_ci(g, level))
        .transpose()?;

    let bootstrap = match &options.bootstrap {
        Some(b) => {
            let mut out = BTreeMap::new();
            for &c in &b.conventions {
                out.insert(c, bootstrap_auc(d, c, b.replicates, b.seed, b.level)?);
            }
            Some(out)
        }
        None => None,
    };

    let curves = if options.curves.is_empty() {
        Vec::new()
    } else {
        let v = roc_vertices(g)?;
        options.curves.iter().map(|&c| roc_path(&v, c)).collect()
    };

    Ok(Report {
        n: d.len(),
        n_pos: d.n_pos(),
        n_neg: d.n_neg(),
        auc,
        reversed_strict,
        pairs,
        diagnostics,
        dichotomy,
        notes,
        asymptotic,
        bootstrap,
        curves,
    })
}

impl Report {
    pub fn estimate(&self, c: PathConvention) -> &AucEstimate {
        self.auc.get(c)
    }

    /// Plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n = {}  (positives {}, negatives {}, pairs {})",
            self.n,
            self.n_pos,
            self.n_neg,
            self.pairs.total()
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<12} {:>10}  {:>22}", "convention", "AUC", "exact");
        for c in PathConvention::ALL {
            let e = self.estimate(c);
            let exact = e.exact.map(|r| r.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{:<12} {:>10.7}  {:>22}", c.auc_name(), e.value, exact);
        }
        let rs = &self.reversed_strict;
        let _ = writeln!(
            out,
            "{:<12} {:>10.7}  {:>22}",
            "rev. strict",
            rs.value,
            rs.exact.map(|r| r.to_string()).unwrap_or_default()
        );
        let d = &self.diagnostics;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "distinct scores {}, tie mass {:.7}, binary {}",
            d.n_distinct, d.tie_mass, d.is_binary
        );
        if let Some(a) = &self.asymptotic {
            let _ = writeln!(
                out,
                "asymptotic ({}): se {:.4}, {:.0}% CI [{:.5}, {:.5}]",
                a.convention,
                a.se,
                100.0 * a.level,
                a.ci_lower,
                a.ci_upper
            );
        }
        if let Some(boot) = &self.bootstrap {
            for (c, b) in boot {
                let _ = writeln!(
                    out,
                    "bootstrap ({c}, B={}, seed {}): observed {:.7}, bias {:.7}, se {:.7}",
                    b.replicates, b.seed, b.observed, b.bias, b.se
                );
                for (tag, ci) in [("N", b.ci_normal), ("P", b.ci_percentile), ("BC", b.ci_bc)] {
                    let _ = writeln!(out, "    [{:.7}, {:.7}] ({tag})", ci.lower, ci.upper);
                }
            }
        }
        for w in d.warnings.iter().chain(&self.notes) {
            let _ = writeln!(out, "{}: {}", w.code.as_str(), w.message);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::fixtures::*;
    use crate::data::load_rows;
    use crate::inference::Interval;

    fn codes(ws: &[Notice]) -> Vec<NoticeCode> {
        ws.iter().map(|w| w.code).collect()
    }

    #[test]
    fn binary_table_diagnostics() {
        let d = diagnose(binary_table().groups(), &DiagnosticPolicy::default()).unwrap();
        assert_eq!(d.n_distinct, 2);
        assert!(d.is_binary);
        assert_eq!(d.tie_mass_exact, ExactRatio::new(3420, 7140));
        assert!((d.tie_mass - 0.479).abs() < 5e-4);
        assert_eq!(d.convention_spread, d.tie_mass);
        let c = codes(&d.warnings);
        assert!(c.contains(&NoticeCode::BinaryPredictor));
        assert!(c.contains(&NoticeCode::HighTieMass));
    }

    #[test]
    fn four_level_diagnostics() {
        let d = diagnose(four_level_table().groups(), &DiagnosticPolicy::default()).unwrap();
        assert_eq!(d.n_distinct, 4);
        assert!(!d.is_binary);
        assert_eq!(d.tie_mass_exact, ExactRatio::new(1825, 7140));
        assert!((d.tie_mass - 0.256).abs() < 5e-4);
        let c = codes(&d.warnings);
        assert!(c.contains(&NoticeCode::DiscretePredictor));
        assert!(c.contains(&NoticeCode::HighTieMass));
    }

    #[test]
    fn continuous_scores_raise_nothing() {
        let rows = (0..200).map(|i| (i as f64 * 0.37 + (i % 7) as f64 * 1e-3, (i % 3 == 0) as i64));
        let d = load_rows(rows).unwrap();
        let diag = diagnose(d.groups(), &DiagnosticPolicy::default()).unwrap();
        assert_eq!(diag.tie_mass, 0.0);
        assert!(diag.warnings.is_empty());
    }

    #[test]
    fn policy_is_configurable() {
        let policy = DiagnosticPolicy {
            high_tie_mass: 0.5,
            discrete_max_distinct: 3,
            ..Default::default()
        };
        let d = diagnose(four_level_table().groups(), &policy).unwrap();
        assert!(d.warnings.is_empty());
    }

    #[test]
    fn binary_table_report() {
        let r = build_report(&binary_table(), &ReportOptions::default()).unwrap();
        assert_eq!(format!("{:.4}", r.auc.strict.value), "0.3641");
        assert_eq!(format!("{:.4}", r.auc.half_ties.value), "0.6036");
        assert_eq!(format!("{:.4}", r.auc.optimistic.value), "0.8431");
        assert_eq!(format!("{:.4}", r.reversed_strict.value), "0.1569");
        assert_eq!(
            r.reversed_strict.exact.unwrap(),
            ExactRatio::new(1120, 7140)
        );
        assert!(r.dichotomy.is_none());
        let a = r.asymptotic.unwrap();
        assert_eq!(format!("{:.4}", a.se), "0.0378");

        let text = r.to_text();
        assert!(text.contains("half_ties"));
        assert!(text.contains("BINARY_PREDICTOR"));
    }

    #[test]
    fn four_level_report_notes_dichotomy() {
        let r = build_report(&four_level_table(), &ReportOptions::default()).unwrap();
        assert!((r.auc.half_ties.value - 0.60357).abs() < 5e-6);
        let dich = r.dichotomy.as_ref().unwrap();
        assert_eq!(dich.threshold, 3.0);
        assert_eq!(dich.half_ties.exact.unwrap(), ExactRatio::new(4310, 7140));
        assert!(dich.delta < 1e-3);
        assert_eq!(
            codes(&r.notes),
            vec![NoticeCode::NearlyIdenticalToDichotomy]
        );
    }

    #[test]
    fn separated_report() {
        let opts = ReportOptions {
            bootstrap: Some(BootstrapOptions {
                replicates: 100,
                seed: 1,
                level: 0.95,
                conventions: PathConvention::ALL.to_vec(),
            }),
            ..Default::default()
        };
        let r = build_report(&separated(), &opts).unwrap();
        for c in PathConvention::ALL {
            assert_eq!(r.estimate(c).value, 1.0);
            assert_eq!(
                r.bootstrap.as_ref().unwrap()[&c].ci_percentile,
                Interval {
                    lower: 1.0,
                    upper: 1.0
                }
            );
        }
        assert!(r
            .diagnostics
            .warnings
            .iter()
            .all(|w| w.code != NoticeCode::HighTieMass));
        assert_eq!(r.diagnostics.tie_mass, 0.0);
    }

    #[test]
    fn serialized_aucs_carry_tags() {
        let opts = ReportOptions {
            bootstrap: Some(BootstrapOptions {
                replicates: 100,
                seed: 7,
                level: 0.95,
                conventions: vec![PathConvention::PessimisticStep],
            }),
            curves: vec![PathConvention::Linear],
            ..Default::default()
        };
        let r = build_report(&binary_table(), &opts).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["strict", "half_ties", "optimistic"] {
            assert_eq!(v["auc"][key]["convention"], key);
            assert!(v["auc"][key]["num"].is_u64());
        }
        assert_eq!(v["reversed_strict"]["convention"], "strict");
        assert_eq!(v["asymptotic"]["convention"], "half_ties");
        assert_eq!(v["bootstrap"]["strict"]["convention"], "strict");
        assert_eq!(v["curves"][0]["convention"], "half_ties");
        assert_eq!(v["auc"]["strict"]["num"], 2600);
        assert_eq!(v["auc"]["strict"]["den"], 7140);
        assert_eq!(
            v["diagnostics"]["warnings"][0]["code"],
            NoticeCode::BinaryPredictor.as_str()
        );

        // Any object holding a "value" must also say which convention it is.
        fn walk(v: &serde_json::Value) {
            if let Some(obj) = v.as_object() {
                if obj.contains_key("value") {
                    assert!(obj.contains_key("convention"), "untagged value in {v}");
                }
                obj.values().for_each(walk);
            } else if let Some(arr) = v.as_array() {
                arr.iter().for_each(walk);
            }
        }
        walk(&v);
    }
}
