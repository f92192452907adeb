//! ROC vertices and the three ways of joining them.
//!
//! Vertices come from sweeping the threshold down through the distinct
//! scores, so a tied group moves the curve diagonally. The path convention
//! decides how that diagonal is drawn: straight ([`PathConvention::Linear`]),
//! right-then-up ([`PathConvention::PessimisticStep`]) or up-then-right
//! ([`PathConvention::OptimisticStep`]).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::data::ScoreGroups;
use crate::error::{Error, Result};

/// How cross-class ties are credited, equivalently how tied segments of the
/// ROC curve are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum PathConvention {
    /// Ties get no credit; lower staircase.
    PessimisticStep,
    /// Ties get half credit; straight segments.
    #[default]
    Linear,
    /// Ties get full credit; upper staircase.
    OptimisticStep,
}

impl PathConvention {
    /// Ordered strict, half-ties, optimistic.
    pub const ALL: [PathConvention; 3] = [
        PathConvention::PessimisticStep,
        PathConvention::Linear,
        PathConvention::OptimisticStep,
    ];

    /// Name of the matching AUC tie rule.
    pub fn auc_name(self) -> &'static str {
        match self {
            PathConvention::PessimisticStep => "strict",
            PathConvention::Linear => "half_ties",
            PathConvention::OptimisticStep => "optimistic",
        }
    }

    /// Name of the curve shape.
    pub fn path_name(self) -> &'static str {
        match self {
            PathConvention::PessimisticStep => "pessimistic",
            PathConvention::Linear => "linear",
            PathConvention::OptimisticStep => "optimistic",
        }
    }
}

impl fmt::Display for PathConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.auc_name())
    }
}

impl FromStr for PathConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" | "pessimistic" | "pessimistic_step" => Ok(PathConvention::PessimisticStep),
            "half_ties" | "half" | "linear" | "trapezoidal" => Ok(PathConvention::Linear),
            "optimistic" | "optimistic_step" => Ok(PathConvention::OptimisticStep),
            other => Err(Error::Argument(format!("unknown tie convention '{other}'"))),
        }
    }
}

impl Serialize for PathConvention {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.auc_name())
    }
}

/// Threshold at which a vertex is reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Above every score: nothing predicted positive.
    AboveMax,
    Score(f64),
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::AboveMax => f.write_str("inf"),
            Threshold::Score(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threshold::AboveMax => s.serialize_str("inf"),
            Threshold::Score(v) => s.serialize_f64(*v),
        }
    }
}

/// A point of an ROC curve, with the cumulative counts behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Cumulative false positives.
    pub fp: u64,
    /// Cumulative true positives.
    pub tp: u64,
    /// `None` on corners inserted by a step convention.
    pub threshold: Option<Threshold>,
}

impl RocPoint {
    fn from_counts(fp: u64, tp: u64, n_neg: u64, n_pos: u64, threshold: Option<Threshold>) -> Self {
        RocPoint {
            fpr: fp as f64 / n_neg as f64,
            tpr: tp as f64 / n_pos as f64,
            fp,
            tp,
            threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocPolyline {
    pub convention: PathConvention,
    pub n_pos: u64,
    pub n_neg: u64,
    pub points: Vec<RocPoint>,
}

/// ROC vertices: `(0,0)` above the top score, then one vertex per distinct
/// score in descending order, ending at `(1,1)`.
pub fn roc_vertices(g: &ScoreGroups) -> Result<Vec<RocPoint>> {
    g.require_both_classes()?;
    let (n_neg, n_pos) = (g.n_neg(), g.n_pos());
    let mut points = Vec::with_capacity(g.len() + 1);
    points.push(RocPoint::from_counts(
        0,
        0,
        n_neg,
        n_pos,
        Some(Threshold::AboveMax),
    ));
    let (mut fp, mut tp) = (0, 0);
    for grp in g {
        fp += grp.neg;
        tp += grp.pos;
        points.push(RocPoint::from_counts(
            fp,
            tp,
            n_neg,
            n_pos,
            Some(Threshold::Score(grp.score)),
        ));
    }
    Ok(points)
}

/// Joins vertices under a path convention.
///
/// The step conventions insert one corner into every diagonal segment: at
/// `(next.fpr, prev.tpr)` for the lower staircase and `(prev.fpr, next.tpr)`
/// for the upper one. Segments that are already axis-parallel get no corner.
pub fn roc_path(vertices: &[RocPoint], convention: PathConvention) -> RocPolyline {
    let (n_neg, n_pos) = infer_totals(vertices);
    let mut points = Vec::with_capacity(vertices.len() * 2);
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            let prev = &vertices[i - 1];
            let diagonal = prev.fp != v.fp && prev.tp != v.tp;
            let corner = match convention {
                PathConvention::Linear => None,
                PathConvention::PessimisticStep => Some((v.fp, prev.tp)),
                PathConvention::OptimisticStep => Some((prev.fp, v.tp)),
            };
            if let (true, Some((fp, tp))) = (diagonal, corner) {
                points.push(RocPoint::from_counts(fp, tp, n_neg, n_pos, None));
            }
        }
        points.push(*v);
    }
    RocPolyline {
        convention,
        n_pos,
        n_neg,
        points,
    }
}

fn infer_totals(vertices: &[RocPoint]) -> (u64, u64) {
    vertices
        .last()
        .map(|v| (v.fp, v.tp))
        .expect("roc_path needs at least one vertex")
}

/// Polyline for a convention straight from the score groups.
pub fn roc_curve(g: &ScoreGroups, convention: PathConvention) -> Result<RocPolyline> {
    Ok(roc_path(&roc_vertices(g)?, convention))
}

impl RocPolyline {
    /// True positive rate at false positive rate `x`. Where the curve is
    /// vertical at `x`, returns the top of the vertical run.
    pub fn tpr_at(&self, x: f64) -> f64 {
        let pts = &self.points;
        let mut best: f64 = 0.0;
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if x < a.fpr || x > b.fpr {
                continue;
            }
            let y = if b.fpr == a.fpr {
                b.tpr
            } else {
                a.tpr + (b.tpr - a.tpr) * (x - a.fpr) / (b.fpr - a.fpr)
            };
            best = best.max(y);
        }
        best
    }

    /// Minimal SVG of the curve against the chance diagonal.
    pub fn to_svg(&self, size: u32) -> String {
        let s = size as f64;
        let pad = s * 0.08;
        let span = s - 2.0 * pad;
        let map = |p: &RocPoint| (pad + p.fpr * span, s - pad - p.tpr * span);
        let path: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
        ));
        svg.push_str(&format!(
            "<rect x=\"{pad:.3}\" y=\"{pad:.3}\" width=\"{span:.3}\" height=\"{span:.3}\" fill=\"none\" stroke=\"#999\"/>\n"
        ));
        svg.push_str(&format!(
            "<line x1=\"{pad:.3}\" y1=\"{y0:.3}\" x2=\"{x1:.3}\" y2=\"{pad:.3}\" stroke=\"#bbb\" stroke-dasharray=\"6,4\"/>\n",
            y0 = s - pad,
            x1 = s - pad
        ));
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n",
            path.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.3}\" y=\"{y:.3}\" text-anchor=\"middle\" font-size=\"14\">false positive rate</text>\n",
            x = s / 2.0,
            y = s - pad / 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.3}\" y=\"{y:.3}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 {x:.3} {y:.3})\">true positive rate</text>\n",
            x = pad / 2.5,
            y = s / 2.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.3}\" y=\"{y:.3}\" text-anchor=\"middle\" font-size=\"14\">{} path</text>\n",
            self.convention.path_name(),
            x = s / 2.0,
            y = pad * 0.7
        ));
        svg.push_str("</svg>\n");
        svg
    }
}
