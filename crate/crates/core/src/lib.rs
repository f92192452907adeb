//! Tie-aware ROC curves and AUC.
//!
//! When scores tie across classes, "the AUC" depends on how the ties are
//! credited. This crate computes all three conventions exactly and keeps the
//! convention attached to every number:
//!
//! | convention   | tie credit | ROC path           |
//! |--------------|------------|--------------------|
//! | `strict`     | 0          | lower staircase    |
//! | `half_ties`  | 1/2        | straight segments  |
//! | `optimistic` | 1          | upper staircase    |
//!
//! ```
//! use roc_ties::{auc, data, PathConvention};
//!
//! let d = data::load_counts([(0.0, 52, 35), (1.0, 32, 50)]).unwrap();
//! let pairs = auc::pair_statistics(d.groups()).unwrap();
//! assert_eq!(auc::auc_strict(&pairs).exact.unwrap().num, 2600);
//! let half = auc::auc_for_convention(&pairs, PathConvention::Linear);
//! assert!((half.value - 0.6036415).abs() < 1e-7);
//! ```

pub mod auc;
pub mod data;
pub mod error;
pub mod inference;
pub mod io;
pub mod montecarlo;
pub mod normal;
pub mod ratio;
pub mod report;
pub mod rng;
pub mod roc;

pub use auc::{AucEstimate, PairCounts};
pub use data::{Dataset, Label, Sample, ScoreGroup, ScoreGroups};
pub use error::{Error, Result};
pub use ratio::ExactRatio;
pub use roc::{PathConvention, RocPoint, RocPolyline};
