//! Browser bindings for the interactive demo page in `www/`.
//!
//! Each exported function takes a counts table as CSV text (`value,neg,pos`)
//! and returns a JSON string for the page to draw. The `*_json` functions do
//! the work and are plain Rust so they can be tested off the browser.

use roc_ties::inference::{bootstrap_replicates, summarize_bootstrap, BootstrapResult};
use roc_ties::io::read_counts_csv;
use roc_ties::montecarlo::{est_auc, MonteCarloResult};
use roc_ties::report::{build_report, ReportOptions};
use roc_ties::{Dataset, PathConvention};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse(counts_csv: &str) -> Result<Dataset, String> {
    read_counts_csv(counts_csv.as_bytes()).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Full report with all three curves, asymptotic interval included when
/// each class has at least two members.
pub fn analyze_json(counts_csv: &str) -> Result<String, String> {
    let d = parse(counts_csv)?;
    let mut opts = ReportOptions {
        curves: PathConvention::ALL.to_vec(),
        ..Default::default()
    };
    if d.n_pos() < 2 || d.n_neg() < 2 {
        opts.asymptotic_level = None;
    }
    let report = build_report(&d, &opts).map_err(|e| e.to_string())?;
    to_json(&report)
}

#[derive(Serialize)]
struct BootstrapView {
    summary: BootstrapResult,
    histogram: Histogram,
}

#[derive(Serialize)]
struct Histogram {
    lo: f64,
    hi: f64,
    counts: Vec<u32>,
}

fn histogram(values: &[f64], bins: usize) -> Histogram {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u32; bins];
    let width = (hi - lo) / bins as f64;
    for &v in values {
        let i = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[i] += 1;
    }
    Histogram { lo, hi, counts }
}

pub fn bootstrap_json(
    counts_csv: &str,
    convention: &str,
    replicates: u32,
    seed: u64,
    level: f64,
) -> Result<String, String> {
    let d = parse(counts_csv)?;
    let conv: PathConvention = convention
        .parse()
        .map_err(|e: roc_ties::Error| e.to_string())?;
    if !(level > 0.0 && level < 1.0) {
        return Err(format!("confidence level must lie in (0, 1), got {level}"));
    }
    let sample = bootstrap_replicates(&d, conv, replicates, seed).map_err(|e| e.to_string())?;
    to_json(&BootstrapView {
        summary: summarize_bootstrap(&sample, level),
        histogram: histogram(&sample.values, 40),
    })
}

#[derive(Serialize)]
struct SimulationView {
    result: MonteCarloResult,
    exact_strict: f64,
    exact_half_ties: f64,
}

pub fn simulate_json(counts_csv: &str, draws: u64, seed: u64) -> Result<String, String> {
    let d = parse(counts_csv)?;
    let result = est_auc(&d, draws, seed).map_err(|e| e.to_string())?;
    let pairs = roc_ties::auc::pair_statistics(d.groups()).map_err(|e| e.to_string())?;
    to_json(&SimulationView {
        result,
        exact_strict: roc_ties::auc::auc_strict(&pairs).value,
        exact_half_ties: roc_ties::auc::auc_half_ties(&pairs).value,
    })
}

#[wasm_bindgen]
pub fn analyze(counts_csv: &str) -> Result<String, JsValue> {
    analyze_json(counts_csv).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bootstrap(
    counts_csv: &str,
    convention: &str,
    replicates: u32,
    seed: u32,
    level: f64,
) -> Result<String, JsValue> {
    bootstrap_json(counts_csv, convention, replicates, u64::from(seed), level)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(counts_csv: &str, draws: u32, seed: u32) -> Result<String, JsValue> {
    simulate_json(counts_csv, u64::from(draws), u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BINARY_TABLE: &str = "value,neg,pos\n0,52,35\n1,32,50\n";

    #[test]
    fn analyze_reports_three_curves() {
        let json: serde_json::Value =
            serde_json::from_str(&analyze_json(BINARY_TABLE).unwrap()).unwrap();
        assert_eq!(json["auc"]["strict"]["num"], 2600);
        assert_eq!(json["curves"].as_array().unwrap().len(), 3);
        assert!(json["asymptotic"]["se"].as_f64().unwrap() > 0.03);
    }

    #[test]
    fn analyze_skips_asymptotic_for_tiny_classes() {
        let json: serde_json::Value =
            serde_json::from_str(&analyze_json("1,1,1\n0,3,0\n").unwrap()).unwrap();
        assert!(json["asymptotic"].is_null());
    }

    #[test]
    fn bootstrap_histogram_covers_replicates() {
        let json: serde_json::Value =
            serde_json::from_str(&bootstrap_json(BINARY_TABLE, "strict", 500, 3, 0.95).unwrap())
                .unwrap();
        let total: u64 = json["histogram"]["counts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_u64().unwrap())
            .sum();
        assert_eq!(total, 500);
        assert_eq!(json["summary"]["convention"], "strict");
    }

    #[test]
    fn simulate_returns_exact_reference() {
        let json: serde_json::Value =
            serde_json::from_str(&simulate_json(BINARY_TABLE, 100_000, 1).unwrap()).unwrap();
        let mc = json["result"]["auc_definition"].as_f64().unwrap();
        assert!((mc - json["exact_strict"].as_f64().unwrap()).abs() < 0.01);
    }

    #[test]
    fn errors_are_strings() {
        assert!(analyze_json("x,y,z\n1,nan,2\n").is_err());
        assert!(bootstrap_json(BINARY_TABLE, "sideways", 500, 1, 0.95).is_err());
        assert!(bootstrap_json(BINARY_TABLE, "strict", 10, 1, 0.95).is_err());
    }
}
