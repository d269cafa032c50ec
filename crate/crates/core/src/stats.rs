//! Descriptive statistics for the report: box-and-whisker summaries,
//! least-squares fits and categorical breakdowns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::AnalysisRow;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("cannot summarize an empty sample")]
    Empty,
    #[error("sample contains a non-finite value")]
    NonFinite,
    #[error("regression needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("regression is degenerate: all x values are equal")]
    ConstantX,
}

/// Box-and-whisker summary. Whiskers reach the farthest data point within
/// 1.5 IQR of the box; everything beyond is a flier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub n: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub iqr: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub fliers: Vec<f64>,
}

/// Quantile by linear interpolation between order statistics (R type 7) on
/// an ascending sample.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn box_stats(values: &[f64]) -> Result<BoxStats, StatsError> {
    if values.is_empty() {
        return Err(StatsError::Empty);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);

    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let low_fence = q1 - 1.5 * iqr;
    let high_fence = q3 + 1.5 * iqr;

    // whisker collapses onto the box edge when no point lies outside the box
    let whisker_high = match sorted.iter().rev().find(|&&v| v <= high_fence) {
        Some(&v) if v >= q3 => v,
        _ => q3,
    };
    let whisker_low = match sorted.iter().find(|&&v| v >= low_fence) {
        Some(&v) if v <= q1 => v,
        _ => q1,
    };
    let fliers = sorted
        .iter()
        .copied()
        .filter(|&v| v < whisker_low || v > whisker_high)
        .collect();

    Ok(BoxStats {
        n: sorted.len(),
        q1,
        median,
        q3,
        iqr,
        whisker_low,
        whisker_high,
        fliers,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation; 0 when y is constant.
    pub r: f64,
    pub n: usize,
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn linear_regression(points: &[(f64, f64)]) -> Result<RegressionFit, StatsError> {
    let n = points.len();
    if n < 2 {
        return Err(StatsError::TooFewPoints(n));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(StatsError::ConstantX);
    }
    let slope = sxy / sxx;
    let r = if syy == 0.0 {
        0.0
    } else {
        (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept: mean_y - slope * mean_x,
        r,
        n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BreakdownField {
    Language,
    License,
    Category,
    Backer,
}

impl BreakdownField {
    pub const ALL: [BreakdownField; 4] = [
        BreakdownField::Language,
        BreakdownField::License,
        BreakdownField::Category,
        BreakdownField::Backer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BreakdownField::Language => "language",
            BreakdownField::License => "license",
            BreakdownField::Category => "category",
            BreakdownField::Backer => "backer",
        }
    }
}

pub const UNSET: &str = "unset";
pub const MULTI: &str = "multi";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakdownEntry {
    pub label: String,
    pub count: u64,
    pub share: f64,
}

fn label_for(row: &AnalysisRow, field: BreakdownField) -> String {
    let text = |v: &Option<String>| {
        v.as_deref()
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .unwrap_or(UNSET)
            .to_string()
    };
    match field {
        BreakdownField::Language => text(&row.metadata.language),
        BreakdownField::Category => text(&row.metadata.category),
        BreakdownField::Backer => row
            .metadata
            .backer
            .map(|b| b.as_str().to_string())
            .unwrap_or_else(|| UNSET.to_string()),
        BreakdownField::License => {
            let licenses: Vec<&str> = row
                .licenses
                .iter()
                .map(|l| l.trim())
                .filter(|l| !l.is_empty())
                .collect();
            match licenses.as_slice() {
                [] => UNSET.to_string(),
                [one] => one.to_string(),
                _ => MULTI.to_string(),
            }
        }
    }
}

/// Counts per label, sorted by count descending then label ascending.
pub fn breakdown(rows: &[AnalysisRow], field: BreakdownField) -> Vec<BreakdownEntry> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for row in rows {
        *counts.entry(label_for(row, field)).or_insert(0) += 1;
    }
    let total = rows.len() as f64;
    let mut entries: Vec<BreakdownEntry> = counts
        .into_iter()
        .map(|(label, count)| BreakdownEntry {
            label,
            count,
            share: count as f64 / total,
        })
        .collect();
    entries.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.label.cmp(&b.label)));
    entries
}
