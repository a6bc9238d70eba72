//! Estimator-versus-mapper comparison reports and accuracy metrics.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Seconds in scientific notation with four significant digits, e.g.
/// `1.667E+00`.
pub fn format_seconds(s: f64) -> String {
    if s == 0.0 || !s.is_finite() {
        return format!("{s:.3E}");
    }
    let mut exp = s.abs().log10().floor() as i32;
    let mut mantissa = s / 10f64.powi(exp);
    // Rounding 9.9995 up carries into the exponent.
    if (mantissa.abs() * 1000.0).round() >= 10000.0 {
        exp += 1;
        mantissa = s / 10f64.powi(exp);
    }
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa:.3}E{sign}{:02}", exp.abs())
}

/// `|actual - estimated| / actual * 100`.
pub fn error_percent(actual: f64, estimated: f64) -> f64 {
    (actual - estimated).abs() / actual * 100.0
}

/// Mean of `|est - actual| / actual` over paired samples.
pub fn mean_abs_relative_error(estimated: &[f64], actual: &[f64]) -> f64 {
    assert_eq!(estimated.len(), actual.len());
    assert!(!actual.is_empty());
    estimated
        .iter()
        .zip(actual)
        .map(|(e, a)| (e - a).abs() / a)
        .sum::<f64>()
        / actual.len() as f64
}

/// Average ranks (1-based), ties sharing the mean rank.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let (ra, rb) = (ranks(a), ranks(b));
    let n = ra.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - ma) * (y - mb);
        va += (x - ma).powi(2);
        vb += (y - mb).powi(2);
    }
    cov / (va * vb).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    pub qubits: usize,
    pub operations: usize,
    /// Estimated latency, seconds.
    pub estimated_s: f64,
    /// Simulated latency, seconds.
    pub simulated_s: Option<f64>,
    pub error_percent: Option<f64>,
    pub estimator_runtime_s: f64,
    pub mapper_runtime_s: Option<f64>,
    pub speedup: Option<f64>,
}

impl BenchRow {
    pub fn new(
        name: impl Into<String>,
        qubits: usize,
        operations: usize,
        estimated_s: f64,
        estimator_runtime_s: f64,
    ) -> Self {
        BenchRow {
            name: name.into(),
            qubits,
            operations,
            estimated_s,
            simulated_s: None,
            error_percent: None,
            estimator_runtime_s,
            mapper_runtime_s: None,
            speedup: None,
        }
    }

    pub fn with_simulation(mut self, simulated_s: f64, mapper_runtime_s: f64) -> Self {
        self.simulated_s = Some(simulated_s);
        self.error_percent = Some(error_percent(simulated_s, self.estimated_s));
        self.mapper_runtime_s = Some(mapper_runtime_s);
        self.speedup = Some(mapper_runtime_s / self.estimator_runtime_s.max(f64::MIN_POSITIVE));
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Mean of the per-row error percentages, when any row was simulated.
    pub mean_error_percent: Option<f64>,
}

impl BenchReport {
    pub fn new(rows: Vec<BenchRow>) -> Self {
        let errs: Vec<f64> = rows.iter().filter_map(|r| r.error_percent).collect();
        let mean_error_percent = (!errs.is_empty()).then(|| errs.iter().sum::<f64>() / errs.len() as f64);
        BenchReport {
            rows,
            mean_error_percent,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "benchmark,qubits,operations,estimated_s,simulated_s,error_percent,estimator_runtime_s,mapper_runtime_s,speedup\n",
        );
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.name,
                r.qubits,
                r.operations,
                r.estimated_s,
                opt(r.simulated_s),
                opt(r.error_percent),
                r.estimator_runtime_s,
                opt(r.mapper_runtime_s),
                opt(r.speedup),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<20} {:>7} {:>10} {:>12} {:>12} {:>8} {:>10} {:>10} {:>9}\n",
            "benchmark", "qubits", "ops", "actual(s)", "estimate(s)", "err(%)", "est rt(s)", "map rt(s)", "speedup"
        );
        let dash = "-".to_string();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<20} {:>7} {:>10} {:>12} {:>12} {:>8} {:>10.4} {:>10} {:>9}",
                r.name,
                r.qubits,
                r.operations,
                r.simulated_s.map(format_seconds).unwrap_or_else(|| dash.clone()),
                format_seconds(r.estimated_s),
                r.error_percent.map(|e| format!("{e:.2}")).unwrap_or_else(|| dash.clone()),
                r.estimator_runtime_s,
                r.mapper_runtime_s.map(|m| format!("{m:.4}")).unwrap_or_else(|| dash.clone()),
                r.speedup.map(|s| format!("{s:.1}")).unwrap_or_else(|| dash.clone()),
            );
        }
        if let Some(m) = self.mean_error_percent {
            let _ = writeln!(out, "mean error: {m:.2}%");
        }
        out
    }
}
