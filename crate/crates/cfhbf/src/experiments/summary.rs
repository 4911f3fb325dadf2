//! Aggregation of records into per-(scheme, sweep value) statistics.

use serde::Serialize;

use crate::experiments::{MetricsRecord, Scheme};

/// Mean/spread statistics for one scheme at one sweep position, with
/// comparisons against the all-chains-on reference when it is present in
/// the record set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scheme: Scheme,
    pub sweep_value: f64,
    pub trials: u64,
    pub mean_rate: f64,
    pub stderr_rate: f64,
    pub mean_power_mw: f64,
    pub stderr_power_mw: f64,
    pub mean_ee: f64,
    pub stderr_ee: f64,
    pub mean_candidates: f64,
    pub stderr_candidates: f64,
    /// Mean-rate shortfall relative to the fixed-N scheme, percent; absent
    /// when fixed-N is not in the records at this sweep value.
    pub rate_loss_vs_fixed_pct: Option<f64>,
    /// Mean-EE improvement relative to the fixed-N scheme, percent.
    pub ee_gain_vs_fixed_pct: Option<f64>,
    /// On fast-search rows: mean candidates relative to the tabu search at
    /// the same sweep value.
    pub fs_ts_candidate_ratio: Option<f64>,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Collapses records to one row per (scheme, sweep value), ordered by sweep
/// value and then by scheme.
pub fn summarize(records: &[MetricsRecord]) -> Vec<SummaryRow> {
    assert!(!records.is_empty(), "nothing to summarize");
    let mut keys: Vec<(f64, Scheme)> = Vec::new();
    for r in records {
        let key = (r.sweep_value, r.scheme);
        if !keys.iter().any(|k| k.0.total_cmp(&key.0).is_eq() && k.1 == key.1) {
            keys.push(key);
        }
    }
    keys.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let group = |value: f64, scheme: Scheme| -> Vec<&MetricsRecord> {
        records
            .iter()
            .filter(|r| r.sweep_value.total_cmp(&value).is_eq() && r.scheme == scheme)
            .collect()
    };
    let group_mean = |value: f64, scheme: Scheme, field: fn(&MetricsRecord) -> f64| {
        let rows = group(value, scheme);
        if rows.is_empty() {
            None
        } else {
            Some(rows.iter().map(|r| field(r)).sum::<f64>() / rows.len() as f64)
        }
    };

    keys.into_iter()
        .map(|(value, scheme)| {
            let rows = group(value, scheme);
            let collect = |field: fn(&MetricsRecord) -> f64| -> Vec<f64> {
                rows.iter().map(|r| field(r)).collect()
            };
            let (mean_rate, stderr_rate) = mean_and_stderr(&collect(|r| r.rate));
            let (mean_power_mw, stderr_power_mw) = mean_and_stderr(&collect(|r| r.power_mw));
            let (mean_ee, stderr_ee) = mean_and_stderr(&collect(|r| r.ee));
            let (mean_candidates, stderr_candidates) =
                mean_and_stderr(&collect(|r| r.candidates_examined as f64));

            let fixed_rate = group_mean(value, Scheme::ChbfFixedN, |r| r.rate);
            let fixed_ee = group_mean(value, Scheme::ChbfFixedN, |r| r.ee);
            let rate_loss_vs_fixed_pct = fixed_rate
                .filter(|&f| f != 0.0)
                .map(|f| 100.0 * (f - mean_rate) / f);
            let ee_gain_vs_fixed_pct =
                fixed_ee.filter(|&f| f != 0.0).map(|f| 100.0 * (mean_ee - f) / f);
            let fs_ts_candidate_ratio = if scheme == Scheme::FsCarfa {
                group_mean(value, Scheme::TsCarfa, |r| r.candidates_examined as f64)
                    .filter(|&ts| ts != 0.0)
                    .map(|ts| mean_candidates / ts)
            } else {
                None
            };

            SummaryRow {
                scheme,
                sweep_value: value,
                trials: rows.len() as u64,
                mean_rate,
                stderr_rate,
                mean_power_mw,
                stderr_power_mw,
                mean_ee,
                stderr_ee,
                mean_candidates,
                stderr_candidates,
                rate_loss_vs_fixed_pct,
                ee_gain_vs_fixed_pct,
                fs_ts_candidate_ratio,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::SweepVar;

    fn record(scheme: Scheme, sweep_value: f64, trial: u64, rate: f64, ee: f64) -> MetricsRecord {
        MetricsRecord {
            scheme,
            sweep_var: SweepVar::Rho,
            sweep_value,
            trial,
            rate,
            power_mw: 1000.0,
            ee,
            candidates_examined: 10,
            fronthaul_up: 0,
            fronthaul_down: 0,
            active_ap_count: 4,
            short_links: 0,
            seed: 1,
        }
    }

    #[test]
    fn single_record_summarizes_to_itself() {
        let rows = summarize(&[record(Scheme::Schbf, 20.0, 0, 12.5, 3.0)]);
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.trials, 1);
        assert_eq!(row.mean_rate, 12.5);
        assert_eq!(row.stderr_rate, 0.0);
        assert_eq!(row.mean_ee, 3.0);
        assert_eq!(row.stderr_ee, 0.0);
        // No fixed-N reference present.
        assert!(row.rate_loss_vs_fixed_pct.is_none());
        assert!(row.ee_gain_vs_fixed_pct.is_none());
    }

    #[test]
    fn mean_and_stderr_by_hand() {
        let rows = summarize(&[
            record(Scheme::Schbf, 20.0, 0, 4.0, 1.0),
            record(Scheme::Schbf, 20.0, 1, 6.0, 3.0),
        ]);
        let row = &rows[0];
        assert_eq!(row.trials, 2);
        assert_eq!(row.mean_rate, 5.0);
        // Sample sd sqrt(2), over sqrt(2) trials: stderr exactly 1.
        assert!((row.stderr_rate - 1.0).abs() < 1e-12);
        assert_eq!(row.mean_ee, 2.0);
    }

    #[test]
    fn fixed_reference_comparisons() {
        let rows = summarize(&[
            record(Scheme::ChbfFixedN, 20.0, 0, 10.0, 2.0),
            record(Scheme::TsCarfa, 20.0, 0, 9.0, 5.0),
        ]);
        let fixed = rows.iter().find(|r| r.scheme == Scheme::ChbfFixedN).unwrap();
        assert_eq!(fixed.rate_loss_vs_fixed_pct, Some(0.0));
        assert_eq!(fixed.ee_gain_vs_fixed_pct, Some(0.0));
        let ts = rows.iter().find(|r| r.scheme == Scheme::TsCarfa).unwrap();
        assert!((ts.rate_loss_vs_fixed_pct.unwrap() - 10.0).abs() < 1e-12);
        assert!((ts.ee_gain_vs_fixed_pct.unwrap() - 150.0).abs() < 1e-12);
    }

    #[test]
    fn candidate_ratio_lives_on_fast_search_rows() {
        let mut ts = record(Scheme::TsCarfa, 20.0, 0, 9.0, 5.0);
        ts.candidates_examined = 100;
        let mut fs = record(Scheme::FsCarfa, 20.0, 0, 8.5, 5.2);
        fs.candidates_examined = 8;
        let rows = summarize(&[ts.clone(), fs]);
        let fs_row = rows.iter().find(|r| r.scheme == Scheme::FsCarfa).unwrap();
        assert!((fs_row.fs_ts_candidate_ratio.unwrap() - 0.08).abs() < 1e-12);
        let ts_row = rows.iter().find(|r| r.scheme == Scheme::TsCarfa).unwrap();
        assert!(ts_row.fs_ts_candidate_ratio.is_none());
        // Without the tabu rows the ratio has no reference.
        let alone = summarize(&[record(Scheme::FsCarfa, 20.0, 0, 8.5, 5.2)]);
        assert!(alone[0].fs_ts_candidate_ratio.is_none());
    }

    #[test]
    fn rows_group_and_sort_by_sweep_then_scheme() {
        let rows = summarize(&[
            record(Scheme::TsCarfa, 30.0, 0, 1.0, 1.0),
            record(Scheme::Schbf, 10.0, 0, 1.0, 1.0),
            record(Scheme::Schbf, 30.0, 0, 1.0, 1.0),
            record(Scheme::Schbf, 30.0, 1, 2.0, 1.0),
        ]);
        assert_eq!(rows.len(), 3);
        assert_eq!((rows[0].sweep_value, rows[0].scheme), (10.0, Scheme::Schbf));
        assert_eq!((rows[1].sweep_value, rows[1].scheme), (30.0, Scheme::Schbf));
        assert_eq!(rows[1].trials, 2);
        assert_eq!((rows[2].sweep_value, rows[2].scheme), (30.0, Scheme::TsCarfa));
    }
}
