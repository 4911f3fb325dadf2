//! Record schema and emission.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{Scheme, SweepVar};

/// One scheme's outcome on one trial at one sweep position.
///
/// Field order is the emitted column order and is frozen: downstream
/// tooling and the golden-file tests both depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub scheme: Scheme,
    pub sweep_var: SweepVar,
    pub sweep_value: f64,
    pub trial: u64,
    /// Achievable uplink sum rate, bits/s/Hz.
    pub rate: f64,
    /// Network receive-side power draw, mW.
    pub power_mw: f64,
    /// Energy efficiency, bits/s/Hz per W.
    pub ee: f64,
    /// Full combiner evaluations the scheme spent finding its activation.
    pub candidates_examined: u64,
    /// Per-trial fronthaul traffic toward the CPU, real-valued units.
    pub fronthaul_up: u64,
    /// Per-trial fronthaul traffic toward the APs, real-valued units.
    pub fronthaul_down: u64,
    /// APs left with at least one active RF chain.
    pub active_ap_count: u64,
    /// Links shorter than the path-loss reference distance this trial.
    pub short_links: u64,
    /// The exact RNG seed that reproduces this trial's draw.
    pub seed: u64,
}

/// Output encodings for record emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "json")]
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown output format {other:?}; expected csv or json"
            ))),
        }
    }
}

/// Serializes records as CSV with a header row.
pub fn write_csv<W: Write>(records: &[MetricsRecord], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    for record in records {
        out.serialize(record).map_err(|e| Error::Serialize(e.to_string()))?;
    }
    out.flush().map_err(|e| Error::Serialize(e.to_string()))?;
    Ok(())
}

/// Serializes records as a pretty-printed JSON array.
pub fn write_json<W: Write>(records: &[MetricsRecord], mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, records)
        .map_err(|e| Error::Serialize(e.to_string()))?;
    writer.write_all(b"\n").map_err(|e| Error::Serialize(e.to_string()))?;
    Ok(())
}

/// Writes records to `path` in the requested format.
pub fn write_records(
    path: impl AsRef<Path>,
    format: OutputFormat,
    records: &[MetricsRecord],
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let writer = BufWriter::new(file);
    match format {
        OutputFormat::Csv => write_csv(records, writer),
        OutputFormat::Json => write_json(records, writer),
    }
}

/// Reads records back from a CSV file produced by [`write_records`].
pub fn read_csv_records(path: impl AsRef<Path>) -> Result<Vec<MetricsRecord>> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let mut reader = csv::Reader::from_reader(file);
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row.map_err(|e| Error::Serialize(e.to_string()))?);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(scheme: Scheme, trial: u64) -> MetricsRecord {
        MetricsRecord {
            scheme,
            sweep_var: SweepVar::Rho,
            sweep_value: 20.0,
            trial,
            rate: 123.456789,
            power_mw: 234116.0,
            ee: 0.527,
            candidates_examined: 61,
            fronthaul_up: 4096,
            fronthaul_down: 128,
            active_ap_count: 33,
            short_links: 2,
            seed: 7138415436909018950,
        }
    }

    #[test]
    fn csv_header_is_the_frozen_column_order() {
        let mut buf = Vec::new();
        write_csv(&[sample(Scheme::TsCarfa, 0)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "scheme,sweep_var,sweep_value,trial,rate,power_mw,ee,candidates_examined,\
             fronthaul_up,fronthaul_down,active_ap_count,short_links,seed"
        );
    }

    #[test]
    fn scheme_ids_survive_the_csv_round_trip() {
        let records: Vec<MetricsRecord> =
            Scheme::ALL.iter().enumerate().map(|(i, &s)| sample(s, i as u64)).collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.csv");
        write_records(&path, OutputFormat::Csv, &records).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("chbf-fixed-N,"));
        assert!(text.contains("beam-steering,"));
        let back = read_csv_records(&path).unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn json_is_an_array_with_matching_field_names() {
        let mut buf = Vec::new();
        write_json(&[sample(Scheme::Schbf, 3)], &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let rows = value.as_array().unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["scheme"], "schbf");
        assert_eq!(rows[0]["trial"], 3);
        assert_eq!(rows[0]["fronthaul_up"], 4096);
        assert_eq!(rows[0]["seed"].as_u64().unwrap(), 7138415436909018950);
    }

    #[test]
    fn emission_is_byte_stable() {
        let records = vec![sample(Scheme::PlScarfa, 0), sample(Scheme::Aps, 1)];
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&records, &mut a).unwrap();
        write_csv(&records, &mut b).unwrap();
        assert_eq!(a, b);
        let mut ja = Vec::new();
        let mut jb = Vec::new();
        write_json(&records, &mut ja).unwrap();
        write_json(&records, &mut jb).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
