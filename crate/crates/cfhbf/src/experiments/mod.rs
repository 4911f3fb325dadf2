//! Batch experiment harness.
//!
//! An [`ExperimentPlan`] names a scenario, a list of combining/activation
//! schemes, a swept variable with its values, and a trial count under a
//! master seed. [`run_plan`] executes the full grid — every scheme sees the
//! identical channel draw per trial, so scheme columns are directly
//! comparable row by row — and yields one [`MetricsRecord`] per (sweep
//! value, trial, scheme) with rate, power, energy efficiency, search cost,
//! and fronthaul load. Output is byte-reproducible from (plan, master seed)
//! regardless of worker count.

mod fronthaul;
mod record;
mod runner;
mod seed;
mod summary;

pub use fronthaul::fronthaul_load;
pub use record::{
    read_csv_records, write_csv, write_json, write_records, MetricsRecord, OutputFormat,
};
pub use runner::run_plan;
pub use seed::trial_seed;
pub use summary::{summarize, SummaryRow};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arfa::{feasible_set_size, EXHAUSTIVE_LIMIT};
use crate::config::{PathLossModel, ScenarioConfig};
use crate::error::{Error, Result};
use crate::power::PowerModel;

/// A combining / activation scheme the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Centralized hybrid combining, every RF chain on.
    #[serde(rename = "chbf-fixed-N")]
    ChbfFixedN,
    /// Centralized hybrid combining, the average chain count on everywhere.
    #[serde(rename = "chbf-fixed-nbar")]
    ChbfFixedNbar,
    /// Per-AP hybrid combining from local channels, average chain count.
    #[serde(rename = "schbf")]
    Schbf,
    /// Per-AP combining with grid-quantized steering vectors.
    #[serde(rename = "beam-steering")]
    BeamSteering,
    /// Tabu-search chain activation with centralized combining.
    #[serde(rename = "ts-carfa")]
    TsCarfa,
    /// Fast two-cursor chain activation with centralized combining.
    #[serde(rename = "fs-carfa")]
    FsCarfa,
    /// Singular-value-ranked activation with per-AP combining.
    #[serde(rename = "sv-scarfa")]
    SvScarfa,
    /// Path-loss-proportional activation with per-AP combining.
    #[serde(rename = "pl-scarfa")]
    PlScarfa,
    /// AP selection: strongest APs fully on, the rest off.
    #[serde(rename = "aps")]
    Aps,
    /// Antenna selection through RF switches.
    #[serde(rename = "as")]
    As,
    /// Exhaustive activation oracle (small instances only).
    #[serde(rename = "exhaustive")]
    Exhaustive,
}

impl Scheme {
    pub const ALL: [Scheme; 11] = [
        Scheme::ChbfFixedN,
        Scheme::ChbfFixedNbar,
        Scheme::Schbf,
        Scheme::BeamSteering,
        Scheme::TsCarfa,
        Scheme::FsCarfa,
        Scheme::SvScarfa,
        Scheme::PlScarfa,
        Scheme::Aps,
        Scheme::As,
        Scheme::Exhaustive,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::ChbfFixedN => "chbf-fixed-N",
            Scheme::ChbfFixedNbar => "chbf-fixed-nbar",
            Scheme::Schbf => "schbf",
            Scheme::BeamSteering => "beam-steering",
            Scheme::TsCarfa => "ts-carfa",
            Scheme::FsCarfa => "fs-carfa",
            Scheme::SvScarfa => "sv-scarfa",
            Scheme::PlScarfa => "pl-scarfa",
            Scheme::Aps => "aps",
            Scheme::As => "as",
            Scheme::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.id() == s)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// The variable an experiment sweeps over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepVar {
    /// Uplink transmit power in dBm.
    #[serde(rename = "rho")]
    Rho,
    /// Number of APs.
    #[serde(rename = "L")]
    ApCount,
    /// Average RF chains per AP (the chain budget is `L * nbar`).
    #[serde(rename = "nbar")]
    Nbar,
}

impl SweepVar {
    pub fn id(self) -> &'static str {
        match self {
            SweepVar::Rho => "rho",
            SweepVar::ApCount => "L",
            SweepVar::Nbar => "nbar",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(SweepVar::Rho),
            "L" => Ok(SweepVar::ApCount),
            "nbar" => Ok(SweepVar::Nbar),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep variable {other:?}; expected rho, L, or nbar"
            ))),
        }
    }
}

/// A complete, reproducible experiment description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub scenario: ScenarioConfig,
    pub pathloss: PathLossModel,
    pub power: PowerModel,
    pub schemes: Vec<Scheme>,
    pub sweep_var: SweepVar,
    pub sweep_values: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// Worker threads for trial-level parallelism; 0 means one per CPU.
    pub workers: usize,
    /// Where records go; `None` leaves emission to the caller.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<std::path::PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentPlan {
    /// A plan over the scenario's own transmit-power list with defaults for
    /// everything else.
    pub fn over_rho(scenario: ScenarioConfig, schemes: Vec<Scheme>) -> Self {
        let sweep_values = scenario.rho_dbm.clone();
        Self {
            scenario,
            pathloss: PathLossModel::default(),
            power: PowerModel::default(),
            schemes,
            sweep_var: SweepVar::Rho,
            sweep_values,
            trials: 1,
            master_seed: 0,
            workers: 0,
            output: None,
            format: OutputFormat::Csv,
        }
    }

    /// The scenario as it stands at one sweep position.
    pub fn scenario_at(&self, sweep_idx: usize) -> ScenarioConfig {
        let value = self.sweep_values[sweep_idx];
        let mut scenario = self.scenario.clone();
        match self.sweep_var {
            SweepVar::Rho => {}
            SweepVar::ApCount => scenario.ap_count = value as usize,
            SweepVar::Nbar => scenario.avg_rf_chains = value as usize,
        }
        scenario
    }

    /// Transmit power in dBm at one sweep position.
    pub fn rho_at(&self, sweep_idx: usize) -> f64 {
        match self.sweep_var {
            SweepVar::Rho => self.sweep_values[sweep_idx],
            _ => self.scenario.rho_dbm[0],
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.pathloss.validate()?;
        self.power.validate()?;
        if self.schemes.is_empty() {
            return Err(Error::InvalidConfig("scheme list is empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &s in &self.schemes {
            if !seen.insert(s) {
                return Err(Error::InvalidConfig(format!("scheme {s} listed twice")));
            }
        }
        if self.sweep_values.is_empty() {
            return Err(Error::InvalidConfig("sweep value list is empty".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trial count must be at least 1".into()));
        }
        for &v in &self.sweep_values {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("sweep value {v} is not finite")));
            }
            if self.sweep_var != SweepVar::Rho && (v < 0.0 || v.fract() != 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "sweep variable {} takes non-negative integers, got {v}",
                    self.sweep_var
                )));
            }
        }
        if self.sweep_var != SweepVar::Rho && self.scenario.rho_dbm.len() != 1 {
            return Err(Error::InvalidConfig(format!(
                "sweeping {} needs exactly one transmit power in the scenario, got {}",
                self.sweep_var,
                self.scenario.rho_dbm.len()
            )));
        }
        for idx in 0..self.sweep_values.len() {
            let scenario = self.scenario_at(idx);
            scenario.validate().map_err(|e| {
                Error::InvalidConfig(format!(
                    "sweep value {} breaks the scenario: {e}",
                    self.sweep_values[idx]
                ))
            })?;
            if self.schemes.contains(&Scheme::Exhaustive) {
                let size = feasible_set_size(
                    scenario.ap_count,
                    scenario.rf_chains,
                    scenario.chain_budget(),
                );
                if size > EXHAUSTIVE_LIMIT {
                    return Err(Error::InvalidConfig(format!(
                        "exhaustive scheme infeasible at sweep value {}: \
                         {size} activation vectors exceed the {EXHAUSTIVE_LIMIT} limit",
                        self.sweep_values[idx]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mini_scenario() -> ScenarioConfig {
        ScenarioConfig {
            ap_count: 3,
            ue_count: 2,
            rx_antennas: 8,
            tx_antennas: 2,
            rf_chains: 2,
            avg_rf_chains: 1,
            as_antennas: 4,
            rho_dbm: vec![20.0],
            ..Default::default()
        }
    }

    #[test]
    fn scheme_ids_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.id().parse::<Scheme>().unwrap(), s);
        }
        assert!("warp-drive".parse::<Scheme>().is_err());
        assert_eq!("chbf-fixed-N".parse::<Scheme>().unwrap(), Scheme::ChbfFixedN);
    }

    #[test]
    fn default_plan_validates() {
        let plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.validate().unwrap();
    }

    #[test]
    fn rejects_empty_and_duplicate_schemes() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![]);
        assert!(plan.validate().is_err());
        plan.schemes = vec![Scheme::Schbf, Scheme::Schbf];
        assert!(plan.validate().is_err());
    }

    #[test]
    fn rejects_zero_trials_and_empty_sweeps() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.trials = 0;
        assert!(plan.validate().is_err());
        plan.trials = 1;
        plan.sweep_values.clear();
        assert!(plan.validate().is_err());
    }

    #[test]
    fn non_rho_sweep_needs_a_single_transmit_power() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.sweep_var = SweepVar::ApCount;
        plan.sweep_values = vec![2.0, 4.0];
        plan.validate().unwrap();
        plan.scenario.rho_dbm = vec![10.0, 20.0];
        assert!(plan.validate().is_err());
    }

    #[test]
    fn integer_sweeps_reject_fractions() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.sweep_var = SweepVar::Nbar;
        plan.sweep_values = vec![1.5];
        assert!(plan.validate().is_err());
    }

    #[test]
    fn swept_scenarios_are_revalidated() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.sweep_var = SweepVar::Nbar;
        // rf_chains is 2, so nbar 3 breaks the per-AP bound.
        plan.sweep_values = vec![1.0, 3.0];
        assert!(plan.validate().is_err());
    }

    #[test]
    fn exhaustive_set_size_is_prechecked() {
        let scenario = ScenarioConfig { rho_dbm: vec![50.0], ..Default::default() };
        let plan = ExperimentPlan::over_rho(scenario, vec![Scheme::Exhaustive]);
        let err = plan.validate().unwrap_err().to_string();
        assert!(err.contains("exhaustive"), "unexpected message: {err}");
    }

    #[test]
    fn scenario_at_applies_the_sweep_variable() {
        let mut plan = ExperimentPlan::over_rho(mini_scenario(), vec![Scheme::Schbf]);
        plan.sweep_var = SweepVar::ApCount;
        plan.sweep_values = vec![2.0, 5.0];
        assert_eq!(plan.scenario_at(1).ap_count, 5);
        assert_eq!(plan.rho_at(1), 20.0);
        plan.sweep_var = SweepVar::Nbar;
        plan.sweep_values = vec![0.0, 2.0];
        assert_eq!(plan.scenario_at(1).avg_rf_chains, 2);
    }
}
