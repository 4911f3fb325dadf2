//! Config-file schema and command-line overrides.
//!
//! A run is described by one TOML file with four tables — `[scenario]`,
//! `[pathloss]`, `[power]`, `[run]` — all optional, with omitted keys falling
//! back to the built-in defaults. Command-line flags override the file, and
//! the fully resolved plan can be echoed back out in the same schema, so a
//! tweaked run is reproducible from a saved file.

use std::path::PathBuf;
use std::str::FromStr;

use cfhbf::experiments::{ExperimentPlan, OutputFormat, SweepVar};
use cfhbf::{PathLossModel, PowerModel, ScenarioConfig, Scheme};
use serde::{Deserialize, Serialize};

/// The on-disk shape of a run description.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: ScenarioConfig,
    pub pathloss: PathLossModel,
    pub power: PowerModel,
    pub run: RunSection,
}

/// The `[run]` table: what to execute and where the records go.
#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub schemes: Vec<Scheme>,
    /// Swept variable: `"rho"`, `"L"`, or `"nbar"`.
    pub sweep: String,
    /// Sweep grid; when empty and the sweep is `rho`, the scenario's own
    /// transmit-power list is used.
    pub values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; 0 means one per CPU.
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            schemes: Vec::new(),
            sweep: SweepVar::Rho.id().to_owned(),
            values: Vec::new(),
            trials: 1,
            seed: 0,
            workers: 0,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

/// Flag values that take precedence over the file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub schemes: Vec<Scheme>,
    pub sweep: Option<(SweepVar, Vec<f64>)>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

/// Parse a `--sweep` argument of the form `var=start:step:stop` (inclusive
/// stop, positive step).
pub fn parse_sweep(text: &str) -> Result<(SweepVar, Vec<f64>), String> {
    let (var_text, range_text) = text
        .split_once('=')
        .ok_or_else(|| format!("sweep `{text}` is not of the form var=start:step:stop"))?;
    let var = SweepVar::from_str(var_text)
        .map_err(|_| format!("unknown sweep variable `{var_text}` (expected rho, L, or nbar)"))?;
    let parts: Vec<&str> = range_text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("sweep range `{range_text}` is not of the form start:step:stop"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
        .collect::<Result<_, _>>()?;
    let (start, step, stop) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) {
        return Err(format!("sweep step must be positive, got {step}"));
    }
    if stop < start {
        return Err(format!("sweep stop {stop} is below start {start}"));
    }
    let mut values = Vec::new();
    let mut i = 0u32;
    loop {
        let v = start + step * f64::from(i);
        if v > stop + 1e-9 * step {
            break;
        }
        values.push(v);
        i += 1;
    }
    Ok((var, values))
}

/// Merge the file and the flags into a validated plan.
pub fn resolve(file: FileConfig, overrides: Overrides) -> Result<ExperimentPlan, String> {
    let var = SweepVar::from_str(&file.run.sweep).map_err(|_| {
        format!("unknown sweep variable `{}` (expected rho, L, or nbar)", file.run.sweep)
    })?;
    let values = if !file.run.values.is_empty() {
        file.run.values.clone()
    } else if var == SweepVar::Rho {
        file.scenario.rho_dbm.clone()
    } else {
        return Err(format!("run.values must be listed for a `{}` sweep", var.id()));
    };
    let mut plan = ExperimentPlan::over_rho(file.scenario, file.run.schemes);
    plan.pathloss = file.pathloss;
    plan.power = file.power;
    plan.sweep_var = var;
    plan.sweep_values = values;
    plan.trials = file.run.trials;
    plan.master_seed = file.run.seed;
    plan.workers = file.run.workers;
    plan.output = file.run.out;
    plan.format = file.run.format;

    if !overrides.schemes.is_empty() {
        plan.schemes = overrides.schemes;
    }
    if let Some((var, values)) = overrides.sweep {
        plan.sweep_var = var;
        plan.sweep_values = values;
    }
    if let Some(trials) = overrides.trials {
        plan.trials = trials;
    }
    if let Some(seed) = overrides.seed {
        plan.master_seed = seed;
    }
    if let Some(workers) = overrides.workers {
        plan.workers = workers;
    }
    if overrides.out.is_some() {
        plan.output = overrides.out;
    }
    if let Some(format) = overrides.format {
        plan.format = format;
    }

    plan.validate().map_err(|e| e.to_string())?;
    Ok(plan)
}

/// Render a resolved plan back into the file schema.
pub fn echo_toml(plan: &ExperimentPlan) -> Result<String, String> {
    let file = FileConfig {
        scenario: plan.scenario.clone(),
        pathloss: plan.pathloss.clone(),
        power: plan.power.clone(),
        run: RunSection {
            schemes: plan.schemes.clone(),
            sweep: plan.sweep_var.id().to_owned(),
            values: plan.sweep_values.clone(),
            trials: plan.trials,
            seed: plan.master_seed,
            workers: plan.workers,
            out: plan.output.clone(),
            format: plan.format,
        },
    };
    toml::to_string_pretty(&file).map_err(|e| e.to_string())
}
