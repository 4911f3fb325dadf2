//! Scenario and propagation configuration.
//!
//! [`ScenarioConfig`] collects the network dimensions and radio parameters of
//! one simulated deployment; [`PathLossModel`] collects the distance-dependent
//! propagation constants. Both deserialize directly from TOML with every field
//! optional, so a config file only needs to name what it changes.
//!
//! ```
//! use cfhbf::config::ScenarioConfig;
//!
//! let cfg = ScenarioConfig::default();
//! assert_eq!(cfg.ap_count, 40);
//! assert!((cfg.noise_power_dbm() - (-85.0)).abs() < 1e-9);
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Network dimensions and radio parameters for one deployment.
///
/// Defaults reproduce the reference scenario: a 200 m square served by 40 APs
/// with 64 antennas and 8 RF chains each, 8 single-user terminals with 4
/// antennas, 28 GHz carrier, 100 MHz bandwidth.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Side length of the square deployment area in meters.
    pub area_side_m: f64,
    /// Number of access points `L`.
    pub ap_count: usize,
    /// Number of user terminals `K`.
    pub ue_count: usize,
    /// Receive antennas per AP `Nr`.
    pub rx_antennas: usize,
    /// Transmit antennas per UE `Nt`.
    pub tx_antennas: usize,
    /// RF chains per AP `N`.
    pub rf_chains: usize,
    /// Network-average active RF chains per AP under adaptive activation.
    pub avg_rf_chains: usize,
    /// Propagation paths per link.
    pub paths: usize,
    /// Phase-shifter resolution in bits.
    pub phase_bits: u32,
    /// Carrier frequency in Hz.
    pub carrier_hz: f64,
    /// Signal bandwidth in Hz.
    pub bandwidth_hz: f64,
    /// Receiver noise figure in dB.
    pub noise_figure_db: f64,
    /// Transmit antenna gain in dBi.
    pub tx_gain_dbi: f64,
    /// Receive antenna gain in dBi.
    pub rx_gain_dbi: f64,
    /// Uplink transmit power values in dBm; a power sweep iterates this list.
    pub rho_dbm: Vec<f64>,
    /// Antenna element spacing as a fraction of the wavelength.
    pub element_spacing_ratio: f64,
    /// Antennas kept by the antenna-selection baseline.
    pub as_antennas: usize,
    /// Grid points used by the beam-steering angle search.
    pub steering_grid: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            area_side_m: 200.0,
            ap_count: 40,
            ue_count: 8,
            rx_antennas: 64,
            tx_antennas: 4,
            rf_chains: 8,
            avg_rf_chains: 2,
            paths: 3,
            phase_bits: 4,
            carrier_hz: 28.0e9,
            bandwidth_hz: 100.0e6,
            noise_figure_db: 9.0,
            tx_gain_dbi: 15.0,
            rx_gain_dbi: 24.5,
            rho_dbm: vec![10.0, 20.0, 30.0, 40.0, 50.0],
            element_spacing_ratio: 0.5,
            as_antennas: 32,
            steering_grid: 1024,
        }
    }
}

impl ScenarioConfig {
    /// Carrier wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    /// Combined transmit plus receive antenna gain in dB.
    pub fn antenna_gain_db(&self) -> f64 {
        self.tx_gain_dbi + self.rx_gain_dbi
    }

    /// Noise power over the signal bandwidth in dBm, including the noise figure.
    pub fn noise_power_dbm(&self) -> f64 {
        -174.0 + 10.0 * self.bandwidth_hz.log10() + self.noise_figure_db
    }

    /// Transmit SNR `gamma = rho / N0` in linear scale for a transmit power in dBm.
    pub fn gamma(&self, rho_dbm: f64) -> f64 {
        10f64.powf((rho_dbm - self.noise_power_dbm()) / 10.0)
    }

    /// Joint signal dimension `K * Nt` seen by the CPU.
    pub fn joint_dim(&self) -> usize {
        self.ue_count * self.tx_antennas
    }

    /// Total active-chain budget `L * avg_rf_chains` shared by the network.
    pub fn chain_budget(&self) -> usize {
        self.ap_count * self.avg_rf_chains
    }

    pub fn validate(&self) -> Result<()> {
        fn reject(msg: String) -> Result<()> {
            Err(Error::InvalidConfig(msg))
        }
        if !(self.area_side_m > 0.0) {
            return reject(format!("area_side_m must be positive, got {}", self.area_side_m));
        }
        if self.ap_count == 0 || self.ue_count == 0 {
            return reject("ap_count and ue_count must be at least 1".into());
        }
        if self.rx_antennas == 0 || self.tx_antennas == 0 {
            return reject("rx_antennas and tx_antennas must be at least 1".into());
        }
        if self.rf_chains == 0 || self.rf_chains > self.rx_antennas {
            return reject(format!(
                "rf_chains must satisfy 1 <= rf_chains <= rx_antennas, got {} with {} antennas",
                self.rf_chains, self.rx_antennas
            ));
        }
        if self.avg_rf_chains > self.rf_chains {
            return reject(format!(
                "avg_rf_chains {} exceeds rf_chains {}",
                self.avg_rf_chains, self.rf_chains
            ));
        }
        if self.paths == 0 {
            return reject("paths must be at least 1".into());
        }
        if self.phase_bits == 0 || self.phase_bits > 16 {
            return reject(format!("phase_bits must be in 1..=16, got {}", self.phase_bits));
        }
        if !(self.carrier_hz > 0.0) || !(self.bandwidth_hz > 0.0) {
            return reject("carrier_hz and bandwidth_hz must be positive".into());
        }
        if self.rho_dbm.is_empty() {
            return reject("rho_dbm must contain at least one value".into());
        }
        if !(self.element_spacing_ratio > 0.0) {
            return reject("element_spacing_ratio must be positive".into());
        }
        if self.as_antennas == 0 || self.as_antennas > self.rx_antennas {
            return reject(format!(
                "as_antennas must satisfy 1 <= as_antennas <= rx_antennas, got {} with {} antennas",
                self.as_antennas, self.rx_antennas
            ));
        }
        if self.steering_grid < 2 {
            return reject(format!("steering_grid must be at least 2, got {}", self.steering_grid));
        }
        Ok(())
    }
}

/// Distance-dependent propagation constants.
///
/// Path loss in dB at distance `d` follows `beta0 + 10 eps log10(d / d0)` plus
/// log-normal shadowing, with the exponent and shadowing deviation chosen per
/// link state. `beta0` is the free-space loss at the reference distance, so it
/// is derived from the carrier wavelength rather than set directly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathLossModel {
    /// Reference distance in meters.
    pub d0_m: f64,
    /// Free-space path loss at the reference distance in dB.
    pub beta0_db: f64,
    /// LOS path-loss exponent.
    pub eps_los: f64,
    /// NLOS path-loss exponent.
    pub eps_nlos: f64,
    /// LOS shadowing standard deviation in dB.
    pub xi_los: f64,
    /// NLOS shadowing standard deviation in dB.
    pub xi_nlos: f64,
    /// Outage decay distance `1 / a_out` in meters.
    pub outage_decay_m: f64,
    /// Outage offset `b_out`.
    pub outage_offset: f64,
    /// LOS decay distance `1 / a_los` in meters.
    pub los_decay_m: f64,
}

impl Default for PathLossModel {
    fn default() -> Self {
        Self::for_wavelength(SPEED_OF_LIGHT / 28.0e9)
    }
}

impl PathLossModel {
    /// Model with the default millimeter-wave constants and `beta0` matched to
    /// the given wavelength at a 1 m reference distance.
    pub fn for_wavelength(lambda_m: f64) -> Self {
        let d0_m = 1.0;
        Self {
            d0_m,
            beta0_db: 20.0 * (4.0 * std::f64::consts::PI * d0_m / lambda_m).log10(),
            eps_los: 1.9,
            eps_nlos: 4.1,
            xi_los: 1.1,
            xi_nlos: 7.6,
            outage_decay_m: 45.5,
            outage_offset: 3.3,
            los_decay_m: 37.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d0_m > 0.0) {
            return Err(Error::InvalidConfig(format!("d0_m must be positive, got {}", self.d0_m)));
        }
        if !(self.outage_decay_m > 0.0) || !(self.los_decay_m > 0.0) {
            return Err(Error::InvalidConfig(
                "outage_decay_m and los_decay_m must be positive".into(),
            ));
        }
        if self.xi_los < 0.0 || self.xi_nlos < 0.0 {
            return Err(Error::InvalidConfig("shadowing deviations must be non-negative".into()));
        }
        Ok(())
    }
}
