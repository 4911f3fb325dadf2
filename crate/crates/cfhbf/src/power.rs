//! Receive-side power consumption and energy efficiency.
//!
//! Component-level power accounting for the AP front ends under the three
//! hardware architectures: fully phase-shifted hybrid combining (fixed or
//! adaptive chain counts), AP selection, and antenna-switch selection. Local
//! oscillators are always on — even an AP with every chain off burns its LO.
//! Everything here is pure arithmetic in milliwatts; energy efficiency is
//! reported per watt.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-component power draws in mW.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerModel {
    /// Local oscillator, one per AP.
    pub p_lo: f64,
    /// Low-noise amplifier, one per antenna.
    pub p_lna: f64,
    /// Phase shifter, one per antenna per active RF chain.
    pub p_ps: f64,
    /// RF chain electronics, per active chain.
    pub p_rf: f64,
    /// Analog-to-digital converter pair, per active chain.
    pub p_adc: f64,
    /// Mixer; two per antenna front end.
    pub p_mixer: f64,
    /// 90-degree hybrid and LO buffer, per antenna front end.
    pub p_hybrid: f64,
    /// RF switch, one per antenna in the switch-selection architecture.
    pub p_switch: f64,
}

impl Default for PowerModel {
    fn default() -> Self {
        Self {
            p_lo: 22.5,
            p_lna: 20.0,
            p_ps: 30.0,
            p_rf: 40.0,
            p_adc: 200.0,
            p_mixer: 0.3,
            p_hybrid: 3.0,
            p_switch: 5.0,
        }
    }
}

impl PowerModel {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("p_lo", self.p_lo),
            ("p_lna", self.p_lna),
            ("p_ps", self.p_ps),
            ("p_rf", self.p_rf),
            ("p_adc", self.p_adc),
            ("p_mixer", self.p_mixer),
            ("p_hybrid", self.p_hybrid),
            ("p_switch", self.p_switch),
        ];
        for (name, value) in fields {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "power model field {name} must be finite and non-negative, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Per-antenna front-end draw behind the combining network: LNA, two
    /// mixers, and the hybrid.
    fn front_end(&self) -> f64 {
        self.p_lna + 2.0 * self.p_mixer + self.p_hybrid
    }

    /// Per-chain draw in the phase-shifted architecture: a phase shifter on
    /// every antenna plus the chain electronics and its converters.
    fn chain(&self, rx_antennas: usize) -> f64 {
        rx_antennas as f64 * self.p_ps + self.p_rf + self.p_adc
    }
}

/// Network power with every AP running `n_per_ap` chains.
pub fn power_fixed(ap_count: usize, n_per_ap: usize, rx_antennas: usize, pm: &PowerModel) -> f64 {
    let l = ap_count as f64;
    l * pm.p_lo
        + l * n_per_ap as f64 * pm.chain(rx_antennas)
        + l * rx_antennas as f64 * pm.front_end()
}

/// Network power under AP selection: the whole network keeps an average of
/// `nbar` chains per AP, concentrated in `ap_count * nbar / rf_chains`
/// fully-on APs whose antenna front ends alone are powered.
pub fn power_aps(
    ap_count: usize,
    nbar: usize,
    rf_chains: usize,
    rx_antennas: usize,
    pm: &PowerModel,
) -> f64 {
    let l = ap_count as f64;
    let selected = l * nbar as f64 / rf_chains as f64;
    l * pm.p_lo
        + l * nbar as f64 * pm.chain(rx_antennas)
        + selected * rx_antennas as f64 * pm.front_end()
}

/// Network power under antenna-switch selection with `kept` of the
/// `rx_antennas` antennas routed to hardware at every AP.
pub fn power_as(ap_count: usize, rx_antennas: usize, kept: usize, pm: &PowerModel) -> f64 {
    assert!(kept <= rx_antennas, "kept antennas {kept} exceed the array size {rx_antennas}");
    let l = ap_count as f64;
    l * pm.p_lo
        + l * rx_antennas as f64 * pm.p_switch
        + l * kept as f64 * (pm.p_rf + pm.p_adc + pm.front_end())
}

/// Network power for an adaptive activation: chains draw per the total
/// count, antenna front ends only at APs with at least one chain on.
pub fn power_arfa(counts: &[usize], rx_antennas: usize, pm: &PowerModel) -> f64 {
    let l = counts.len() as f64;
    let total: usize = counts.iter().sum();
    let active = counts.iter().filter(|&&n| n > 0).count();
    l * pm.p_lo
        + total as f64 * pm.chain(rx_antennas)
        + active as f64 * rx_antennas as f64 * pm.front_end()
}

/// Rate per consumed watt.
pub fn energy_efficiency(rate: f64, power_mw: f64) -> Result<f64> {
    if !(power_mw > 0.0) {
        return Err(Error::NonPositivePower(power_mw));
    }
    Ok(rate / (power_mw / 1000.0))
}
