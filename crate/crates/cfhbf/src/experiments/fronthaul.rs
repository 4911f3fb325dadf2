//! Per-scheme fronthaul traffic accounting.

use crate::config::ScenarioConfig;
use crate::experiments::Scheme;

/// CSI the APs send to the CPU and combiner data the CPU sends back, per
/// channel realization, counted in real-valued units (a complex scalar is
/// two units).
///
/// Centralized combining ships every AP's full channel up and the phase
/// settings down — all chains' worth for the fixed-N scheme, the average
/// chain count's worth under activation. Per-AP combining ships only the
/// combined effective channel up; the activation variants add the
/// singular-value or aggregate-loss statistic up and the chain count down.
/// Beam steering, AP selection, and antenna switching exchange no CSI in
/// this accounting and report zero.
pub fn fronthaul_load(scheme: Scheme, cfg: &ScenarioConfig) -> (u64, u64) {
    let nr = cfg.rx_antennas as u64;
    let n = cfg.rf_chains as u64;
    let nbar = cfg.avg_rf_chains as u64;
    let k = cfg.ue_count as u64;
    let nt = cfg.tx_antennas as u64;
    match scheme {
        Scheme::ChbfFixedN => (2 * nr * k * nt, nr * n),
        Scheme::ChbfFixedNbar | Scheme::TsCarfa | Scheme::FsCarfa | Scheme::Exhaustive => {
            (2 * nr * k * nt, nr * nbar)
        }
        Scheme::Schbf => (2 * n * k * nt, 0),
        Scheme::SvScarfa => (2 * nbar * k * nt + n, 1),
        Scheme::PlScarfa => (2 * nbar * k * nt, 1),
        Scheme::BeamSteering | Scheme::Aps | Scheme::As => (0, 0),
    }
}
