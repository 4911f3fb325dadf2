//! AP-selection baseline: all-or-nothing activation.

use crate::channel::ChannelRealization;
use crate::config::ScenarioConfig;

/// Turns every chain on at the strongest APs and everything off elsewhere.
///
/// Selects `floor(budget / rf_chains)` APs by received power — the squared
/// Frobenius norm of the AP's stacked channel — with ties to the lower AP
/// index, and gives each of them all `rf_chains` chains. When the chain
/// budget is not a multiple of the per-AP chain count, the remainder stays
/// unspent, so the returned counts may sum to less than the budget; they are
/// returned as plain counts rather than a budget-checked activation vector.
pub fn aps_activation(channels: &ChannelRealization, cfg: &ScenarioConfig) -> Vec<usize> {
    let l = channels.ap_count();
    assert_eq!(l, cfg.ap_count, "channel realization does not match the configured AP count");
    let selected = cfg.chain_budget() / cfg.rf_chains;
    let power: Vec<f64> = (0..l).map(|ap| channels.ap_channel(ap).norm_squared()).collect();
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by(|&a, &b| power[b].partial_cmp(&power[a]).unwrap().then(a.cmp(&b)));
    let mut counts = vec![0usize; l];
    for &ap in order.iter().take(selected) {
        counts[ap] = cfg.rf_chains;
    }
    counts
}
