//! Fast two-cursor chain activation for the centralized combiner.

use crate::arfa::{ActivationVector, SearchTrace};
use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::combining::{chbf, AnalogCombiner};
use crate::config::ScenarioConfig;

/// Fast search over the activation feasible set.
///
/// Ranks APs by their sub-rate under the uniform allocation, then walks two
/// cursors — one from the strongest AP, one from the weakest — moving one
/// chain per step from the weak end to the strong end. A cursor advances
/// when its AP saturates (all chains on) or empties (none left); the walk
/// ends when the cursors meet. Each visited allocation gets one full
/// evaluation and the best one seen is returned, so the candidate count is
/// linear in the AP count rather than the tabu search's multiplicative
/// budget.
pub fn fs_carfa(
    channels: &ChannelRealization,
    cfg: &ScenarioConfig,
    gamma: f64,
) -> (AnalogCombiner, ActivationVector, SearchTrace) {
    let l = channels.ap_count();
    assert_eq!(l, cfg.ap_count, "channel realization does not match the configured AP count");
    let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);

    let initial = ActivationVector::uniform(l, cfg.avg_rf_chains);
    let (initial_combiner, initial_rates) = chbf(channels, initial.counts(), gamma, &cb);
    let mut candidates_examined = 1usize;
    let mut best_rate = initial_rates.total_rate;
    let mut best_n = initial;
    let mut best_combiner = initial_combiner;
    let mut rate_history = vec![best_rate];

    // Strongest AP first; sub-rate ties keep the lower index.
    let mut order: Vec<usize> = (0..l).collect();
    let sub = initial_rates.sub_rates;
    order.sort_by(|&a, &b| sub[b].partial_cmp(&sub[a]).unwrap().then(a.cmp(&b)));

    let mut counts = best_n.counts().to_vec();
    let mut i = 0usize;
    let mut k = l.saturating_sub(1);
    while i < k {
        while i < k && counts[order[i]] == cfg.rf_chains {
            i += 1;
        }
        while i < k && counts[order[k]] == 0 {
            k -= 1;
        }
        if i >= k {
            break;
        }
        counts[order[i]] += 1;
        counts[order[k]] -= 1;
        let (combiner, rates) = chbf(channels, &counts, gamma, &cb);
        candidates_examined += 1;
        if rates.total_rate > best_rate {
            best_rate = rates.total_rate;
            best_n = ActivationVector::from_checked(counts.clone());
            best_combiner = combiner;
        }
        rate_history.push(best_rate);
    }

    (best_combiner, best_n, SearchTrace { candidates_examined, rate_history })
}
