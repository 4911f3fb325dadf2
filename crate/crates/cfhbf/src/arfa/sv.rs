//! Singular-value-ranked chain activation for the per-AP combiner.

use crate::arfa::ActivationVector;
use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::combining::{leading_singular_values, schbf, AnalogCombiner};
use crate::config::ScenarioConfig;

/// Distributes `budget` chains by globally ranking per-AP singular values.
///
/// The pool holds each AP's values in descending order; the `budget` largest
/// win a chain. Ties resolve deterministically: larger value first, then
/// lower AP index, then the AP's earlier (larger) position. Rank selection —
/// rather than thresholding on the budget-th value — keeps the total exact
/// when values tie across APs.
pub fn allocate_by_singular_values(per_ap: &[Vec<f64>], budget: usize) -> Vec<usize> {
    let mut pool: Vec<(f64, usize, usize)> = Vec::new();
    for (ap, values) in per_ap.iter().enumerate() {
        for (idx, &v) in values.iter().enumerate() {
            pool.push((v, ap, idx));
        }
    }
    assert!(budget <= pool.len(), "budget {budget} exceeds the pooled {} values", pool.len());
    pool.sort_by(|a, b| {
        b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
    });
    let mut counts = vec![0usize; per_ap.len()];
    for &(_, ap, _) in pool.iter().take(budget) {
        counts[ap] += 1;
    }
    counts
}

/// Chain activation from per-AP channel singular values, with per-AP
/// combining on the winning allocation.
pub fn sv_scarfa(
    channels: &ChannelRealization,
    cfg: &ScenarioConfig,
) -> (AnalogCombiner, ActivationVector) {
    let l = channels.ap_count();
    assert_eq!(l, cfg.ap_count, "channel realization does not match the configured AP count");
    let per_ap: Vec<Vec<f64>> = (0..l)
        .map(|ap| leading_singular_values(channels.ap_channel(ap), cfg.rf_chains))
        .collect();
    let counts = allocate_by_singular_values(&per_ap, cfg.chain_budget());
    let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
    let combiner = schbf(channels, &counts, &cb);
    (combiner, ActivationVector::from_checked(counts))
}
