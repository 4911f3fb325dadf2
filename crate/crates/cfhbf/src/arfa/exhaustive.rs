//! Exhaustive activation oracle for small instances.

use crate::arfa::{feasible_set_size, ActivationVector};
use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::combining::{chbf, AnalogCombiner};
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};

/// Largest feasible set the oracle will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// Evaluates every feasible activation vector and returns the best.
///
/// Intended as a ground-truth reference for small instances; refuses sets
/// larger than [`EXHAUSTIVE_LIMIT`]. Enumeration is lexicographic and only a
/// strictly better rate displaces the incumbent, so rate ties resolve to the
/// lexicographically smallest vector.
pub fn exhaustive_arfa(
    channels: &ChannelRealization,
    cfg: &ScenarioConfig,
    gamma: f64,
) -> Result<(AnalogCombiner, ActivationVector)> {
    let l = channels.ap_count();
    assert_eq!(l, cfg.ap_count, "channel realization does not match the configured AP count");
    let n_max = cfg.rf_chains;
    let budget = cfg.chain_budget();
    let size = feasible_set_size(l, n_max, budget);
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::FeasibleSetTooLarge { size, limit: EXHAUSTIVE_LIMIT });
    }
    let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);

    let mut best: Option<(AnalogCombiner, Vec<usize>, f64)> = None;
    let mut counts = vec![0usize; l];
    enumerate(&mut counts, 0, budget, n_max, &mut |counts| {
        let (combiner, rates) = chbf(channels, counts, gamma, &cb);
        let improves = match &best {
            None => true,
            Some((_, _, rate)) => rates.total_rate > *rate,
        };
        if improves {
            best = Some((combiner, counts.to_vec(), rates.total_rate));
        }
    });
    let (combiner, counts, _) = best.expect("feasible set is empty");
    Ok((combiner, ActivationVector::from_checked(counts)))
}

/// Lexicographic enumeration of bounded compositions: fills `counts[pos..]`
/// with every way to spend `remaining` chains at `n_max` per AP.
fn enumerate(
    counts: &mut Vec<usize>,
    pos: usize,
    remaining: usize,
    n_max: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == counts.len() {
        if remaining == 0 {
            visit(counts);
        }
        return;
    }
    let slots_after = counts.len() - pos - 1;
    let lo = remaining.saturating_sub(slots_after * n_max);
    let hi = n_max.min(remaining);
    for v in lo..=hi {
        counts[pos] = v;
        enumerate(counts, pos + 1, remaining - v, n_max, visit);
    }
    counts[pos] = 0;
}
