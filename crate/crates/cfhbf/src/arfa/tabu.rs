//! Tabu-search chain activation for the centralized combiner.

use std::collections::{HashMap, HashSet};

use crate::arfa::{neighbor_set, ActivationVector, SearchTrace};
use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::combining::{chbf, AnalogCombiner};
use crate::config::ScenarioConfig;

/// Tabu search over the activation feasible set.
///
/// Starts from the uniform allocation and repeatedly moves to the best
/// non-tabu neighbor — even a worsening one — while tracking the best
/// allocation seen. Visited vectors become tabu; a side memory of evaluated
/// vectors guarantees no allocation is put through the full combiner
/// evaluation twice. When the scored neighborhood runs dry (typically every
/// above-average AP is saturated), the weakest under-performer hands one
/// chain to the strongest AP with spare capacity so the walk can continue.
/// Stops after `8 * L` moves, after more than `4 * L` consecutive
/// non-improving moves, or when no admissible transfer remains at all.
pub fn ts_carfa(
    channels: &ChannelRealization,
    cfg: &ScenarioConfig,
    gamma: f64,
) -> (AnalogCombiner, ActivationVector, SearchTrace) {
    let l = channels.ap_count();
    assert_eq!(l, cfg.ap_count, "channel realization does not match the configured AP count");
    let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
    let max_iter = 8 * l;
    let max_stall = max_iter / 2;

    let initial = ActivationVector::uniform(l, cfg.avg_rf_chains);
    let (initial_combiner, initial_rates) = chbf(channels, initial.counts(), gamma, &cb);

    // Seen-rate memory: counts -> (rate, per-AP sub-rates). Guards against
    // repeated full evaluations of an allocation the walk circles back to.
    let mut seen: HashMap<Vec<usize>, (f64, Vec<f64>)> = HashMap::new();
    seen.insert(
        initial.counts().to_vec(),
        (initial_rates.total_rate, initial_rates.sub_rates.clone()),
    );
    let mut candidates_examined = 1usize;

    let mut best_rate = initial_rates.total_rate;
    let mut best_n = initial.clone();
    let mut best_combiner = initial_combiner;
    let mut rate_history = vec![best_rate];

    let mut tabu: HashSet<Vec<usize>> = HashSet::new();
    let mut current = initial;
    let mut current_sub_rates = initial_rates.sub_rates;
    let mut stall = 0usize;

    for _ in 0..max_iter {
        let threshold = current_sub_rates.iter().sum::<f64>() / l as f64;
        tabu.insert(current.counts().to_vec());
        let mut neighbors =
            neighbor_set(&current, &current_sub_rates, threshold, &tabu, cfg.rf_chains);
        if neighbors.is_empty() {
            neighbors
                .extend(rescue_move(&current, &current_sub_rates, threshold, &tabu, cfg.rf_chains));
        }
        if neighbors.is_empty() {
            break;
        }

        // Best neighbor by rate; ties go to the lexicographically smallest
        // vector. Fresh evaluations carry their combiner along, remembered
        // ones don't need to (see the improvement argument below).
        let mut chosen: Option<(ActivationVector, f64, Vec<f64>, Option<AnalogCombiner>)> = None;
        for nb in neighbors {
            let (rate, sub_rates, combiner) = match seen.get(nb.counts()) {
                Some((rate, sub_rates)) => (*rate, sub_rates.clone(), None),
                None => {
                    let (c, b) = chbf(channels, nb.counts(), gamma, &cb);
                    candidates_examined += 1;
                    seen.insert(nb.counts().to_vec(), (b.total_rate, b.sub_rates.clone()));
                    (b.total_rate, b.sub_rates, Some(c))
                }
            };
            let better = match &chosen {
                None => true,
                Some((sel_n, sel_rate, _, _)) => {
                    rate > *sel_rate || (rate == *sel_rate && nb < *sel_n)
                }
            };
            if better {
                chosen = Some((nb, rate, sub_rates, combiner));
            }
        }
        let (next, rate, sub_rates, combiner) = chosen.expect("nonempty neighbor set");

        current = next;
        current_sub_rates = sub_rates;
        if rate > best_rate {
            best_rate = rate;
            best_n = current.clone();
            // A remembered vector can never improve on the best: when it was
            // first evaluated, the move went to a neighbor at least as good,
            // whose rate the best-so-far absorbed that iteration. So a strict
            // improvement always arrives with a fresh combiner.
            best_combiner = combiner.expect("improving candidate is freshly evaluated");
            stall = 0;
        } else {
            stall += 1;
        }
        rate_history.push(best_rate);
        if stall > max_stall {
            break;
        }
    }

    (best_combiner, best_n, SearchTrace { candidates_examined, rate_history })
}

/// Last-resort transfer once the scored neighborhood is exhausted: the
/// weakest under-performing AP hands one chain to the strongest AP with
/// spare capacity whose resulting allocation is unvisited. This keeps the
/// walk from starving in the common end-game where every AP above the
/// threshold is already saturated, while adding at most one candidate per
/// iteration. Returns nothing when no AP sits strictly below the threshold
/// with a chain left to give, or when every receiving choice is tabu.
fn rescue_move(
    n: &ActivationVector,
    sub_rates: &[f64],
    threshold: f64,
    tabu: &HashSet<Vec<usize>>,
    max_per_ap: usize,
) -> Option<ActivationVector> {
    let counts = n.counts();
    let donor = (0..counts.len())
        .filter(|&i| sub_rates[i] < threshold && counts[i] > 0)
        .min_by(|&a, &b| {
            sub_rates[a].partial_cmp(&sub_rates[b]).unwrap().then(a.cmp(&b))
        })?;
    let mut receivers: Vec<usize> = (0..counts.len())
        .filter(|&j| j != donor && counts[j] < max_per_ap)
        .collect();
    receivers.sort_by(|&a, &b| {
        sub_rates[b].partial_cmp(&sub_rates[a]).unwrap().then(a.cmp(&b))
    });
    for j in receivers {
        let mut moved = counts.to_vec();
        moved[donor] -= 1;
        moved[j] += 1;
        if !tabu.contains(&moved) {
            return Some(ActivationVector::from_checked(moved));
        }
    }
    None
}
