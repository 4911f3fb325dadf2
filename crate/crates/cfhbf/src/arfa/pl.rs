//! Path-loss-proportional chain activation.
//!
//! The only activation scheme that needs no instantaneous channel estimate:
//! it divides the chain budget in proportion to each AP's long-term channel
//! quality, taken as the reciprocal of its aggregate path loss.

use crate::arfa::ActivationVector;
use crate::config::ScenarioConfig;
use crate::link::LinkState;

/// Allocates chains proportionally to inverse aggregate path loss.
///
/// For AP `l`, the aggregate loss is the sum of linear path losses over its
/// non-outage links — a link in outage carries no signal and contributes
/// nothing. The raw share `budget * alpha_l / sum(alpha)` is rounded half
/// away from zero and capped at the installed chain count; a repair pass
/// then restores the exact budget, handing surplus chains to the
/// lowest-loss APs and reclaiming deficit from the highest-loss ones.
pub fn pl_scarfa(link_states: &[Vec<LinkState>], cfg: &ScenarioConfig) -> ActivationVector {
    let l = link_states.len();
    assert_eq!(l, cfg.ap_count, "link states do not match the configured AP count");
    let n_max = cfg.rf_chains;
    let budget = cfg.chain_budget();

    let alphas: Vec<f64> = link_states
        .iter()
        .map(|states| {
            let beta: f64 = states.iter().filter_map(LinkState::beta_linear).sum();
            if beta > 0.0 { 1.0 / beta } else { 0.0 }
        })
        .collect();
    let total: f64 = alphas.iter().sum();

    let mut counts: Vec<usize> = if total > 0.0 {
        alphas
            .iter()
            .map(|&a| (budget as f64 * a / total).round().min(n_max as f64) as usize)
            .collect()
    } else {
        // Every link everywhere is in outage; with nothing to weight by,
        // fall back to the uniform split.
        vec![cfg.avg_rf_chains; l]
    };

    // Repair order: lowest aggregate loss (largest alpha) first, ties by AP
    // index. Increments walk this order from the front, decrements from the
    // back, cycling until the budget is met.
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by(|&a, &b| alphas[b].partial_cmp(&alphas[a]).unwrap().then(a.cmp(&b)));
    let mut sum: usize = counts.iter().sum();
    let max_steps = 10 * l * n_max.max(1);
    let mut steps = 0usize;
    let mut t = 0usize;
    while sum != budget {
        assert!(steps < max_steps, "activation repair failed to converge");
        if sum < budget {
            let ap = order[t % l];
            if counts[ap] < n_max {
                counts[ap] += 1;
                sum += 1;
            }
        } else {
            let ap = order[l - 1 - t % l];
            if counts[ap] > 0 {
                counts[ap] -= 1;
                sum -= 1;
            }
        }
        t += 1;
        steps += 1;
    }

    ActivationVector::from_checked(counts)
}
