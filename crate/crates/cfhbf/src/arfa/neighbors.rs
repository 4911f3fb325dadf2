//! Neighborhood structure for the tabu search.

use std::collections::HashSet;

use crate::arfa::ActivationVector;

/// Single-chain reallocations from under-performing APs to the most
/// promising over-performing ones.
///
/// The candidate pool would grow quadratically if every donor/taker pair were
/// admitted, so only the most likely moves are kept: each donor — an AP whose
/// sub-rate is strictly below `threshold` and which still holds a chain —
/// hands one chain to the best taker (the AP with the largest sub-rate at or
/// above `threshold` that has spare capacity), and each taker likewise
/// receives one chain from the worst donor (the smallest sub-rate strictly
/// below `threshold` among APs with a chain to give). Partner ties resolve to
/// the lowest AP index. The union is deduplicated, vectors already in `tabu`
/// are dropped, and the result is returned in ascending lexicographic order;
/// it may be empty.
pub fn neighbor_set(
    n: &ActivationVector,
    sub_rates: &[f64],
    threshold: f64,
    tabu: &HashSet<Vec<usize>>,
    max_per_ap: usize,
) -> Vec<ActivationVector> {
    let counts = n.counts();
    assert_eq!(counts.len(), sub_rates.len());
    let donors: Vec<usize> = (0..counts.len())
        .filter(|&i| sub_rates[i] < threshold && counts[i] > 0)
        .collect();
    let takers: Vec<usize> = (0..counts.len())
        .filter(|&j| sub_rates[j] >= threshold && counts[j] < max_per_ap)
        .collect();

    let best_taker = |exclude: usize| -> Option<usize> {
        takers
            .iter()
            .copied()
            .filter(|&j| j != exclude)
            .max_by(|&a, &b| {
                sub_rates[a]
                    .partial_cmp(&sub_rates[b])
                    .unwrap()
                    // On equal sub-rates prefer the lower index, which the
                    // max with reversed index order selects.
                    .then(b.cmp(&a))
            })
    };
    let worst_donor = |exclude: usize| -> Option<usize> {
        donors
            .iter()
            .copied()
            .filter(|&i| i != exclude)
            .min_by(|&a, &b| {
                sub_rates[a].partial_cmp(&sub_rates[b]).unwrap().then(a.cmp(&b))
            })
    };

    let mut moves: Vec<(usize, usize)> = Vec::new();
    for &i in &donors {
        if let Some(j) = best_taker(i) {
            moves.push((i, j));
        }
    }
    for &j in &takers {
        if let Some(i) = worst_donor(j) {
            moves.push((i, j));
        }
    }

    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, j) in moves {
        let mut moved = counts.to_vec();
        moved[i] -= 1;
        moved[j] += 1;
        if !tabu.contains(&moved) && !out.contains(&moved) {
            out.push(moved);
        }
    }
    out.sort();
    out.into_iter()
        // The paired move preserves both the sum and the bounds.
        .map(ActivationVector::from_checked)
        .collect()
}
