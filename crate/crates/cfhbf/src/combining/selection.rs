//! Antenna-selection baseline.
//!
//! Each AP routes its RF hardware to a subset of antennas through a switch
//! network instead of phase shifters: the effective combiner is a 0/1
//! selection matrix keeping the strongest rows of the local channel.

use crate::channel::ChannelRealization;
use crate::combining::rate_from_gram;
use crate::CMat;

/// Selects the `keep` strongest antennas per AP and evaluates the resulting
/// rate. Returns the per-AP selected row indices (ascending) and the rate.
///
/// Row strength is the Euclidean norm over the AP's wide channel; ties keep
/// the lower row index.
pub fn antenna_selection(
    channels: &ChannelRealization,
    keep: usize,
    gamma: f64,
) -> (Vec<Vec<usize>>, f64) {
    let nr = channels.rx_antennas;
    assert!(keep >= 1 && keep <= nr, "keep must satisfy 1 <= keep <= {nr}, got {keep}");
    let m = channels.ue_count() * channels.tx_antennas;

    let mut selections = Vec::with_capacity(channels.ap_count());
    let mut s = CMat::zeros(m, m);
    for l in 0..channels.ap_count() {
        let h = channels.ap_channel(l);
        let mut order: Vec<usize> = (0..nr).collect();
        let norms: Vec<f64> = (0..nr).map(|i| h.row(i).norm_squared()).collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap().then(a.cmp(&b)));
        let mut chosen: Vec<usize> = order[..keep].to_vec();
        chosen.sort_unstable();

        // The selection matrix never materializes: F^H H is just the kept rows.
        let mut c = CMat::zeros(keep, m);
        for (r, &i) in chosen.iter().enumerate() {
            c.row_mut(r).copy_from(&h.row(i));
        }
        s += c.adjoint() * c;
        selections.push(chosen);
    }
    (selections, rate_from_gram(&s, gamma))
}
