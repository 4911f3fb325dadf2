//! Semi-centralized hybrid combiner construction.
//!
//! Each AP designs its combiner from local channel knowledge alone: the
//! columns of `F_l` are the quantized leading left singular vectors of `H_l`.
//! No information about other APs enters the construction, which is what
//! makes the scheme semi-centralized: only the low-dimensional effective
//! channels travel to the CPU.

use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::CMat;

use super::subspace::leading_left_vectors;
use super::AnalogCombiner;

/// Builds the per-AP local combiner for the given column counts.
pub fn schbf(channels: &ChannelRealization, counts: &[usize], cb: &PhaseCodebook) -> AnalogCombiner {
    let ap_count = channels.ap_count();
    assert_eq!(counts.len(), ap_count, "one column count per AP required");
    assert_eq!(cb.elements(), channels.rx_antennas, "codebook sized for the AP arrays");

    let per_ap = (0..ap_count)
        .map(|l| {
            let nl = counts[l];
            let mut f = CMat::zeros(channels.rx_antennas, nl);
            if nl > 0 {
                for (j, u) in leading_left_vectors(channels.ap_channel(l), nl).iter().enumerate() {
                    let col = cb.quantize(u).expect("subspace vectors are unit norm");
                    f.set_column(j, &col);
                }
            }
            f
        })
        .collect();
    AnalogCombiner::new(per_ap)
}
