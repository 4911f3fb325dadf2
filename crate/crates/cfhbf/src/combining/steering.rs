//! Beam-steering baseline.
//!
//! Instead of shaping arbitrary codebook vectors, each combiner column is the
//! array response of the AP's own ULA pointed at the angle that best matches
//! the corresponding dominant singular vector of the local channel, searched
//! over a uniform angle grid and then phase-quantized.

use crate::channel::{array_response, ChannelRealization};
use crate::codebook::PhaseCodebook;
use crate::CMat;

use super::subspace::leading_left_vectors;
use super::AnalogCombiner;

/// Builds the steering combiner for the given column counts.
///
/// For each of the `n_l` leading singular vectors `u` of `H_l`, the steering
/// angle maximizes `|a_r(phi)^H u|` over `grid_size` points spanning
/// `[-pi/2, pi/2]`; ties resolve to the lower grid index.
pub fn beam_steering(
    channels: &ChannelRealization,
    counts: &[usize],
    grid_size: usize,
    spacing_ratio: f64,
    cb: &PhaseCodebook,
) -> AnalogCombiner {
    let ap_count = channels.ap_count();
    assert_eq!(counts.len(), ap_count, "one column count per AP required");
    assert!(grid_size >= 2, "angle grid needs at least two points");
    let nr = channels.rx_antennas;

    let angles: Vec<f64> = (0..grid_size)
        .map(|g| {
            -std::f64::consts::FRAC_PI_2
                + std::f64::consts::PI * g as f64 / (grid_size - 1) as f64
        })
        .collect();
    let responses: Vec<_> = angles.iter().map(|&a| array_response(a, nr, spacing_ratio)).collect();

    let per_ap = (0..ap_count)
        .map(|l| {
            let nl = counts[l];
            let mut f = CMat::zeros(nr, nl);
            if nl > 0 {
                for (j, u) in leading_left_vectors(channels.ap_channel(l), nl).iter().enumerate() {
                    let mut best = 0usize;
                    let mut best_gain = -1.0;
                    for (g, a) in responses.iter().enumerate() {
                        let gain = a.dotc(u).norm();
                        if gain > best_gain {
                            best_gain = gain;
                            best = g;
                        }
                    }
                    let col = cb.quantize(&responses[best]).expect("array responses are nonzero");
                    f.set_column(j, &col);
                }
            }
            f
        })
        .collect();
    AnalogCombiner::new(per_ap)
}
