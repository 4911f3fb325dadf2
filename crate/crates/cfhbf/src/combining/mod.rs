//! Analog combiner construction and achievable-rate evaluation.
//!
//! Every scheme produces per-AP combining matrices `F_l` whose columns live on
//! the phase-shifter codebook; the global combiner is block-diagonal and never
//! materialized. The uplink sum rate is
//!
//! ```text
//! R = log2 det(I + gamma * sum_l H_l^H F_l F_l^H H_l)
//! ```
//!
//! evaluated in the `K*Nt`-dimensional joint space. The centralized scheme
//! ([`chbf`]) additionally produces the per-AP sub-rate decomposition of the
//! same quantity.

mod chbf;
mod schbf;
mod selection;
mod steering;
mod subspace;

pub use chbf::chbf;
pub use schbf::schbf;
pub use selection::antenna_selection;
pub use steering::beam_steering;

pub(crate) use subspace::leading_singular_values;

use nalgebra::Cholesky;

use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::{C64, CMat};

/// Per-AP analog combining matrices with codebook-constrained entries.
#[derive(Debug, Clone)]
pub struct AnalogCombiner {
    per_ap: Vec<CMat>,
}

impl AnalogCombiner {
    pub(crate) fn new(per_ap: Vec<CMat>) -> Self {
        Self { per_ap }
    }

    pub fn ap_count(&self) -> usize {
        self.per_ap.len()
    }

    /// Combining matrix of AP `l`, of size `Nr x n_l`.
    pub fn ap(&self, l: usize) -> &CMat {
        &self.per_ap[l]
    }

    /// Active column counts `(n_1 .. n_L)`.
    pub fn active_counts(&self) -> Vec<usize> {
        self.per_ap.iter().map(|f| f.ncols()).collect()
    }

    /// Panics unless every entry has the codebook magnitude and a grid phase.
    /// Intended for tests and debugging.
    pub fn assert_valid(&self, cb: &PhaseCodebook) {
        for (l, f) in self.per_ap.iter().enumerate() {
            for z in f.iter() {
                assert!(
                    (z.norm() - cb.magnitude()).abs() < 1e-12,
                    "AP {l}: entry magnitude {} off codebook",
                    z.norm()
                );
                let idx = cb.nearest_index(z.arg());
                let grid = C64::from_polar(cb.magnitude(), cb.phase(idx));
                assert!((z - grid).norm() < 1e-9, "AP {l}: entry phase off the grid");
            }
        }
    }
}

/// Total and per-AP rates produced by the sequential decomposition.
#[derive(Debug, Clone)]
pub struct RateBreakdown {
    /// Sum rate in bits/s/Hz.
    pub total_rate: f64,
    /// Per-AP sub-rates, summing to `total_rate`.
    pub sub_rates: Vec<f64>,
    /// Linear SNR the rates were evaluated at.
    pub gamma: f64,
}

/// `log2 det(M)` for a Hermitian positive-definite `M` via Cholesky.
pub(crate) fn log2_det_hpd(m: &CMat) -> f64 {
    let chol = Cholesky::new(m.clone()).expect("matrix must be positive definite");
    let l = chol.l_dirty();
    2.0 * (0..m.nrows()).map(|i| l[(i, i)].re.log2()).sum::<f64>()
}

/// `log2 det(I + gamma * S)` where `S` accumulates `C_l^H C_l` terms.
pub(crate) fn rate_from_gram(s: &CMat, gamma: f64) -> f64 {
    let m = s.nrows();
    let inner = CMat::identity(m, m) + s * C64::from(gamma);
    log2_det_hpd(&inner)
}

/// Total achievable rate of a combiner on a channel realization.
///
/// Evaluates the joint-space form `log2 det(I + gamma sum_l H_l^H F_l F_l^H
/// H_l)`, which involves only `K*Nt`-dimensional matrices.
pub fn achievable_rate(combiner: &AnalogCombiner, channels: &ChannelRealization, gamma: f64) -> f64 {
    assert_eq!(combiner.ap_count(), channels.ap_count(), "combiner does not match channels");
    assert!(gamma >= 0.0, "gamma must be non-negative");
    let m = channels.ue_count() * channels.tx_antennas;
    let mut s = CMat::zeros(m, m);
    for l in 0..combiner.ap_count() {
        let f = combiner.ap(l);
        if f.ncols() == 0 {
            continue;
        }
        let c = f.adjoint() * channels.ap_channel(l);
        s += c.adjoint() * c;
    }
    rate_from_gram(&s, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_channels, ChannelRealization};
    use crate::config::{PathLossModel, ScenarioConfig};
    use crate::geometry::generate_topology;
    use crate::CVec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn small_instance(seed: u64, cfg: &ScenarioConfig) -> ChannelRealization {
        let plm = PathLossModel::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let topo = generate_topology(cfg, &mut rng);
        draw_channels(cfg, &topo, &plm, &mut rng)
    }

    fn desk_config() -> ScenarioConfig {
        ScenarioConfig {
            ap_count: 3,
            ue_count: 2,
            rx_antennas: 8,
            tx_antennas: 2,
            rf_chains: 4,
            avg_rf_chains: 2,
            ..Default::default()
        }
    }

    /// Oracle: the same rate through the stacked `L*n`-dimensional form.
    fn stacked_rate(combiner: &AnalogCombiner, channels: &ChannelRealization, gamma: f64) -> f64 {
        let total_cols: usize = combiner.active_counts().iter().sum();
        let m = channels.ue_count() * channels.tx_antennas;
        // G[(block row l), :] = F_l^H H_l stacked vertically.
        let mut g = CMat::zeros(total_cols, m);
        let mut row = 0;
        for l in 0..combiner.ap_count() {
            let f = combiner.ap(l);
            if f.ncols() == 0 {
                continue;
            }
            let c = f.adjoint() * channels.ap_channel(l);
            g.view_mut((row, 0), (c.nrows(), m)).copy_from(&c);
            row += c.nrows();
        }
        let inner = CMat::identity(total_cols, total_cols) + (&g * g.adjoint()) * C64::from(gamma);
        log2_det_hpd(&inner)
    }

    #[test]
    fn zero_gamma_gives_zero_rate() {
        let cfg = desk_config();
        let ch = small_instance(1, &cfg);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        let f = schbf(&ch, &[2, 2, 2], &cb);
        assert_eq!(achievable_rate(&f, &ch, 0.0), 0.0);
    }

    #[test]
    fn zero_channels_give_zero_rate() {
        let cfg = desk_config();
        let mut plm = PathLossModel::default();
        plm.outage_offset = -1e9;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let topo = generate_topology(&cfg, &mut rng);
        let ch = draw_channels(&cfg, &topo, &plm, &mut rng);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        let f = schbf(&ch, &[1, 1, 1], &cb);
        assert_eq!(achievable_rate(&f, &ch, 1e6), 0.0);
    }

    #[test]
    fn joint_form_matches_stacked_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..10u64 {
            let cfg = desk_config();
            let ch = small_instance(100 + seed, &cfg);
            let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
            let counts: Vec<usize> = (0..3).map(|_| rng.random_range(0..=4usize)).collect();
            let f = schbf(&ch, &counts, &cb);
            let gamma = 10f64.powf(rng.random_range(0.0..6.0));
            let joint = achievable_rate(&f, &ch, gamma);
            let stacked = stacked_rate(&f, &ch, gamma);
            let denom = joint.abs().max(1e-12);
            assert!(
                ((joint - stacked) / denom).abs() < 1e-9,
                "joint {joint} vs stacked {stacked}"
            );
        }
    }

    #[test]
    fn appending_a_column_never_decreases_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = desk_config();
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        for seed in 0..50u64 {
            let ch = small_instance(200 + seed, &cfg);
            let f = schbf(&ch, &[1, 2, 1], &cb);
            let base = achievable_rate(&f, &ch, 1e4);

            // Extend one AP with a random codebook column.
            let ap = rng.random_range(0..3usize);
            let extra = CVec::from_fn(cfg.rx_antennas, |_, _| {
                let idx = rng.random_range(0..cb.levels());
                C64::from_polar(cb.magnitude(), cb.phase(idx))
            });
            let mut mats: Vec<CMat> = (0..3).map(|l| f.ap(l).clone()).collect();
            let old = mats[ap].clone();
            let mut wider = CMat::zeros(cfg.rx_antennas, old.ncols() + 1);
            wider.view_mut((0, 0), (cfg.rx_antennas, old.ncols())).copy_from(&old);
            wider.set_column(old.ncols(), &extra);
            mats[ap] = wider;
            let extended = achievable_rate(&AnalogCombiner::new(mats), &ch, 1e4);
            assert!(extended >= base - 1e-9, "base {base} extended {extended}");
        }
    }

    #[test]
    fn near_orthonormality_diagnostic_at_full_width() {
        let cfg = ScenarioConfig {
            ap_count: 1,
            ue_count: 8,
            rx_antennas: 64,
            tx_antennas: 4,
            rf_chains: 8,
            ..Default::default()
        };
        let ch = small_instance(77, &cfg);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        let f = schbf(&ch, &[8], &cb);
        let gram = f.ap(0).adjoint() * f.ap(0);
        let dev = (&gram - CMat::identity(8, 8)).norm();
        // Diagnostic only: quantized columns are approximately orthonormal.
        println!("||F^H F - I||_F at Nr=64, n=8: {dev:.3e}");
        assert!(dev.is_finite());
    }
}
