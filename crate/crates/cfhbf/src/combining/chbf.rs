//! Centralized hybrid combiner construction.
//!
//! The CPU designs AP combiners sequentially. Conditioned on APs `1..l-1`,
//! the value of AP `l` is captured by the Hermitian PSD matrix
//! `M_l = H_l Q_{l-1}^{-1} H_l^H` with `Q_0 = I` and
//! `Q_l = Q_{l-1} + gamma H_l^H F_l F_l^H H_l`: the `n_l` leading
//! eigenvectors of `M_l`, quantized onto the codebook, become the columns of
//! `F_l`, and the sub-rates `R_l` they induce sum exactly to the total
//! log-det rate of the block-diagonal combiner.

use nalgebra::Cholesky;

use crate::channel::ChannelRealization;
use crate::codebook::PhaseCodebook;
use crate::{C64, CMat};

use super::subspace::leading_left_vectors;
use super::{log2_det_hpd, AnalogCombiner, RateBreakdown};

/// Builds the centralized combiner for the given per-AP column counts and
/// returns it with its sub-rate decomposition.
///
/// `Q_{l-1}` is identity-plus-PSD, so it is factored (never inverted): with
/// `Q = LL^H`, the working matrix is `B = H_l L^{-H}` whose left singular
/// vectors are the eigenvectors of `M_l`.
pub fn chbf(
    channels: &ChannelRealization,
    counts: &[usize],
    gamma: f64,
    cb: &PhaseCodebook,
) -> (AnalogCombiner, RateBreakdown) {
    let ap_count = channels.ap_count();
    assert_eq!(counts.len(), ap_count, "one column count per AP required");
    assert!(gamma >= 0.0, "gamma must be non-negative");
    assert_eq!(cb.elements(), channels.rx_antennas, "codebook sized for the AP arrays");

    let m = channels.ue_count() * channels.tx_antennas;
    let mut q = CMat::identity(m, m);
    let mut per_ap = Vec::with_capacity(ap_count);
    let mut sub_rates = vec![0.0; ap_count];

    for l in 0..ap_count {
        let nl = counts[l];
        if nl == 0 {
            per_ap.push(CMat::zeros(channels.rx_antennas, 0));
            continue;
        }
        let h = channels.ap_channel(l);
        let chol = Cholesky::new(q.clone()).expect("Q is identity-plus-PSD");
        let lower = chol.l();

        // B^H = L^{-1} H^H, so B = H L^{-H}.
        let bh = lower
            .solve_lower_triangular(&h.adjoint())
            .expect("triangular factor has positive diagonal");
        let b = bh.adjoint();

        let mut f = CMat::zeros(channels.rx_antennas, nl);
        for (j, u) in leading_left_vectors(&b, nl).iter().enumerate() {
            let col = cb.quantize(u).expect("subspace vectors are unit norm");
            f.set_column(j, &col);
        }

        // Effective channel C = F^H H; T = C L^{-H} gives
        // R_l = log2 det(I + gamma T T^H).
        let c = f.adjoint() * h;
        let th = lower
            .solve_lower_triangular(&c.adjoint())
            .expect("triangular factor has positive diagonal");
        let inner = CMat::identity(nl, nl) + (th.adjoint() * &th) * C64::from(gamma);
        sub_rates[l] = log2_det_hpd(&inner);

        q += (c.adjoint() * &c) * C64::from(gamma);
        per_ap.push(f);
    }

    let total_rate = sub_rates.iter().sum();
    (AnalogCombiner::new(per_ap), RateBreakdown { total_rate, sub_rates, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combining::{achievable_rate, schbf};
    use crate::config::{PathLossModel, ScenarioConfig};
    use crate::geometry::generate_topology;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn instance(seed: u64, cfg: &ScenarioConfig) -> ChannelRealization {
        let plm = PathLossModel::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let topo = generate_topology(cfg, &mut rng);
        crate::channel::draw_channels(cfg, &topo, &plm, &mut rng)
    }

    fn desk_config() -> ScenarioConfig {
        ScenarioConfig {
            ap_count: 4,
            ue_count: 2,
            rx_antennas: 8,
            tx_antennas: 2,
            rf_chains: 4,
            avg_rf_chains: 2,
            ..Default::default()
        }
    }

    #[test]
    fn all_zero_counts_give_zero_rate() {
        let cfg = desk_config();
        let ch = instance(50, &cfg);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        let (f, rates) = chbf(&ch, &[0, 0, 0, 0], 1e4, &cb);
        assert_eq!(rates.total_rate, 0.0);
        assert!(rates.sub_rates.iter().all(|&r| r == 0.0));
        assert_eq!(f.active_counts(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn sub_rates_sum_to_the_joint_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let cfg = desk_config();
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        for seed in 0..20u64 {
            let ch = instance(300 + seed, &cfg);
            let counts: Vec<usize> = (0..4).map(|_| rng.random_range(0..=4usize)).collect();
            let gamma = 10f64.powf(rng.random_range(-1.0..3.0));
            let (f, rates) = chbf(&ch, &counts, gamma, &cb);
            let joint = achievable_rate(&f, &ch, gamma);
            // Relative agreement, with an absolute floor: near-zero rates are
            // dominated by cancellation noise in the log-det evaluations.
            assert!(
                (rates.total_rate - joint).abs() < 1e-9 * joint.abs().max(1e-2),
                "decomposed {} vs joint {joint}",
                rates.total_rate
            );
        }
    }

    #[test]
    fn single_ap_matches_the_local_construction() {
        let cfg = ScenarioConfig {
            ap_count: 1,
            ue_count: 2,
            rx_antennas: 8,
            tx_antennas: 2,
            rf_chains: 4,
            ..Default::default()
        };
        let ch = instance(52, &cfg);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        // With one AP the prior is the identity, so both constructions see the
        // same matrix and must agree bit for bit.
        let (f_central, _) = chbf(&ch, &[4], 1e4, &cb);
        let f_local = schbf(&ch, &[4], &cb);
        assert_eq!(f_central.ap(0), f_local.ap(0));
    }

    #[test]
    fn combiner_entries_satisfy_the_codebook() {
        let cfg = desk_config();
        let ch = instance(53, &cfg);
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
        let (f, _) = chbf(&ch, &[2, 1, 4, 0], 1e4, &cb);
        f.assert_valid(&cb);
        assert_eq!(f.active_counts(), vec![2, 1, 4, 0]);
    }

    #[test]
    fn duplicated_ap_adds_rate_but_discounted_sub_rate() {
        let cfg = ScenarioConfig {
            ap_count: 1,
            ue_count: 2,
            rx_antennas: 8,
            tx_antennas: 2,
            rf_chains: 4,
            ..Default::default()
        };
        let ch = instance(54, &cfg);
        let h = ch.ap_channel(0).clone();
        let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);

        let single = ChannelRealization::from_ap_channels(2, 2, vec![h.clone()]);
        let double = ChannelRealization::from_ap_channels(2, 2, vec![h.clone(), h]);
        let (_, one) = chbf(&single, &[2], 1e4, &cb);
        let (_, two) = chbf(&double, &[2, 2], 1e4, &cb);

        // More combining columns never lose rate, but the second identical AP
        // observes signal space the first already captured, so its sub-rate is
        // heavily discounted by the sequential decomposition.
        assert!(two.total_rate >= one.total_rate - 1e-9);
        assert!(two.sub_rates[1] <= two.sub_rates[0]);
    }
}
