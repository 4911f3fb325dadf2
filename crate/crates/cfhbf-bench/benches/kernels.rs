//! Hot-path timings: channel synthesis, combiner construction for one
//! allocation, the entrywise phase quantizer, the joint-rate evaluation, and
//! the two search frontends at reduced scale.

use std::hint::black_box;

use cfhbf::arfa::{fs_carfa, ts_carfa};
use cfhbf::channel::draw_channels;
use cfhbf::combining::{achievable_rate, chbf, schbf};
use cfhbf::config::PathLossModel;
use cfhbf::geometry::generate_topology;
use cfhbf::{ChannelRealization, PhaseCodebook, ScenarioConfig, C64, CVec};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eight APs with 32 antennas: large enough that the dense kernels dominate,
/// small enough for stable timings.
fn mid_config() -> ScenarioConfig {
    ScenarioConfig {
        ap_count: 8,
        ue_count: 4,
        rx_antennas: 32,
        tx_antennas: 2,
        rf_chains: 4,
        avg_rf_chains: 2,
        ..Default::default()
    }
}

fn desk_config() -> ScenarioConfig {
    ScenarioConfig {
        ap_count: 4,
        ue_count: 2,
        rx_antennas: 8,
        tx_antennas: 2,
        rf_chains: 2,
        avg_rf_chains: 1,
        ..Default::default()
    }
}

fn instance(seed: u64, cfg: &ScenarioConfig) -> ChannelRealization {
    let plm = PathLossModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topo = generate_topology(cfg, &mut rng);
    draw_channels(cfg, &topo, &plm, &mut rng)
}

fn bench_channel_draw(c: &mut Criterion) {
    let cfg = mid_config();
    let plm = PathLossModel::default();
    c.bench_function("draw_channels mid", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        b.iter(|| {
            let topo = generate_topology(&cfg, &mut rng);
            black_box(draw_channels(&cfg, &topo, &plm, &mut rng))
        })
    });
}

fn bench_quantizer(c: &mut Criterion) {
    let cb = PhaseCodebook::new(4, 64);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let v = CVec::from_fn(64, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    c.bench_function("quantize 64-dim", |b| b.iter(|| black_box(cb.quantize(black_box(&v)))));
}

fn bench_combiners(c: &mut Criterion) {
    let cfg = mid_config();
    let ch = instance(13, &cfg);
    let cb = PhaseCodebook::new(cfg.phase_bits, cfg.rx_antennas);
    let gamma = cfg.gamma(30.0);
    let uniform = vec![cfg.avg_rf_chains; cfg.ap_count];
    let full = vec![cfg.rf_chains; cfg.ap_count];
    c.bench_function("chbf mid full-N", |b| {
        b.iter(|| black_box(chbf(&ch, &full, gamma, &cb)))
    });
    c.bench_function("chbf mid uniform-nbar", |b| {
        b.iter(|| black_box(chbf(&ch, &uniform, gamma, &cb)))
    });
    c.bench_function("schbf mid uniform-nbar", |b| {
        b.iter(|| black_box(schbf(&ch, &uniform, &cb)))
    });
    let (combiner, _) = chbf(&ch, &full, gamma, &cb);
    c.bench_function("achievable_rate mid", |b| {
        b.iter(|| black_box(achievable_rate(&combiner, &ch, gamma)))
    });
}

fn bench_searches(c: &mut Criterion) {
    let cfg = desk_config();
    let ch = instance(14, &cfg);
    let gamma = cfg.gamma(30.0);
    let mut group = c.benchmark_group("searches");
    group.sample_size(20);
    group.bench_function("ts_carfa desk", |b| b.iter(|| black_box(ts_carfa(&ch, &cfg, gamma))));
    group.bench_function("fs_carfa desk", |b| b.iter(|| black_box(fs_carfa(&ch, &cfg, gamma))));
    group.finish();
}

criterion_group!(
    kernels,
    bench_channel_draw,
    bench_quantizer,
    bench_combiners,
    bench_searches
);
criterion_main!(kernels);
