//! Clustered geometric channel realizations.
//!
//! Each non-outage UE-AP link is a sum of a small number of planar paths. Path
//! gains are unit-variance complex Gaussians; arrival angles at the AP lie in
//! a narrow sector around broadside, departure angles at the UE in a wider
//! one. The amplitude scaling combines antenna gains, the link's path loss,
//! and a normalization that keeps the expected squared Frobenius norm of the
//! channel at `gain * Nr * Nt / beta` regardless of the number of paths.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::config::{PathLossModel, ScenarioConfig};
use crate::geometry::Topology;
use crate::link::{draw_link_state, LinkState};
use crate::{C64, CMat, CVec};

/// Arrival angles at an AP are uniform in `[-AOA_HALF_SPREAD, AOA_HALF_SPREAD]`.
pub const AOA_HALF_SPREAD: f64 = PI / 12.0;
/// Departure angles at a UE are uniform in `[-AOD_HALF_SPREAD, AOD_HALF_SPREAD]`.
pub const AOD_HALF_SPREAD: f64 = PI / 6.0;

/// Response of an `n`-element uniform linear array toward `angle`, normalized
/// to unit Euclidean norm. `spacing_ratio` is the element spacing over the
/// wavelength.
pub fn array_response(angle: f64, n: usize, spacing_ratio: f64) -> CVec {
    assert!(n >= 1, "array needs at least one element");
    let scale = 1.0 / (n as f64).sqrt();
    let step = 2.0 * PI * spacing_ratio * angle.sin();
    CVec::from_fn(n, |i, _| C64::from_polar(scale, step * i as f64))
}

/// One UE-AP link: its large-scale state and, when not in outage, the drawn
/// path parameters and the assembled `Nr x Nt` channel matrix.
#[derive(Debug, Clone)]
pub struct LinkInstance {
    pub state: LinkState,
    pub distance_m: f64,
    /// Channel matrix; all-zero exactly when the link is in outage.
    pub h: CMat,
    pub path_gains: Vec<C64>,
    pub aoa: Vec<f64>,
    pub aod: Vec<f64>,
}

/// All links of one small-scale realization, with per-AP concatenations.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub rx_antennas: usize,
    pub tx_antennas: usize,
    ue_count: usize,
    /// Links indexed `[ap][ue]`; empty for synthetic realizations.
    pub links: Vec<Vec<LinkInstance>>,
    /// Per-AP wide matrix `[h_1 ... h_K]` of size `Nr x (K * Nt)`.
    per_ap: Vec<CMat>,
}

impl ChannelRealization {
    /// Wraps explicit per-AP matrices, e.g. synthetic draws in tests and
    /// benchmarks. Carries no link-level detail.
    pub fn from_ap_channels(tx_antennas: usize, ue_count: usize, per_ap: Vec<CMat>) -> Self {
        assert!(!per_ap.is_empty(), "need at least one AP");
        let nr = per_ap[0].nrows();
        for h in &per_ap {
            assert_eq!(h.shape(), (nr, ue_count * tx_antennas), "inconsistent AP matrix shapes");
        }
        Self { rx_antennas: nr, tx_antennas, ue_count, links: Vec::new(), per_ap }
    }

    pub fn ap_count(&self) -> usize {
        self.per_ap.len()
    }

    pub fn ue_count(&self) -> usize {
        self.ue_count
    }

    /// Concatenated channel `H_l` seen by AP `l`.
    pub fn ap_channel(&self, l: usize) -> &CMat {
        &self.per_ap[l]
    }

    /// Number of links shorter than the path-loss reference distance; such
    /// links sit outside the model's calibrated range.
    pub fn short_link_count(&self, d0_m: f64) -> usize {
        self.links
            .iter()
            .flat_map(|row| row.iter())
            .filter(|link| link.distance_m < d0_m)
            .count()
    }
}

/// Assembles one link channel from explicit path parameters.
///
/// `beta_linear` is the linear path loss and `gain_db` the combined antenna
/// gain applied uniformly to every path.
pub fn assemble_link(
    path_gains: &[C64],
    aoa: &[f64],
    aod: &[f64],
    beta_linear: f64,
    gain_db: f64,
    nr: usize,
    nt: usize,
    spacing_ratio: f64,
) -> CMat {
    assert_eq!(path_gains.len(), aoa.len());
    assert_eq!(path_gains.len(), aod.len());
    let paths = path_gains.len();
    let gain_linear = 10f64.powf(gain_db / 10.0);
    let scale =
        (gain_linear / beta_linear * (nr * nt) as f64 / paths as f64).sqrt();
    let mut h = CMat::zeros(nr, nt);
    for p in 0..paths {
        let ar = array_response(aoa[p], nr, spacing_ratio);
        let at = array_response(aod[p], nt, spacing_ratio);
        h += (&ar * at.adjoint()) * (path_gains[p] * scale);
    }
    h
}

/// Draws link states and channels for every UE-AP pair.
///
/// Iterates APs in order and UEs within each AP, so the realization is a pure
/// function of the configuration, topology, and generator state.
pub fn draw_channels<R: Rng>(
    cfg: &ScenarioConfig,
    topo: &Topology,
    plm: &PathLossModel,
    rng: &mut R,
) -> ChannelRealization {
    let (nr, nt) = (cfg.rx_antennas, cfg.tx_antennas);
    let gain_db = cfg.antenna_gain_db();
    let half = 0.5f64.sqrt();
    let mut links = Vec::with_capacity(cfg.ap_count);
    for l in 0..cfg.ap_count {
        let mut row = Vec::with_capacity(cfg.ue_count);
        for k in 0..cfg.ue_count {
            let d = topo.distance(k, l);
            let state = draw_link_state(d, plm, rng);
            let link = match state.beta_linear() {
                None => LinkInstance {
                    state,
                    distance_m: d,
                    h: CMat::zeros(nr, nt),
                    path_gains: Vec::new(),
                    aoa: Vec::new(),
                    aod: Vec::new(),
                },
                Some(beta_linear) => {
                    let mut path_gains = Vec::with_capacity(cfg.paths);
                    let mut aoa = Vec::with_capacity(cfg.paths);
                    let mut aod = Vec::with_capacity(cfg.paths);
                    for _ in 0..cfg.paths {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        path_gains.push(C64::new(re * half, im * half));
                        aoa.push(AOA_HALF_SPREAD * (2.0 * rng.random::<f64>() - 1.0));
                        aod.push(AOD_HALF_SPREAD * (2.0 * rng.random::<f64>() - 1.0));
                    }
                    let h = assemble_link(
                        &path_gains,
                        &aoa,
                        &aod,
                        beta_linear,
                        gain_db,
                        nr,
                        nt,
                        cfg.element_spacing_ratio,
                    );
                    LinkInstance { state, distance_m: d, h, path_gains, aoa, aod }
                }
            };
            row.push(link);
        }
        links.push(row);
    }

    let per_ap = links
        .iter()
        .map(|row| {
            let mut wide = CMat::zeros(nr, cfg.ue_count * nt);
            for (k, link) in row.iter().enumerate() {
                wide.view_mut((0, k * nt), (nr, nt)).copy_from(&link.h);
            }
            wide
        })
        .collect();

    ChannelRealization { rx_antennas: nr, tx_antennas: nt, ue_count: cfg.ue_count, links, per_ap }
}
