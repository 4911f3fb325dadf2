//! Link states and large-scale fading.
//!
//! Each UE-AP link is in one of three states: outage (no energy exchanged),
//! line-of-sight, or non-line-of-sight. State probabilities depend only on
//! distance; conditioned on a non-outage state the path loss is the reference
//! loss plus a distance term with a state-specific exponent and one log-normal
//! shadowing draw.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::config::PathLossModel;

/// Large-scale state of one UE-AP link.
///
/// `beta_linear` is the linear-scale path loss (a loss, so larger is weaker);
/// an outage link carries no path loss because no energy is exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LinkState {
    Outage,
    Los { beta_linear: f64, shadow_db: f64 },
    Nlos { beta_linear: f64, shadow_db: f64 },
}

impl LinkState {
    pub fn is_outage(&self) -> bool {
        matches!(self, LinkState::Outage)
    }

    /// Linear path loss, or `None` for an outage link.
    pub fn beta_linear(&self) -> Option<f64> {
        match *self {
            LinkState::Outage => None,
            LinkState::Los { beta_linear, .. } | LinkState::Nlos { beta_linear, .. } => {
                Some(beta_linear)
            }
        }
    }
}

/// Probabilities `(p_outage, p_los, p_nlos)` at distance `d` meters.
///
/// The outage probability is clamped at zero, so links shorter than
/// `outage_decay_m * outage_offset` can never be in outage.
pub fn link_state_probabilities(d: f64, plm: &PathLossModel) -> (f64, f64, f64) {
    assert!(d >= 0.0, "distance must be non-negative, got {d}");
    let p_out = (1.0 - (plm.outage_offset - d / plm.outage_decay_m).exp()).max(0.0);
    let p_los = (1.0 - p_out) * (-d / plm.los_decay_m).exp();
    let p_nlos = 1.0 - p_out - p_los;
    (p_out, p_los, p_nlos)
}

/// Path loss in dB at distance `d` for a given exponent and shadowing value.
pub fn path_loss_db(d: f64, eps: f64, shadow_db: f64, plm: &PathLossModel) -> f64 {
    plm.beta0_db + 10.0 * eps * (d / plm.d0_m).log10() + shadow_db
}

/// Draws the state of one link at distance `d`.
///
/// Consumes one uniform draw for the state and, for a non-outage state, one
/// standard normal draw scaled by the state's shadowing deviation.
pub fn draw_link_state<R: Rng>(d: f64, plm: &PathLossModel, rng: &mut R) -> LinkState {
    let (p_out, p_los, _) = link_state_probabilities(d, plm);
    let u = rng.random::<f64>();
    if u < p_out {
        return LinkState::Outage;
    }
    let los = u < p_out + p_los;
    let z: f64 = rng.sample(StandardNormal);
    let (eps, xi) = if los { (plm.eps_los, plm.xi_los) } else { (plm.eps_nlos, plm.xi_nlos) };
    let shadow_db = xi * z;
    let beta_db = path_loss_db(d, eps, shadow_db, plm);
    let beta_linear = 10f64.powf(beta_db / 10.0);
    if los {
        LinkState::Los { beta_linear, shadow_db }
    } else {
        LinkState::Nlos { beta_linear, shadow_db }
    }
}
